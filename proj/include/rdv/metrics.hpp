#pragma once

#include "rdv/geometry.hpp"
#include "rdv/scenario.hpp"

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <vector>

namespace rdv {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

/// Closest agent strictly farther than epsilon from agent i.
struct NearestOutside {
  double distance = 0.0;
  AgentId id = 0;
  bool operator==(const NearestOutside&) const = default;
};

std::optional<NearestOutside> dm(std::span<const double> row, AgentId i, double epsilon);
std::optional<NearestOutside> dm(const DistanceMatrix& d, AgentId i, double epsilon);

/// Largest dm over the group; agents with no outside agent are skipped.
std::optional<double> dxm(const DistanceMatrix& d, double epsilon);

struct PathStats {
  double mean = 0.0;    ///< dL
  double spread = 0.0;  ///< max path length - min path length
};

PathStats path_stats(std::span<const double> lengths);
PathStats path_stats(const SimTrace& trace);

/// Convergence-time bound -(K/a) ln(eps/dx0) + C1.
struct TcBound {
  enum class Kind { Finite, Unbounded, Constant };
  Kind kind = Kind::Finite;
  double value = 0.0;
};

TcBound tc_bound(int K, double a, double epsilon, double dx0, double c1);

// ---------------------------------------------------------------------------
// Shared-agent monitor for the 2-epsilon bound on d_xm
// ---------------------------------------------------------------------------

struct SharingCheck {
  /// Every agent that has a nearest-outside partner shares some third agent
  /// lying strictly inside both priority zones.
  bool pair_hypothesis = false;
  /// Every pair of agents shares some third agent inside both zones.
  bool universal_hypothesis = false;
  std::optional<double> dxm;
  bool pair_violation = false;
  bool universal_violation = false;
};

SharingCheck sharing_check(const DistanceMatrix& d, double epsilon);

struct SharingReport {
  std::size_t steps = 0;
  std::size_t pair_hypothesis_steps = 0;
  std::size_t universal_hypothesis_steps = 0;
  std::size_t pair_violations = 0;
  std::size_t universal_violations = 0;
  std::vector<std::size_t> violation_steps;
};

SharingReport prop5_monitor(const SimTrace& trace, double epsilon);

// ---------------------------------------------------------------------------
// Per-run series
// ---------------------------------------------------------------------------

struct MetricsSeries {
  std::size_t n = 0;
  double epsilon = 0.0;
  double delta = 0.0;
  double dt = 0.0;

  std::vector<std::size_t> step;
  std::vector<double> time;
  std::vector<double> diameter;
  std::vector<double> dxm;        ///< NaN when no agent has an outside neighbor
  std::vector<double> max_speed;  ///< fastest agent this step
  std::vector<double> kinetic;    ///< sum of |velocity|^2

  bool per_agent = true;
  std::vector<double> dm;          ///< step-major, n entries per step, NaN when none
  std::vector<std::size_t> dm_id;  ///< kNone when none

  std::optional<double> tc;
  std::optional<std::size_t> tc_step;
  std::vector<double> path_length;
  PathStats paths;
  double max_dxm = std::numeric_limits<double>::quiet_NaN();
  std::size_t neighbor_switches = 0;
  std::size_t saturation_hits = 0;
  std::size_t empty_views = 0;

  bool converged() const { return tc.has_value(); }
  std::size_t size() const { return time.size(); }
};

/// Builds a MetricsSeries one snapshot at a time.
class MetricsRecorder {
 public:
  MetricsRecorder(std::size_t n, double epsilon, double delta, double dt, bool per_agent = true);

  void record(std::size_t step, double time, const DistanceMatrix& d, std::span<const Point> positions,
              std::span<const std::optional<NearestOutside>> nearest, double max_speed, double kinetic,
              std::span<const Event> events);

  /// How long the diameter has stayed below delta, up to the latest snapshot.
  double time_below_delta() const;

  MetricsSeries finish();

 private:
  MetricsSeries s_;
  std::vector<Point> last_positions_;
  std::optional<double> below_since_;
};

/// First time the diameter drops below delta and stays there to the end.
std::optional<std::size_t> convergence_index(std::span<const double> diameter, double delta);

// ---------------------------------------------------------------------------
// Invariant checks over finished runs
// ---------------------------------------------------------------------------

struct MonotoneReport {
  std::size_t checked = 0;
  std::size_t violations = 0;
  std::size_t strict_decreases = 0;
  std::size_t switches = 0;  ///< transitions skipped because the tracked identity changed
  double worst_excess = 0.0;
  bool ok() const { return violations == 0; }
};

/// dm_i must not grow by more than 2 dt max_speed between consecutive steps
/// that track the same nearest-outside agent. Needs per-agent series.
MonotoneReport check_dm_monotone(const MetricsSeries& s);

/// Diameter strictly decreasing at every step while it is at or above delta.
MonotoneReport check_diameter_decreasing(const MetricsSeries& s);

/// diameter^2 + sum |v|^2 nonincreasing (within `rel_tol` of the initial value)
/// once the first `exempt_fraction` of the run has passed.
MonotoneReport check_energy_proxy(const MetricsSeries& s, double exempt_fraction, double rel_tol = 1e-9);

/// Once an agent is strictly inside another's priority zone it stays within
/// epsilon + tol for the rest of the run.
struct ZoneReport {
  std::size_t entries = 0;
  std::size_t escapes = 0;
  double worst_excess = 0.0;
  bool ok() const { return escapes == 0; }
};

ZoneReport check_zone_retention(const SimTrace& trace, double epsilon, double tol);

std::vector<Point> positions_of(const StepRecord& record);

}  // namespace rdv
