#pragma once

#include "rdv/geometry.hpp"
#include "rdv/metrics.hpp"
#include "rdv/neighbors.hpp"
#include "rdv/scenario.hpp"

#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace rdv {

/// Past positions of every agent, `lag` steps deep. Reads before the buffer
/// has filled return the oldest sample.
class DelayBuffer {
 public:
  DelayBuffer() = default;
  DelayBuffer(std::size_t lag, std::span<const Point> initial);

  void push(std::span<const Point> positions);
  /// Positions as of `lag` steps before the latest push.
  const std::vector<Point>& lagged() const;
  std::size_t lag() const noexcept { return lag_; }

 private:
  std::size_t lag_ = 0;
  std::deque<std::vector<Point>> history_;  // front is oldest
};

/// Positions of the other agents as the receiving agent knows them.
const std::vector<Point>& delayed_positions(const DelayBuffer& buffer);

struct SimState {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<AgentState> agents;
  DelayBuffer delay;
  Point leader_origin;
};

SimState init_scenario(const ScenarioConfig& config);

/// Everything decided from one frozen snapshot, before anyone moves.
struct Round {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<Point> positions;
  DistanceMatrix distances;  ///< true current positions
  NeighborView view;
  std::vector<Point> guidance;
  std::vector<ControlVector> control;
  std::vector<std::optional<NearestOutside>> nearest;
  std::vector<Event> events;
  double max_speed = 0.0;
  double kinetic = 0.0;
};

/// Synchronous-round simulator for one scenario.
class Simulation {
 public:
  explicit Simulation(ScenarioConfig config);

  const ScenarioConfig& config() const noexcept { return config_; }
  const SimState& state() const noexcept { return state_; }

  /// Senses and decides for the current state. Idempotent until advance().
  const Round& sense();
  /// Integrates one dt using the current round.
  void advance();
  /// sense() + advance(); returns the record of the state the step started from.
  StepRecord step();

  StepRecord record() const;

 private:
  void integrate_single();
  void integrate_double();
  void integrate_ugv();
  void integrate_uav();
  void apply_leader();

  ScenarioConfig config_;
  SimState state_;
  Round round_;
  bool sensed_ = false;
  std::vector<std::size_t> last_nearest_;
  std::vector<Point> seen_scratch_;
  std::vector<double> row_scratch_;
};

struct RunOutput {
  MetricsSeries metrics;
  std::size_t steps_run = 0;
  std::optional<std::string> abort_reason;
  std::optional<std::size_t> abort_agent;
  bool aborted() const { return abort_reason.has_value(); }
};

using TraceObserver = std::function<void(const StepRecord&)>;

struct RunOptions {
  TraceObserver observer;     ///< receives every trace_every-th record and the last one
  bool per_agent_metrics = true;
};

/// Steps to t_max (or until the stop_hold rule fires). Simulation aborts are
/// captured in the result, not thrown.
RunOutput run(const ScenarioConfig& config, const RunOptions& options = {});

/// Convenience: collect the trace in memory.
struct TracedRun {
  SimTrace trace;
  RunOutput output;
};
TracedRun run_traced(const ScenarioConfig& config, bool per_agent_metrics = true);

}  // namespace rdv
