#pragma once

#include "rdv/dynamics.hpp"
#include "rdv/geometry.hpp"
#include "rdv/guidance.hpp"
#include "rdv/neighbors.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rdv {

enum class DynamicsKind { Single, Double, Ugv, Uav };

enum class Integrator { Euler, Rk4 };

struct UniformBox {
  double width = 30.0;
  double height = 30.0;
  double depth = 30.0;  ///< only used when dim = 3
  bool operator==(const UniformBox&) const = default;
};

/// Agents evenly spaced on a circle centred at the origin, agent k at angle 2 pi k / N.
struct Circle {
  double radius = 1.0;
  bool operator==(const Circle&) const = default;
};

struct ExplicitPositions {
  std::vector<Point> positions;
  bool operator==(const ExplicitPositions&) const = default;
};

using InitRule = std::variant<UniformBox, Circle, ExplicitPositions>;

/// Motion injected into one agent, which then ignores the protocol.
struct LeaderScript {
  enum class Kind { Linear, Sinusoidal };
  AgentId agent = 0;
  Kind kind = Kind::Linear;
  Point velocity;          ///< linear: full velocity; sinusoidal: only x is used
  double amplitude = 0.0;  ///< sinusoidal: y = A sin(w t)
  double frequency = 0.0;  ///< sinusoidal: w, rad/time

  Point displacement(double t) const;
  Point velocity_at(double t) const;
  bool operator==(const LeaderScript&) const = default;
};

struct ScenarioConfig {
  std::size_t n = 2;
  int dim = 2;
  DynamicsKind dynamics = DynamicsKind::Single;
  GraphProvider provider = DynamicPriority{};
  GuidanceParams guidance;
  NadfParams nadf;
  UgvParams ugv;
  UavParams uav;
  double dt = 0.01;
  double t_max = 0.0;  ///< required
  double delta = 0.02;
  double delay = 0.0;
  std::optional<double> saturation;
  std::vector<Point> drift;  ///< empty, or one constant force per agent
  std::optional<LeaderScript> leader;
  InitRule init = UniformBox{};
  std::vector<double> headings;  ///< optional initial theta (UGV) or psi (UAV) per agent
  std::uint64_t seed = 1;
  Integrator integrator = Integrator::Euler;
  /// Stop early once the diameter has stayed below delta for this long.
  std::optional<double> stop_hold;
  std::size_t trace_every = 1;

  bool operator==(const ScenarioConfig&) const = default;
};

/// Throws ConfigError naming the offending "[section].key".
void validate(const ScenarioConfig& config);

/// Number of whole steps covering the delay, and whether rounding changed it.
std::size_t delay_steps(const ScenarioConfig& config);
bool delay_was_rounded(const ScenarioConfig& config);

std::size_t step_count(const ScenarioConfig& config);

const char* to_string(DynamicsKind kind);

/// State of one agent. Only the fields of the scenario's dynamics are set.
struct AgentState {
  AgentId id = 0;
  Point position;
  std::optional<Point> velocity;       ///< double integrator
  std::optional<double> heading;       ///< UGV theta
  std::optional<FlightState> flight;   ///< UAV (v, gamma, psi)
  std::optional<UavControl> control;   ///< UAV integrated control

  bool operator==(const AgentState&) const = default;
};

/// Control values applied in a step: velocity (single), acceleration (double),
/// (wheel rate, steering) for UGV, (F_T, F_N, eta) for UAV.
using ControlVector = Point;

struct Event {
  enum class Kind { NeighborSwitch, Saturation, EmptyView };
  Kind kind;
  AgentId agent;
  /// NeighborSwitch: previous and new nearest-outside id (npos when none).
  std::size_t from = 0;
  std::size_t to = 0;
  bool operator==(const Event&) const = default;
};

const char* to_string(Event::Kind kind);

/// One synchronous round as observed before integration.
struct StepRecord {
  std::size_t step = 0;
  double time = 0.0;
  std::vector<AgentState> agents;
  std::vector<Point> guidance;
  std::vector<ControlVector> control;
  std::vector<Event> events;
};

struct SimTrace {
  DynamicsKind dynamics = DynamicsKind::Single;
  int dim = 2;
  std::vector<StepRecord> steps;
};

/// Initial agent states for a scenario (positions from the seeded init rule).
std::vector<AgentState> initial_agents(const ScenarioConfig& config);

}  // namespace rdv
