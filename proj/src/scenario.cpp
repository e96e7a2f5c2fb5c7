#include "rdv/scenario.hpp"

#include "rdv/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace rdv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require(bool ok, const char* field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

// mt19937_64 output is fixed by the standard; the distribution classes are not,
// so the unit-interval mapping is done by hand for cross-platform layouts.
double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t max_out_degree(const FixedDigraph& g, std::size_t n) {
  std::vector<std::size_t> deg(n, 0);
  std::size_t best = 0;
  for (const auto& [from, to] : g.edges) {
    if (from < n) best = std::max(best, ++deg[from]);
  }
  return best;
}

}  // namespace

const char* to_string(DynamicsKind kind) {
  switch (kind) {
    case DynamicsKind::Single: return "single";
    case DynamicsKind::Double: return "double";
    case DynamicsKind::Ugv: return "ugv";
    case DynamicsKind::Uav: return "uav";
  }
  return "?";
}

const char* to_string(Event::Kind kind) {
  switch (kind) {
    case Event::Kind::NeighborSwitch: return "neighbor-switch";
    case Event::Kind::Saturation: return "saturation";
    case Event::Kind::EmptyView: return "empty-view";
  }
  return "?";
}

Point LeaderScript::displacement(double t) const {
  if (kind == Kind::Linear) return velocity * t;
  Point d = Point::Zero(velocity.size());
  d[0] = velocity[0] * t;
  d[1] = amplitude * std::sin(frequency * t);
  return d;
}

Point LeaderScript::velocity_at(double t) const {
  if (kind == Kind::Linear) return velocity;
  Point v = Point::Zero(velocity.size());
  v[0] = velocity[0];
  v[1] = amplitude * frequency * std::cos(frequency * t);
  return v;
}

std::size_t delay_steps(const ScenarioConfig& c) { return static_cast<std::size_t>(std::llround(c.delay / c.dt)); }

bool delay_was_rounded(const ScenarioConfig& c) {
  return std::abs(static_cast<double>(delay_steps(c)) * c.dt - c.delay) > 1e-9 * std::max(1.0, c.delay);
}

std::size_t step_count(const ScenarioConfig& c) {
  return static_cast<std::size_t>(std::floor(c.t_max / c.dt + 1e-9));
}

void validate(const ScenarioConfig& c) {
  require(c.n >= 1, "[scenario].N", "must be >= 1");
  require(c.dim >= 1 && c.dim <= kMaxDim, "[scenario].dimension", "must be 1, 2 or 3");
  require(finite_positive(c.dt), "[scenario].dt", "must be > 0");
  require(std::isfinite(c.t_max) && c.t_max > c.dt, "[scenario].t_max", "must be given and exceed dt");
  require(finite_positive(c.delta), "[scenario].delta", "must be > 0");
  require(c.trace_every >= 1, "[scenario].trace_every", "must be >= 1");
  if (c.stop_hold) require(std::isfinite(*c.stop_hold) && *c.stop_hold >= 0.0, "[scenario].stop_hold", "must be >= 0");
  require(c.integrator == Integrator::Euler || c.dynamics == DynamicsKind::Single, "[scenario].integrator",
          "rk4 selection applies to single-integrator dynamics only");

  std::visit(overloaded{
                 [&](const DynamicPriority& p) {
                   require(std::isfinite(p.epsilon) && p.epsilon >= 0.0, "[guidance].epsilon", "must be >= 0");
                   require(p.L >= 1, "[guidance].L", "must be >= 1");
                   require(c.n >= 2, "[scenario].N", "dynamic-priority provider needs N >= 2");
                 },
                 [&](const DynamicPlain& p) { require(p.L >= 1, "[guidance].L", "must be >= 1"); },
                 [&](const FixedDigraph& g) {
                   for (const auto& [from, to] : g.edges) {
                     require(from < c.n && to < c.n, "[graph].edges",
                             "edge " + std::to_string(from) + ">" + std::to_string(to) + " out of range");
                     require(from != to, "[graph].edges", "self-loop on agent " + std::to_string(from));
                   }
                 },
             },
             c.provider);

  require(!c.guidance.weights.empty(), "[guidance].weights", "at least one weight required");
  for (double w : c.guidance.weights) require(finite_positive(w), "[guidance].weights", "weights must be > 0");
  if (c.guidance.weights.size() > 1) {
    std::size_t needed = 0;
    if (const auto* p = std::get_if<DynamicPriority>(&c.provider)) needed = static_cast<std::size_t>(p->L);
    if (const auto* p = std::get_if<DynamicPlain>(&c.provider)) needed = static_cast<std::size_t>(p->L);
    if (const auto* g = std::get_if<FixedDigraph>(&c.provider)) needed = max_out_degree(*g, c.n);
    require(c.guidance.weights.size() >= needed, "[guidance].weights",
            "per-rank list needs " + std::to_string(needed) + " entries");
  }
  if (c.guidance.reference_velocity) {
    require(c.guidance.reference_velocity->size() == c.dim && c.guidance.reference_velocity->allFinite(),
            "[guidance].reference_velocity", "must be a finite vector of the scenario dimension");
  }

  switch (c.dynamics) {
    case DynamicsKind::Single: break;
    case DynamicsKind::Double:
      require(std::isfinite(c.nadf.b) && c.nadf.b >= 0.0, "[dynamics].b", "must be >= 0");
      require(std::isfinite(c.nadf.kd) && c.nadf.kd >= 0.0, "[dynamics].K_d", "must be >= 0");
      require(finite_positive(c.nadf.guidance_floor), "[dynamics].guidance_floor", "must be > 0");
      break;
    case DynamicsKind::Ugv:
      require(c.dim == 2, "[scenario].dimension", "ugv dynamics are planar (dimension = 2)");
      require(finite_positive(c.ugv.k1), "[dynamics].K1", "must be > 0");
      require(finite_positive(c.ugv.k2), "[dynamics].K2", "must be > 0");
      require(finite_positive(c.ugv.wheel_radius), "[dynamics].wheel_radius", "must be > 0");
      require(finite_positive(c.ugv.axle_distance), "[dynamics].axle_distance", "must be > 0");
      require(c.ugv.phi_limit > 0.0 && c.ugv.phi_limit < std::numbers::pi / 2, "[dynamics].phi_limit",
              "must lie in (0, pi/2)");
      break;
    case DynamicsKind::Uav:
      require(c.dim == 3, "[scenario].dimension", "uav dynamics need dimension = 3");
      require(finite_positive(c.uav.mass), "[dynamics].mass", "must be > 0");
      require(std::isfinite(c.uav.gravity) && c.uav.gravity >= 0.0, "[dynamics].gravity", "must be >= 0");
      require(finite_positive(c.uav.k_u), "[dynamics].K_u", "must be > 0");
      require(finite_positive(c.uav.k_lambda), "[dynamics].K_lambda", "must be > 0");
      require(finite_positive(c.uav.v_floor), "[dynamics].v_floor", "must be > 0");
      require(std::isfinite(c.uav.initial_speed) && c.uav.initial_speed >= c.uav.v_floor, "[dynamics].initial_speed",
              "must be >= v_floor");
      break;
  }

  require(std::isfinite(c.delay) && c.delay >= 0.0, "[perturbations].delay", "must be >= 0");
  if (c.saturation) {
    require(finite_positive(*c.saturation), "[perturbations].saturation", "must be > 0");
    require(c.dynamics == DynamicsKind::Single || c.dynamics == DynamicsKind::Double, "[perturbations].saturation",
            "applies to single or double integrator dynamics only");
  }
  if (!c.drift.empty()) {
    require(c.dynamics == DynamicsKind::Double, "[perturbations].drift", "drift forces need double-integrator dynamics");
    require(c.drift.size() == c.n, "[perturbations].drift", "need one force per agent");
    for (const auto& f : c.drift) {
      require(f.size() == c.dim && f.allFinite(), "[perturbations].drift", "force dimension must match scenario");
    }
  }
  if (c.leader) {
    const auto& l = *c.leader;
    require(c.dynamics == DynamicsKind::Single || c.dynamics == DynamicsKind::Double, "[perturbations].leader",
            "leader scripts apply to single or double integrator dynamics only");
    require(l.agent < c.n, "[perturbations].leader", "agent id out of range");
    require(l.velocity.size() == c.dim && l.velocity.allFinite(), "[perturbations].leader_velocity",
            "must match scenario dimension");
    if (l.kind == LeaderScript::Kind::Sinusoidal) {
      require(c.dim >= 2, "[perturbations].leader_kind", "sinusoidal script needs dimension >= 2");
      require(std::isfinite(l.amplitude) && std::isfinite(l.frequency), "[perturbations].leader_amplitude",
              "must be finite");
    }
  }

  std::visit(overloaded{
                 [&](const UniformBox& b) {
                   require(finite_positive(b.width), "[scenario].box_width", "must be > 0");
                   require(finite_positive(b.height), "[scenario].box_height", "must be > 0");
                   require(finite_positive(b.depth), "[scenario].box_depth", "must be > 0");
                 },
                 [&](const Circle& ci) {
                   require(finite_positive(ci.radius), "[scenario].radius", "must be > 0");
                   require(c.dim >= 2, "[scenario].init", "circle init needs dimension >= 2");
                 },
                 [&](const ExplicitPositions& e) {
                   require(e.positions.size() == c.n, "[scenario].positions",
                           "expected " + std::to_string(c.n) + " points, got " + std::to_string(e.positions.size()));
                   for (const auto& p : e.positions) {
                     require(p.size() == c.dim && p.allFinite(), "[scenario].positions",
                             "point dimension must match scenario");
                   }
                 },
             },
             c.init);

  if (!c.headings.empty()) {
    require(c.dynamics == DynamicsKind::Ugv || c.dynamics == DynamicsKind::Uav, "[scenario].headings",
            "initial headings apply to ugv or uav dynamics only");
    require(c.headings.size() == c.n, "[scenario].headings", "need one heading per agent");
    for (double h : c.headings) require(std::isfinite(h), "[scenario].headings", "must be finite");
  }
}

std::vector<AgentState> initial_agents(const ScenarioConfig& c) {
  validate(c);
  std::vector<Point> positions;
  positions.reserve(c.n);
  std::visit(overloaded{
                 [&](const UniformBox& b) {
                   std::mt19937_64 rng(c.seed);
                   const double extent[3] = {b.width, b.height, b.depth};
                   for (std::size_t i = 0; i < c.n; ++i) {
                     Point p(c.dim);
                     for (int k = 0; k < c.dim; ++k) p[k] = extent[k] * unit_uniform(rng);
                     positions.push_back(p);
                   }
                 },
                 [&](const Circle& ci) {
                   for (std::size_t k = 0; k < c.n; ++k) {
                     const double angle = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(c.n);
                     Point p = Point::Zero(c.dim);
                     p[0] = ci.radius * std::cos(angle);
                     p[1] = ci.radius * std::sin(angle);
                     positions.push_back(p);
                   }
                 },
                 [&](const ExplicitPositions& e) { positions = e.positions; },
             },
             c.init);

  std::vector<AgentState> agents(c.n);
  for (std::size_t i = 0; i < c.n; ++i) {
    auto& a = agents[i];
    a.id = i;
    a.position = positions[i];
    const double heading = c.headings.empty() ? 0.0 : c.headings[i];
    switch (c.dynamics) {
      case DynamicsKind::Single: break;
      case DynamicsKind::Double: a.velocity = Point::Zero(c.dim); break;
      case DynamicsKind::Ugv: a.heading = heading; break;
      case DynamicsKind::Uav:
        a.flight = FlightState{c.uav.initial_speed, 0.0, heading};
        a.control = uav_trim(c.uav);
        break;
    }
  }
  return agents;
}

}  // namespace rdv
