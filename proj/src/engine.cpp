#include "rdv/engine.hpp"

#include "rdv/dynamics.hpp"
#include "rdv/error.hpp"
#include "rdv/guidance.hpp"

#include <cmath>
#include <utility>

namespace rdv {

DelayBuffer::DelayBuffer(std::size_t lag, std::span<const Point> initial) : lag_(lag) {
  history_.emplace_back(initial.begin(), initial.end());
}

void DelayBuffer::push(std::span<const Point> positions) {
  history_.emplace_back(positions.begin(), positions.end());
  while (history_.size() > lag_ + 1) history_.pop_front();
}

const std::vector<Point>& DelayBuffer::lagged() const {
  if (history_.empty()) throw InvalidInput("delay buffer is empty");
  return history_.front();
}

const std::vector<Point>& delayed_positions(const DelayBuffer& buffer) { return buffer.lagged(); }

SimState init_scenario(const ScenarioConfig& config) {
  SimState s;
  s.agents = initial_agents(config);
  std::vector<Point> positions;
  for (const auto& a : s.agents) positions.push_back(a.position);
  s.delay = DelayBuffer(delay_steps(config), positions);
  if (config.leader) s.leader_origin = positions[config.leader->agent];
  return s;
}

Simulation::Simulation(ScenarioConfig config) : config_(std::move(config)), state_(init_scenario(config_)) {
  last_nearest_.assign(config_.n, kNone);
  row_scratch_.assign(config_.n, 0.0);
}

const Round& Simulation::sense() {
  if (sensed_) return round_;
  const std::size_t n = config_.n;
  auto& r = round_;
  r.step = state_.step;
  r.time = state_.time;
  r.positions.resize(n);
  for (std::size_t i = 0; i < n; ++i) r.positions[i] = state_.agents[i].position;
  pairwise_distances(r.positions, r.distances);

  const bool delayed = state_.delay.lag() > 0;
  if (delayed && state_.step > 0) state_.delay.push(r.positions);
  const std::vector<Point>& seen = delayed ? state_.delay.lagged() : r.positions;

  const double epsilon = priority_radius(config_.provider);
  const bool is_leader_run = config_.leader.has_value();
  r.view.resize(n);
  r.guidance.resize(n);
  r.control.resize(n);
  r.nearest.resize(n);
  r.events.clear();
  r.max_speed = 0.0;
  r.kinetic = 0.0;

  for (std::size_t i = 0; i < n; ++i) {
    std::span<const double> row;
    if (delayed) {
      for (std::size_t j = 0; j < n; ++j) row_scratch_[j] = j == i ? 0.0 : (seen[j] - r.positions[i]).norm();
      row = row_scratch_;
    } else {
      row = r.distances.row(i);
    }
    r.view[i] = select_neighbors(config_.provider, row, i);
    if (r.view[i].empty()) r.events.push_back({Event::Kind::EmptyView, i});
    r.guidance[i] = guidance_velocity(r.positions[i], seen, r.view[i], config_.guidance);

    r.nearest[i] = dm(r.distances, i, epsilon);
    const std::size_t id = r.nearest[i] ? r.nearest[i]->id : kNone;
    if (state_.step > 0 && id != last_nearest_[i]) r.events.push_back({Event::Kind::NeighborSwitch, i, last_nearest_[i], id});
    last_nearest_[i] = id;

    const bool leader = is_leader_run && config_.leader->agent == i;
    const auto& agent = state_.agents[i];
    auto clamp = [&](const Point& u) {
      if (!config_.saturation) return u;
      Point s = saturate(u, *config_.saturation);
      if (s != u) r.events.push_back({Event::Kind::Saturation, i});
      return s;
    };

    double speed = 0.0;
    switch (config_.dynamics) {
      case DynamicsKind::Single:
        if (leader) {
          r.control[i] = config_.leader->velocity_at(state_.time);
        } else {
          r.control[i] = clamp(r.guidance[i]);
        }
        speed = r.control[i].norm();
        break;
      case DynamicsKind::Double:
        r.control[i] = leader ? Point::Zero(config_.dim) : clamp(di_control(r.guidance[i], *agent.velocity, config_.nadf));
        speed = agent.velocity->norm();
        break;
      case DynamicsKind::Ugv: {
        const auto c = ugv_control(r.guidance[i], *agent.heading, config_.ugv);
        r.control[i] = Point(2);
        r.control[i] << c.wheel_rate, c.steering;
        speed = ugv_twist(c, config_.ugv).speed;
        break;
      }
      case DynamicsKind::Uav:
        r.control[i] = agent.control->vec();
        speed = agent.flight->speed;
        break;
    }
    r.max_speed = std::max(r.max_speed, speed);
    r.kinetic += speed * speed;
  }
  sensed_ = true;
  return r;
}

StepRecord Simulation::record() const {
  if (!sensed_) throw InvalidInput("record() before sense()");
  StepRecord rec;
  rec.step = round_.step;
  rec.time = round_.time;
  rec.agents = state_.agents;
  rec.guidance = round_.guidance;
  rec.control = round_.control;
  rec.events = round_.events;
  return rec;
}

StepRecord Simulation::step() {
  sense();
  StepRecord rec = record();
  advance();
  return rec;
}

void Simulation::advance() {
  sense();
  switch (config_.dynamics) {
    case DynamicsKind::Single: integrate_single(); break;
    case DynamicsKind::Double: integrate_double(); break;
    case DynamicsKind::Ugv: integrate_ugv(); break;
    case DynamicsKind::Uav: integrate_uav(); break;
  }
  apply_leader();
  ++state_.step;
  state_.time = static_cast<double>(state_.step) * config_.dt;
  sensed_ = false;
}

void Simulation::integrate_single() {
  const std::size_t n = config_.n;
  const double dt = config_.dt;
  if (config_.integrator == Integrator::Euler) {
    for (std::size_t i = 0; i < n; ++i) state_.agents[i].position += dt * round_.control[i];
    return;
  }
  // RK4 with the neighbor sets frozen for the step; guidance is re-evaluated at
  // the stage positions (own position always, others only without delay).
  const bool delayed = state_.delay.lag() > 0;
  auto velocity = [&](const std::vector<Point>& p, std::vector<Point>& out) {
    const std::vector<Point>& seen = delayed ? state_.delay.lagged() : p;
    for (std::size_t i = 0; i < n; ++i) {
      Point u = guidance_velocity(p[i], seen, round_.view[i], config_.guidance);
      out[i] = config_.saturation ? saturate(u, *config_.saturation) : u;
    }
  };
  const auto& p0 = round_.positions;
  std::vector<Point> k1 = round_.control, k2(n), k3(n), k4(n), tmp(n);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p0[i] + 0.5 * dt * k1[i];
  velocity(tmp, k2);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p0[i] + 0.5 * dt * k2[i];
  velocity(tmp, k3);
  for (std::size_t i = 0; i < n; ++i) tmp[i] = p0[i] + dt * k3[i];
  velocity(tmp, k4);
  for (std::size_t i = 0; i < n; ++i) {
    state_.agents[i].position = p0[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
}

void Simulation::integrate_double() {
  const double dt = config_.dt;
  for (std::size_t i = 0; i < config_.n; ++i) {
    auto& a = state_.agents[i];
    const Point& uc = round_.guidance[i];
    auto accel = [&](const Point& v) {
      Point u = di_control(uc, v, config_.nadf);
      if (config_.saturation) u = saturate(u, *config_.saturation);
      if (!config_.drift.empty()) u += config_.drift[i];
      return u;
    };
    const Point p0 = a.position, v0 = *a.velocity;
    const Point a1 = accel(v0);
    const Point v1 = v0 + 0.5 * dt * a1;
    const Point a2 = accel(v1);
    const Point v2 = v0 + 0.5 * dt * a2;
    const Point a3 = accel(v2);
    const Point v3 = v0 + dt * a3;
    const Point a4 = accel(v3);
    a.position = p0 + dt / 6.0 * (v0 + 2.0 * v1 + 2.0 * v2 + v3);
    a.velocity = v0 + dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
  }
}

void Simulation::integrate_ugv() {
  for (std::size_t i = 0; i < config_.n; ++i) {
    auto& a = state_.agents[i];
    const UgvControl c{round_.control[i][0], round_.control[i][1]};
    const Pose2 next = ugv_step({a.position[0], a.position[1], *a.heading}, c, config_.dt, config_.ugv);
    a.position[0] = next.x;
    a.position[1] = next.y;
    a.heading = wrap_angle(next.theta);
  }
}

void Simulation::integrate_uav() {
  using Vec9 = Eigen::Matrix<double, 9, 1>;
  const double dt = config_.dt;
  for (std::size_t i = 0; i < config_.n; ++i) {
    auto& a = state_.agents[i];
    const Eigen::Vector3d uc = round_.guidance[i];
    auto deriv = [&](const Vec9& y) {
      const FlightState f = FlightState::from(y.segment<3>(3));
      const UavControl u = UavControl::from(y.segment<3>(6));
      Vec9 d;
      d.segment<3>(0) = uav_kinematics(f);
      d.segment<3>(3) = uav_dynamics(f, u, config_.uav);
      d.segment<3>(6) = uav_control_rate(uc, f, u, config_.uav);
      return d;
    };
    Vec9 y;
    y << Eigen::Vector3d(a.position), a.flight->vec(), a.control->vec();
    try {
      const Vec9 k1 = deriv(y);
      const Vec9 k2 = deriv(y + 0.5 * dt * k1);
      const Vec9 k3 = deriv(y + 0.5 * dt * k2);
      const Vec9 k4 = deriv(y + dt * k3);
      y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } catch (const DynamicsError& e) {
      throw SimulationAbort(i, state_.time, e.what());
    }
    if (y[3] < config_.uav.v_floor) {
      throw SimulationAbort(i, state_.time + dt, "stall: speed " + std::to_string(y[3]) + " below floor");
    }
    a.position = y.segment<3>(0);
    a.flight = FlightState::from(y.segment<3>(3));
    a.control = UavControl::from(y.segment<3>(6));
  }
}

void Simulation::apply_leader() {
  if (!config_.leader) return;
  const auto& script = *config_.leader;
  const double t = static_cast<double>(state_.step + 1) * config_.dt;
  auto& a = state_.agents[script.agent];
  a.position = state_.leader_origin + script.displacement(t);
  if (a.velocity) a.velocity = script.velocity_at(t);
}

RunOutput run(const ScenarioConfig& config, const RunOptions& options) {
  Simulation sim(config);
  MetricsRecorder recorder(config.n, priority_radius(config.provider), config.delta, config.dt,
                           options.per_agent_metrics);
  RunOutput out;
  const std::size_t last_step = step_count(config);
  for (std::size_t k = 0;; ++k) {
    const Round& r = sim.sense();
    recorder.record(r.step, r.time, r.distances, r.positions, r.nearest, r.max_speed, r.kinetic, r.events);
    const bool held = config.stop_hold && recorder.time_below_delta() >= *config.stop_hold;
    const bool last = k == last_step || held;
    if (options.observer && (k % config.trace_every == 0 || last)) options.observer(sim.record());
    if (last) break;
    try {
      sim.advance();
    } catch (const SimulationAbort& e) {
      out.abort_reason = e.what();
      out.abort_agent = e.agent();
      break;
    }
    out.steps_run = k + 1;
  }
  out.metrics = recorder.finish();
  if (out.aborted()) {
    // An aborted run never converged, whatever the last diameter was.
    out.metrics.tc.reset();
    out.metrics.tc_step.reset();
  }
  return out;
}

TracedRun run_traced(const ScenarioConfig& config, bool per_agent_metrics) {
  TracedRun tr;
  tr.trace.dynamics = config.dynamics;
  tr.trace.dim = config.dim;
  RunOptions opts;
  opts.per_agent_metrics = per_agent_metrics;
  opts.observer = [&](const StepRecord& rec) { tr.trace.steps.push_back(rec); };
  tr.output = run(config, opts);
  return tr;
}

}  // namespace rdv
