#include "rdv/dynamics.hpp"

#include "rdv/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rdv {

namespace {

constexpr double kGimbalTol = 1e-9;

void require(bool ok, const char* what) {
  if (!ok) throw InvalidInput(what);
}

}  // namespace

void validate_nadf(const NadfParams& p) {
  require(p.b >= 0.0 && std::isfinite(p.b), "b must be >= 0");
  require(p.kd >= 0.0 && std::isfinite(p.kd), "K_d must be >= 0");
  require(p.guidance_floor > 0.0 && std::isfinite(p.guidance_floor), "guidance_floor must be > 0");
}

Point nadf(const Point& uc, const Point& v, const NadfParams& params) {
  if (uc.size() != v.size()) throw InvalidInput("nadf: dimension mismatch");
  const double norm = uc.norm();
  if (norm <= params.guidance_floor) return v;
  const Point u = uc / norm;
  const double along = u.dot(v);
  Point out = v - along * u;
  const bool gate = params.mode == HeavisideMode::OpposeOnly ? along < 0.0 : along > 0.0;
  if (gate) out += along * u;
  return out;
}

Point di_control(const Point& uc, const Point& v, const NadfParams& params) {
  return uc - params.b * v - params.kd * nadf(uc, v, params);
}

Point saturate(const Point& u, double limit) {
  if (!(limit > 0.0)) throw InvalidInput("saturation limit must be > 0");
  return u.cwiseMax(-limit).cwiseMin(limit);
}

// --- UGV -------------------------------------------------------------------

void validate_ugv(const UgvParams& p) {
  require(p.k1 > 0.0, "K1 must be > 0");
  require(p.k2 > 0.0, "K2 must be > 0");
  require(p.wheel_radius > 0.0, "wheel radius must be > 0");
  require(p.axle_distance > 0.0, "axle distance must be > 0");
  require(p.phi_limit > 0.0 && p.phi_limit < std::numbers::pi / 2, "phi_limit must lie in (0, pi/2)");
}

double wrap_angle(double angle) {
  double r = std::remainder(angle, 2.0 * std::numbers::pi);
  if (r <= -std::numbers::pi) r += 2.0 * std::numbers::pi;
  return r;
}

UgvControl ugv_control(const Point& uc, double theta, const UgvParams& params) {
  if (uc.size() != 2) throw InvalidInput("ugv_control: guidance must be 2-D");
  const double speed = params.k1 * uc.norm();
  if (!(speed > 0.0)) return {};
  const double yaw_rate = params.k2 * wrap_angle(std::atan2(uc[1], uc[0]) - theta);
  const double limit = std::nextafter(params.phi_limit, 0.0);
  const double steering = std::clamp(std::atan(yaw_rate * params.axle_distance / speed), -limit, limit);
  return {speed / params.wheel_radius, steering};
}

UgvTwist ugv_twist(const UgvControl& control, const UgvParams& params) {
  const double speed = params.wheel_radius * control.wheel_rate;
  return {speed, speed / params.axle_distance * std::tan(control.steering)};
}

Pose2 ugv_step(const Pose2& pose, const UgvControl& control, double dt, const UgvParams& params) {
  if (!(dt > 0.0)) throw InvalidInput("dt must be > 0");
  const auto [v, w] = ugv_twist(control, params);
  auto f = [&](double theta) { return Eigen::Vector3d{v * std::cos(theta), v * std::sin(theta), w}; };
  const Eigen::Vector3d k1 = f(pose.theta);
  const Eigen::Vector3d k2 = f(pose.theta + 0.5 * dt * k1[2]);
  const Eigen::Vector3d k3 = f(pose.theta + 0.5 * dt * k2[2]);
  const Eigen::Vector3d k4 = f(pose.theta + dt * k3[2]);
  const Eigen::Vector3d inc = dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  return {pose.x + inc[0], pose.y + inc[1], pose.theta + inc[2]};
}

// --- UAV -------------------------------------------------------------------

void validate_uav(const UavParams& p) {
  require(p.mass > 0.0, "mass must be > 0");
  require(p.gravity >= 0.0, "gravity must be >= 0");
  require(p.k_u > 0.0, "K_u must be > 0");
  require(p.k_lambda > 0.0, "K_lambda must be > 0");
  require(p.v_floor > 0.0, "v_floor must be > 0");
  require(p.initial_speed >= p.v_floor, "initial speed must be >= v_floor");
}

UavControl uav_trim(const UavParams& params) { return {0.0, params.mass * params.gravity, 0.0}; }

Eigen::Vector3d uav_kinematics(const FlightState& f) {
  if (f.speed < 0.0) throw InvalidInput("uav_kinematics: negative speed");
  const double cg = std::cos(f.path_angle);
  return {f.speed * cg * std::cos(f.heading), f.speed * cg * std::sin(f.heading), f.speed * std::sin(f.path_angle)};
}

double uav_speed_rate(const FlightState& f, const UavControl& u, const UavParams& p) {
  return u.tangential_force / p.mass - p.gravity * std::sin(f.path_angle);
}

namespace {

void check_envelope(const FlightState& f, const UavParams& p) {
  if (f.speed < p.v_floor) {
    throw DynamicsError(DynamicsError::Kind::Stall,
                        "stall: speed " + std::to_string(f.speed) + " below floor " + std::to_string(p.v_floor));
  }
  if (std::abs(std::cos(f.path_angle)) < kGimbalTol) {
    throw DynamicsError(DynamicsError::Kind::Gimbal, "gimbal: flight-path angle at +-pi/2");
  }
}

}  // namespace

Eigen::Vector3d uav_dynamics(const FlightState& f, const UavControl& u, const UavParams& p) {
  check_envelope(f, p);
  const double mv = p.mass * f.speed;
  const double cg = std::cos(f.path_angle);
  return {uav_speed_rate(f, u, p),
          (u.normal_force * std::cos(u.bank_angle) - p.mass * p.gravity * cg) / mv,
          u.normal_force * std::sin(u.bank_angle) / (mv * cg)};
}

UavJacobians uav_jacobians(const FlightState& f, const UavControl& u, const UavParams& p) {
  check_envelope(f, p);
  const double v = f.speed;
  const double cg = std::cos(f.path_angle), sg = std::sin(f.path_angle);
  const double cp = std::cos(f.heading), sp = std::sin(f.heading);
  const double ce = std::cos(u.bank_angle), se = std::sin(u.bank_angle);
  const double mv = p.mass * v;

  UavJacobians j;
  j.wrt_flight << cg * cp, -v * sg * cp, -v * cg * sp,  //
      cg * sp, -v * sg * sp, v * cg * cp,               //
      sg, v * cg, 0.0;
  j.wrt_control << 1.0 / p.mass, 0.0, 0.0,  //
      0.0, ce / mv, -u.normal_force * se / mv,  //
      0.0, se / (mv * cg), u.normal_force * ce / (mv * cg);
  return j;
}

Eigen::Vector3d uav_control_rate(const Eigen::Vector3d& uc, const FlightState& f, const UavControl& u,
                                 const UavParams& p) {
  const auto j = uav_jacobians(f, u, p);
  const Eigen::Vector3d motion_error = p.k_lambda * j.wrt_flight.transpose() * (uc - uav_kinematics(f));
  return p.k_u * j.wrt_control.transpose() * (motion_error - uav_dynamics(f, u, p));
}

}  // namespace rdv
