#pragma once

#include "rdv/geometry.hpp"

#include <Eigen/Core>

#include <numbers>

namespace rdv {

// ---------------------------------------------------------------------------
// Double integrator with nonlinear anisotropic damping (NADF)
// ---------------------------------------------------------------------------

/// Which velocity component along the guidance direction gets damped.
enum class HeavisideMode {
  OpposeOnly,  ///< damp the aligned component only when it points against Uc
  AsPrinted,   ///< damp the aligned component only when it points along Uc
};

struct NadfParams {
  double b = 2.0;              ///< linear damping, 1/time
  double kd = 150.0;           ///< anisotropic damping gain, 1/time
  double guidance_floor = 1e-9;  ///< |Uc| at or below this counts as zero
  HeavisideMode mode = HeavisideMode::OpposeOnly;
  bool operator==(const NadfParams&) const = default;
};

void validate_nadf(const NadfParams& params);

/// Damping direction Un. The part of `v` orthogonal to Uc is always included;
/// the part along Uc is included when the heaviside gate fires (Phi(0) = 0).
/// For |Uc| <= guidance_floor the whole of `v` is returned.
Point nadf(const Point& uc, const Point& v, const NadfParams& params);

/// Acceleration command Uc - b v - Kd Un.
Point di_control(const Point& uc, const Point& v, const NadfParams& params);

/// Clamps every component to [-limit, limit].
Point saturate(const Point& u, double limit);

// ---------------------------------------------------------------------------
// Car-like UGV (rear-wheel drive, front-wheel steering)
// ---------------------------------------------------------------------------

struct UgvParams {
  double k1 = 0.5;  ///< speed gain on |Uc|
  double k2 = 4.0;  ///< heading gain
  double wheel_radius = 0.1;
  double axle_distance = 0.5;  ///< front wheel to rear axle
  double phi_limit = 0.49 * std::numbers::pi;
  bool operator==(const UgvParams&) const = default;
};

void validate_ugv(const UgvParams& params);

struct Pose2 {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;
};

struct UgvControl {
  double wheel_rate = 0.0;  ///< rear wheel angular speed
  double steering = 0.0;    ///< front wheel angle
};

/// Maps an angle difference into (-pi, pi].
double wrap_angle(double angle);

/// Wheel rate and steering that make the vehicle move at K1 |Uc| while turning at
/// K2 * wrap(arg Uc - theta). Steering saturates strictly inside phi_limit.
UgvControl ugv_control(const Point& uc, double theta, const UgvParams& params);

/// Body speed and yaw rate produced by a control pair.
struct UgvTwist {
  double speed;
  double yaw_rate;
};
UgvTwist ugv_twist(const UgvControl& control, const UgvParams& params);

/// One RK4 step of the unicycle kinematics with the control held constant.
Pose2 ugv_step(const Pose2& pose, const UgvControl& control, double dt, const UgvParams& params);

// ---------------------------------------------------------------------------
// Fixed-wing UAV, point mass
// ---------------------------------------------------------------------------

struct UavParams {
  double mass = 1.0;
  double gravity = 9.81;
  double k_u = 1.0;       ///< control-rate gain
  double k_lambda = 1.0;  ///< motion-error gain
  double v_floor = 0.5;   ///< stall guard on airspeed
  double initial_speed = 10.0;
  bool operator==(const UavParams&) const = default;
};

void validate_uav(const UavParams& params);

/// Motion variables in the body frame.
struct FlightState {
  double speed = 0.0;       ///< v
  double path_angle = 0.0;  ///< gamma
  double heading = 0.0;     ///< psi
  Eigen::Vector3d vec() const { return {speed, path_angle, heading}; }
  static FlightState from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
  bool operator==(const FlightState&) const = default;
};

/// Control forces, applied directly.
struct UavControl {
  double tangential_force = 0.0;  ///< F_T
  double normal_force = 0.0;      ///< F_N
  double bank_angle = 0.0;        ///< eta
  Eigen::Vector3d vec() const { return {tangential_force, normal_force, bank_angle}; }
  static UavControl from(const Eigen::Vector3d& v) { return {v[0], v[1], v[2]}; }
  bool operator==(const UavControl&) const = default;
};

/// Level-flight trim: no tangential force, lift balancing weight, wings level.
UavControl uav_trim(const UavParams& params);

/// World-frame velocity F(lambda).
Eigen::Vector3d uav_kinematics(const FlightState& flight);

double uav_speed_rate(const FlightState& flight, const UavControl& u, const UavParams& params);

/// Motion-variable rates Q(lambda, U). Throws DynamicsError on stall (v < v_floor)
/// or when |cos gamma| < 1e-9.
Eigen::Vector3d uav_dynamics(const FlightState& flight, const UavControl& u, const UavParams& params);

struct UavJacobians {
  Eigen::Matrix3d wrt_flight;   ///< dF/dlambda, rows (xdot, ydot, zdot), cols (v, gamma, psi)
  Eigen::Matrix3d wrt_control;  ///< dQ/dU, rows (vdot, gammadot, psidot), cols (F_T, F_N, eta)
};

UavJacobians uav_jacobians(const FlightState& flight, const UavControl& u, const UavParams& params);

/// Udot = K_u J_u^T [K_lambda J_lambda^T (Uc - F(lambda)) - Q(lambda, U)].
Eigen::Vector3d uav_control_rate(const Eigen::Vector3d& uc, const FlightState& flight, const UavControl& u,
                                 const UavParams& params);

}  // namespace rdv
