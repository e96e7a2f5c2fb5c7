#include "rdv/dynamics.hpp"
#include "rdv/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace rdv;
using rdv::test::pt;
using std::numbers::pi;

TEST_CASE("nadf examples") {
  const NadfParams oppose{};
  NadfParams printed{};
  printed.mode = HeavisideMode::AsPrinted;
  CHECK(nadf(pt({1, 0}), pt({0, 2}), oppose) == pt({0, 2}));
  CHECK(nadf(pt({1, 0}), pt({0, 2}), printed) == pt({0, 2}));
  CHECK(nadf(pt({1, 0}), pt({-3, 0}), oppose) == pt({-3, 0}));
  CHECK(nadf(pt({1, 0}), pt({-3, 0}), printed) == pt({0, 0}));
  CHECK(nadf(pt({1, 0}), pt({3, 0}), oppose) == pt({0, 0}));
  CHECK(nadf(pt({1, 0}), pt({3, 0}), printed) == pt({3, 0}));
  // Below the guidance floor all of v is damped.
  CHECK(nadf(pt({0, 0}), pt({3, -1}), oppose) == pt({3, -1}));
}

TEST_CASE("double-integrator control examples") {
  const NadfParams p{};
  CHECK(di_control(pt({1, 0}), pt({0, 0}), p) == pt({1, 0}));
  CHECK(di_control(pt({1, 0}), pt({0, 1}), p) == pt({1, -152}));
}

TEST_CASE("nadf sign and orthogonality properties") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 2000; ++trial) {
    const int dim = 1 + trial % 3;
    const Point uc = test::random_point(rng, dim);
    const Point v = test::random_point(rng, dim);
    for (auto mode : {HeavisideMode::OpposeOnly, HeavisideMode::AsPrinted}) {
      NadfParams p;
      p.mode = mode;
      const Point un = nadf(uc, v, p);
      CHECK(v.dot(un) >= -1e-12);
      const Point u = uc.normalized();
      const double along = u.dot(v);
      const bool gate = mode == HeavisideMode::OpposeOnly ? along < 0 : along > 0;
      const Point orth = un - (gate ? along : 0.0) * u;
      CHECK(std::abs(orth.dot(u)) < 1e-12 * std::max(1.0, v.norm()));
    }
  }
}

TEST_CASE("saturation clamps components") {
  CHECK(saturate(pt({15.5, 12.5}), 1.0) == pt({1, 1}));
  CHECK(saturate(pt({0.5, -0.3}), 1.0) == pt({0.5, -0.3}));
  CHECK(saturate(pt({-2, 0}), 1.0) == pt({-1, 0}));
  CHECK_THROWS_AS(saturate(pt({1, 1}), 0.0), InvalidInput);
}

TEST_CASE("angle wrapping lands in (-pi, pi]") {
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(pi) == doctest::Approx(pi));
  CHECK(wrap_angle(-pi) == doctest::Approx(pi));
  CHECK(wrap_angle(3 * pi / 2) == doctest::Approx(-pi / 2));
  CHECK(wrap_angle(-7.0) == doctest::Approx(-7.0 + 2 * pi));
}

TEST_CASE("ugv control examples") {
  const UgvParams p{};
  const auto aligned = ugv_control(pt({1, 0}), 0.0, p);
  CHECK(aligned.wheel_rate == doctest::Approx(5.0));
  CHECK(aligned.steering == 0.0);

  const auto turn = ugv_control(pt({0, 1}), 0.0, p);
  CHECK(turn.wheel_rate == doctest::Approx(5.0));
  CHECK(turn.steering == doctest::Approx(std::atan(2 * pi * 0.5 / 0.5)));
  CHECK(turn.steering == doctest::Approx(1.4129).epsilon(1e-4));
  const auto tw = ugv_twist(turn, p);
  CHECK(tw.speed == doctest::Approx(0.5));
  CHECK(tw.yaw_rate == doctest::Approx(2 * pi));

  const auto idle = ugv_control(pt({0, 0}), 1.0, p);
  CHECK(idle.wheel_rate == 0.0);
  CHECK(idle.steering == 0.0);
}

TEST_CASE("steering stays strictly inside the limit") {
  UgvParams p;
  p.k2 = 1000.0;
  const auto c = ugv_control(pt({-1, 0.01}), 0.0, p);
  CHECK(std::abs(c.steering) < p.phi_limit);
}

TEST_CASE("ugv step examples") {
  const UgvParams p{};
  const auto straight = ugv_step({0, 0, 0}, {1.0 / p.wheel_radius, 0.0}, 0.1, p);
  CHECK(straight.x == doctest::Approx(0.1));
  CHECK(straight.y == 0.0);
  CHECK(straight.theta == 0.0);
  const Pose2 start{1, 2, 0.3};
  const auto parked = ugv_step(start, {0.0, 1.2}, 0.5, p);
  CHECK(parked.x == start.x);
  CHECK(parked.y == start.y);
  CHECK(parked.theta == start.theta);
}

TEST_CASE("ugv closed loop realizes the commanded speed and turn rate") {
  const UgvParams p{};
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ang(-pi, pi), mag(0.2, 3.0), small(-0.5, 0.5);
  const double dt = 1e-4;
  for (int trial = 0; trial < 200; ++trial) {
    const double theta = ang(rng);
    // Heading errors well inside the steering limit.
    const double target = theta + small(rng);
    const double m = mag(rng);
    const Point uc = pt({m * std::cos(target), m * std::sin(target)});
    const auto c = ugv_control(uc, theta, p);
    const auto next = ugv_step({0, 0, theta}, c, dt, p);
    const double want_rate = p.k2 * wrap_angle(target - theta);
    CHECK((next.theta - theta) / dt == doctest::Approx(want_rate).epsilon(1e-9));
    const double travelled = std::hypot(next.x, next.y);
    CHECK(travelled / dt == doctest::Approx(p.k1 * m).epsilon(1e-6));
  }
}

TEST_CASE("uav kinematics") {
  CHECK(uav_kinematics({1, 0, 0}).isApprox(Eigen::Vector3d(1, 0, 0)));
  CHECK((uav_kinematics({2, pi / 2, 0}) - Eigen::Vector3d(0, 0, 2)).norm() < 1e-12);
  CHECK(uav_kinematics({1, 0, pi / 4}).isApprox(Eigen::Vector3d(std::sqrt(0.5), std::sqrt(0.5), 0)));
}

TEST_CASE("uav dynamics examples") {
  const UavParams p{};
  const FlightState level{10, 0, 0};
  CHECK(uav_dynamics(level, uav_trim(p), p).norm() < 1e-12);

  const double k = 1.7;
  const auto banked = uav_dynamics(level, {0.0, p.mass * p.gravity * k, pi / 2}, p);
  CHECK(banked[2] == doctest::Approx(p.gravity * k / level.speed));
  CHECK(banked[1] == doctest::Approx(-p.gravity / level.speed));

  CHECK(uav_speed_rate({10, pi / 2, 0}, {p.mass * p.gravity, 0, 0}, p) == doctest::Approx(0.0));
}

TEST_CASE("uav envelope errors") {
  const UavParams p{};
  try {
    uav_dynamics({0.1, 0, 0}, uav_trim(p), p);
    FAIL("expected stall");
  } catch (const DynamicsError& e) {
    CHECK(e.kind() == DynamicsError::Kind::Stall);
  }
  try {
    uav_dynamics({10, pi / 2, 0}, uav_trim(p), p);
    FAIL("expected gimbal");
  } catch (const DynamicsError& e) {
    CHECK(e.kind() == DynamicsError::Kind::Gimbal);
  }
}

TEST_CASE("uav jacobian examples") {
  const UavParams p{};
  const auto j = uav_jacobians({1, 0, 0}, uav_trim(p), p);
  Eigen::Matrix3d expected;
  expected << 1, 0, 0, 0, 0, 1, 0, 1, 0;
  CHECK((j.wrt_flight - expected).norm() < 1e-15);
  CHECK(j.wrt_control.row(0).isApprox(Eigen::RowVector3d(1.0 / p.mass, 0, 0)));
}

TEST_CASE("uav jacobians match central differences") {
  UavParams p;
  p.mass = 2.5;
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> v(1.0, 60.0), g(-1.3, 1.3), ps(-pi, pi), ft(-20, 20), fn(0, 40);
  for (int trial = 0; trial < 100; ++trial) {
    const FlightState f{v(rng), g(rng), ps(rng)};
    const UavControl u{ft(rng), fn(rng), g(rng)};
    const auto j = uav_jacobians(f, u, p);
    Eigen::Matrix3d nf, nc;
    for (int k = 0; k < 3; ++k) {
      Eigen::Vector3d xp = f.vec(), xm = f.vec();
      const double hx = 1e-6 * std::max(1.0, std::abs(xp[k]));
      xp[k] += hx;
      xm[k] -= hx;
      nf.col(k) = (uav_kinematics(FlightState::from(xp)) - uav_kinematics(FlightState::from(xm))) / (2 * hx);
      Eigen::Vector3d wp = u.vec(), wm = u.vec();
      const double hw = 1e-6 * std::max(1.0, std::abs(wp[k]));
      wp[k] += hw;
      wm[k] -= hw;
      nc.col(k) = (uav_dynamics(f, UavControl::from(wp), p) - uav_dynamics(f, UavControl::from(wm), p)) / (2 * hw);
    }
    CHECK((nf - j.wrt_flight).cwiseAbs().maxCoeff() / j.wrt_flight.cwiseAbs().maxCoeff() < 1e-5);
    CHECK((nc - j.wrt_control).cwiseAbs().maxCoeff() / j.wrt_control.cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("uav control rate fixed point and gain gate") {
  UavParams p;
  const FlightState f{12, 0, 0.4};
  const Eigen::Vector3d uc = uav_kinematics(f);
  CHECK(uav_control_rate(uc, f, uav_trim(p), p).norm() < 1e-12);

  p.k_u = 0.0;
  CHECK(uav_control_rate(Eigen::Vector3d(0, 30, 5), f, {3, 4, 0.2}, p).norm() == 0.0);
}

TEST_CASE("uav control law reduces the tracking error over a short horizon") {
  UavParams p;
  p.k_u = 100.0;
  FlightState f{10, 0.05, 0.2};
  UavControl u = uav_trim(p);
  const Eigen::Vector3d uc(11, 1, 0.5);
  const double before = (uc - uav_kinematics(f)).norm();
  const double dt = 1e-3;
  for (int k = 0; k < 2000; ++k) {
    const Eigen::Vector3d lam = f.vec() + dt * uav_dynamics(f, u, p);
    const Eigen::Vector3d w = u.vec() + dt * uav_control_rate(uc, f, u, p);
    f = FlightState::from(lam);
    u = UavControl::from(w);
  }
  CHECK((uc - uav_kinematics(f)).norm() < 0.5 * before);
}

TEST_CASE("parameter validation") {
  NadfParams n;
  n.b = -1;
  CHECK_THROWS_AS(validate_nadf(n), InvalidInput);
  UgvParams g;
  g.phi_limit = pi / 2;
  CHECK_THROWS_AS(validate_ugv(g), InvalidInput);
  UavParams a;
  a.mass = 0;
  CHECK_THROWS_AS(validate_uav(a), InvalidInput);
}
