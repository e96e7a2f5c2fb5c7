#include "rdv/engine.hpp"
#include "rdv/error.hpp"
#include "rdv/metrics.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

using namespace rdv;
using rdv::test::pt;

namespace {

DistanceMatrix line(std::vector<double> xs) {
  std::vector<Point> p;
  for (double x : xs) p.push_back(pt({x}));
  return pairwise_distances(p);
}

StepRecord snapshot(std::size_t step, std::vector<Point> positions) {
  StepRecord r;
  r.step = step;
  for (std::size_t i = 0; i < positions.size(); ++i) r.agents.push_back({i, positions[i], {}, {}, {}, {}});
  return r;
}

}  // namespace

TEST_CASE("dm examples") {
  const auto d = line({0, 2, 5});
  const auto m = dm(d, 0, 1.0);
  REQUIRE(m);
  CHECK(m->distance == 2.0);
  CHECK(m->id == 1);
  CHECK(!dm(d, 0, 10.0));
  const auto pair = dm(line({0, 3}), 0, 0.0);
  REQUIRE(pair);
  CHECK(pair->distance == 3.0);
  CHECK(pair->id == 1);
  CHECK_THROWS_AS(dm(d, 7, 1.0), InvalidInput);
}

TEST_CASE("dxm examples") {
  CHECK(dxm(line({0, 2, 5}), 1.0) == 3.0);
  CHECK(dxm(line({0, 4.5}), 1.0) == 4.5);
  CHECK(!dxm(line({0, 0.01, 0.015}), 1.0));
}

TEST_CASE("dxm is at least epsilon whenever defined") {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Point> p;
    for (int k = 0; k < 10; ++k) p.push_back(test::random_point(rng, 2, 3.0));
    const double eps = 0.1 * trial;
    if (const auto v = dxm(pairwise_distances(p), eps)) CHECK(*v >= eps);
  }
}

TEST_CASE("path statistics") {
  SimTrace still;
  still.steps = {snapshot(0, {pt({0, 0}), pt({1, 1})}), snapshot(1, {pt({0, 0}), pt({1, 1})})};
  const auto s = path_stats(still);
  CHECK(s.mean == 0.0);
  CHECK(s.spread == 0.0);

  SimTrace moving;
  moving.steps = {snapshot(0, {pt({0, 0}), pt({5, 5})}), snapshot(1, {pt({1, 0}), pt({5, 5})}),
                  snapshot(2, {pt({3, 0}), pt({5, 5})})};
  const auto m = path_stats(moving);
  CHECK(m.mean == doctest::Approx(1.5));
  CHECK(m.spread == doctest::Approx(3.0));
}

TEST_CASE("convergence-time bound") {
  CHECK(tc_bound(5, 1.0, 4.0, 4.0, 10.0).value == 10.0);
  CHECK(tc_bound(5, 1.0, 4.0, 4.0, 10.0).kind == TcBound::Kind::Constant);
  const auto b = tc_bound(5, 1.0, 0.1, 4.0, 10.0);
  CHECK(b.kind == TcBound::Kind::Finite);
  CHECK(b.value == doctest::Approx(5 * std::log(40.0) + 10).epsilon(1e-12));
  CHECK(b.value == doctest::Approx(28.444).epsilon(1e-4));
  CHECK(tc_bound(5, 1.0, 0.0, 4.0, 10.0).kind == TcBound::Kind::Unbounded);
  CHECK(tc_bound(5, 1.0, 1e-300, 4.0, 10.0).value > 3000.0);
  CHECK_THROWS_AS(tc_bound(0, 1.0, 0.1, 4.0, 10.0), InvalidInput);

  double prev = INFINITY;
  for (double eps = 1e-6; eps <= 4.0; eps *= 1.3) {
    const double v = tc_bound(3, 0.7, eps, 4.0, 2.0).value;
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("sharing monitor") {
  const auto c = sharing_check(line({0, 0.5, 1.2}), 1.0);
  CHECK(c.pair_hypothesis);
  CHECK(!c.universal_hypothesis);
  REQUIRE(c.dxm);
  CHECK(*c.dxm < 2.0);
  CHECK(!c.pair_violation);

  const auto apart = sharing_check(line({0, 5, 10}), 1.0);
  CHECK(!apart.pair_hypothesis);
  CHECK(!apart.universal_hypothesis);
  CHECK(!apart.pair_violation);

  SimTrace t;
  t.steps = {snapshot(0, {pt({0}), pt({0.5}), pt({1.2})}), snapshot(1, {pt({0}), pt({5}), pt({10})})};
  const auto r = prop5_monitor(t, 1.0);
  CHECK(r.steps == 2);
  CHECK(r.pair_hypothesis_steps == 1);
  CHECK(r.pair_violations == 0);
}

TEST_CASE("convergence index requires staying inside") {
  const std::vector<double> d{3, 1, 0.01, 0.5, 0.01, 0.005};
  CHECK(convergence_index(d, 0.02) == 4u);
  CHECK(!convergence_index(std::vector<double>{3, 2, 1}, 0.02));
  CHECK(convergence_index(std::vector<double>{0, 0}, 0.02) == 0u);
}

TEST_CASE("invariant checks on single-integrator runs") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    ScenarioConfig c;
    c.n = 30;
    c.provider = DynamicPriority{1.0, 1};
    c.dt = 0.01;
    c.t_max = 300.0;
    c.seed = seed;
    c.stop_hold = 1.0;
    const auto traced = run_traced(c);
    const auto& m = traced.output.metrics;
    CHECK(m.converged());
    const auto dmr = check_dm_monotone(m);
    CHECK(dmr.checked > 0);
    CHECK(dmr.ok());
    CHECK(check_diameter_decreasing(m).ok());
    CHECK(check_zone_retention(traced.trace, 1.0, 2 * c.dt * *std::max_element(m.max_speed.begin(), m.max_speed.end())).ok());
    CHECK(m.max_dxm >= 1.0);
  }
}

TEST_CASE("monotone checks catch growth") {
  MetricsSeries s;
  s.n = 1;
  s.dt = 0.1;
  s.delta = 0.02;
  s.per_agent = true;
  s.time = {0, 0.1, 0.2};
  s.step = {0, 1, 2};
  s.diameter = {3, 2, 2.5};
  s.max_speed = {1, 1, 1};
  s.dm = {3, 2, 2.5};
  s.dm_id = {1, 1, 1};
  CHECK(check_diameter_decreasing(s).violations == 1);
  CHECK(check_dm_monotone(s).violations == 1);
  s.dm_id = {1, 1, 2};
  CHECK(check_dm_monotone(s).violations == 0);
  CHECK(check_dm_monotone(s).switches == 1);
}
