#include "rdv/config_io.hpp"
#include "rdv/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <string>

using namespace rdv;
using rdv::test::pt;

namespace {

const char* kMinimal = R"(# two agents
[scenario]
N = 2
dynamics = single
t_max = 5
init = explicit
positions = 0 0; 2 0

[graph]
provider = dynamic-priority

[guidance]
epsilon = 1
L = 1
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

ConfigError rejection(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e;
  }
  FAIL("config was accepted");
  return ConfigError("", "");
}

}  // namespace

TEST_CASE("minimal config parses with defaults echoed") {
  const auto parsed = parse_config(kMinimal);
  const auto& c = parsed.config;
  CHECK(c.n == 2);
  CHECK(c.dynamics == DynamicsKind::Single);
  CHECK(std::get<DynamicPriority>(c.provider) == DynamicPriority{1.0, 1});
  CHECK(std::get<ExplicitPositions>(c.init).positions == std::vector<Point>{pt({0, 0}), pt({2, 0})});
  const auto has = [&](const std::string& key) {
    return std::any_of(parsed.defaulted.begin(), parsed.defaulted.end(),
                       [&](const std::string& d) { return d.starts_with(key); });
  };
  CHECK(has("[scenario].dt"));
  CHECK(has("[scenario].delta"));
  CHECK(!has("[guidance].epsilon"));
}

TEST_CASE("negative epsilon names the field and its line") {
  const auto e = rejection(replace(kMinimal, "epsilon = 1", "epsilon = -1"));
  CHECK(e.field() == "[guidance].epsilon");
  CHECK(e.line() == 13);
  CHECK(std::string(e.what()).find("[guidance].epsilon") != std::string::npos);
}

TEST_CASE("structural errors carry line numbers") {
  CHECK(rejection(replace(kMinimal, "L = 1", "L = 1\nspeed = 3")).line() == 15);
  CHECK(rejection(replace(kMinimal, "[graph]", "[grpah]")).line() == 9);
  CHECK(rejection(replace(kMinimal, "N = 2", "N = two")).field() == "[scenario].N");
  CHECK(rejection(replace(kMinimal, "t_max = 5\n", "")).field() == "[scenario].t_max");
  CHECK(rejection(replace(kMinimal, "N = 2", "N = 2\nN = 3")).line() == 4);
}

TEST_CASE("keys that do not apply are rejected") {
  CHECK(rejection(replace(kMinimal, "L = 1", "L = 1\n[dynamics]\nK_d = 3")).field() == "[dynamics].K_d");
  CHECK(rejection(replace(kMinimal, "t_max = 5", "t_max = 5\nradius = 2")).field() == "[scenario].radius");
}

TEST_CASE("fixed graph edges and default ring") {
  const std::string fixed = replace(replace(kMinimal, "provider = dynamic-priority", "provider = fixed\nedges = 0>1, 1->0"),
                                    "[guidance]\nepsilon = 1\nL = 1\n", "");
  const auto c = parse_config(fixed).config;
  CHECK(std::get<FixedDigraph>(c.provider).edges == std::vector<std::pair<AgentId, AgentId>>{{0, 1}, {1, 0}});

  const auto ring = parse_config(replace(fixed, "edges = 0>1, 1->0", "")).config;
  CHECK(std::get<FixedDigraph>(ring.provider) == FixedDigraph::ring(2));
  CHECK(rejection(replace(fixed, "0>1", "0>7")).field() == "[graph].edges");
}

TEST_CASE("serialize round trip") {
  std::vector<ScenarioConfig> configs;
  configs.push_back(parse_config(kMinimal).config);

  ScenarioConfig d;
  d.n = 5;
  d.dynamics = DynamicsKind::Double;
  d.provider = FixedDigraph::ring(5);
  d.nadf.kd = 12.5;
  d.nadf.mode = HeavisideMode::AsPrinted;
  d.dt = 0.001;
  d.t_max = 40;
  d.delay = 0.5;
  d.saturation = 1.0;
  d.drift = {pt({0, 1}), pt({1, 1}), pt({-1, 1}), pt({-1, 0}), pt({0, -1})};
  d.init = Circle{2.5};
  d.stop_hold = 0.75;
  configs.push_back(d);

  ScenarioConfig u;
  u.n = 2;
  u.dim = 3;
  u.dynamics = DynamicsKind::Uav;
  u.provider = FixedDigraph::ring(2);
  u.guidance.reference_velocity = pt({10, 0, 0});
  u.uav.k_u = 100;
  u.t_max = 60;
  u.headings = {0.5, -0.5};
  u.init = UniformBox{10, 20, 0.1 + 0.2};
  u.seed = 1234567890123ULL;
  configs.push_back(u);

  ScenarioConfig g;
  g.n = 4;
  g.provider = DynamicPlain{2};
  g.guidance.weights = {1.0, 0.5};
  g.integrator = Integrator::Rk4;
  g.t_max = 12;
  LeaderScript l;
  l.agent = 3;
  l.kind = LeaderScript::Kind::Sinusoidal;
  l.velocity = pt({0.3, 0});
  l.amplitude = 2;
  l.frequency = 0.7;
  g.leader = l;
  configs.push_back(g);

  ScenarioConfig v;
  v.n = 5;
  v.dynamics = DynamicsKind::Ugv;
  v.provider = FixedDigraph::ring(5);
  v.ugv.k2 = 10;
  v.ugv.axle_distance = 0.05;
  v.init = Circle{1.0};
  v.t_max = 60;
  v.dt = 0.001;
  configs.push_back(v);

  for (const auto& c : configs) {
    const std::string text = serialize_config(c);
    const auto back = parse_config(text).config;
    CHECK_MESSAGE(back == c, text);
  }
}

TEST_CASE("sweep spec parsing and expansion") {
  const std::string text = std::string(kMinimal) + "\n[sweep]\naxis = epsilon\nvalues = 2, 0.5, 1\nrepeats = 3\n";
  const auto spec = parse_sweep(text);
  CHECK(spec.axis == SweepAxis::Epsilon);
  CHECK(spec.repeats == 3);
  const auto points = expand_sweep(spec);
  REQUIRE(points.size() == 9);
  CHECK(points[0].value == 0.5);
  CHECK(points[0].seed == 1);
  CHECK(points[2].seed == 3);
  CHECK(points[8].value == 2.0);
  CHECK(std::get<DynamicPriority>(points[8].config.provider).epsilon == 2.0);
  CHECK(points[4].config.seed == 2);
}

TEST_CASE("sweep validation") {
  const std::string base = std::string(kMinimal) + "\n[sweep]\n";
  CHECK_THROWS_AS(parse_sweep(base + "axis = epsilon\nvalues = \n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep(base + "axis = epsilon\nvalues = 1, 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep(base + "axis = epsilon\nvalues = -1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep(base + "axis = color\nvalues = 1\n"), ConfigError);
  CHECK_THROWS_AS(parse_sweep(base + "axis = seed\nvalues = 1, 2\nrepeats = 2\n"), ConfigError);
  CHECK_THROWS_AS(parse_config(base + "axis = epsilon\nvalues = 1\n"), ConfigError);

  const auto seeds = expand_sweep(parse_sweep(base + "axis = seed\nvalues = 7, 3\n"));
  REQUIRE(seeds.size() == 2);
  CHECK(seeds[0].seed == 3);
  CHECK(seeds[1].config.seed == 7);

  const auto ls = expand_sweep(parse_sweep(base + "axis = L\nvalues = 1, 3\n"));
  CHECK(std::get<DynamicPriority>(ls[1].config.provider).L == 3);
}
