#include "rdv/csv.hpp"
#include "rdv/engine.hpp"
#include "rdv/error.hpp"
#include "support.hpp"

#include <doctest.h>

#include <clocale>
#include <cmath>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

using namespace rdv;
using rdv::test::pt;

TEST_CASE("number formatting round-trips") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(2.0) == "2");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
  CHECK(format_double(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(format_short(0.1) == "0.1");
  CHECK(format_fixed(1.005, 2).size() == 4);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int k = 0; k < 1000; ++k) {
    const double v = u(rng) * std::pow(10.0, k % 40 - 20);
    CHECK(parse_double(format_double(v)) == v);
    CHECK(parse_double(format_short(v)) == v);
  }
  CHECK(std::isnan(parse_double("nan")));
  CHECK(parse_double(" 2.5 ") == 2.5);
  CHECK_THROWS_AS(parse_double("2.5x"), InvalidInput);
  CHECK_THROWS_AS(parse_double(""), InvalidInput);
}

TEST_CASE("formatting ignores the C locale") {
  if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") != nullptr) {
    CHECK(format_double(1.5) == "1.5");
    CHECK(format_fixed(1.5, 2) == "1.50");
    std::setlocale(LC_NUMERIC, "C");
  }
}

TEST_CASE("trace columns per dynamics kind") {
  CHECK(trace_columns(DynamicsKind::Single, 2) ==
        std::vector<std::string>{"step", "time", "agent_id", "x", "y", "uc_x", "uc_y", "u_x", "u_y"});
  const auto uav = trace_columns(DynamicsKind::Uav, 3);
  CHECK(std::find(uav.begin(), uav.end(), "psi") != uav.end());
  CHECK(uav.back() == "eta");
  const auto ugv = trace_columns(DynamicsKind::Ugv, 2);
  CHECK(std::find(ugv.begin(), ugv.end(), "theta") != ugv.end());
}

TEST_CASE("two-agent trace has two rows per step and parses back") {
  ScenarioConfig c;
  c.n = 2;
  c.provider = DynamicPriority{1.0, 1};
  c.dt = 0.01;
  c.t_max = 0.5;
  c.init = ExplicitPositions{{pt({0, 0}), pt({2, 0})}};
  const auto traced = run_traced(c);
  std::stringstream ss;
  write_trace(ss, traced.trace);
  const auto table = read_csv(ss);
  CHECK(table.rows.size() == 2 * traced.trace.steps.size());
  const auto x = table.column("x");
  CHECK(parse_double(table.rows[2][x]) == traced.trace.steps[1].agents[0].position[0]);
  CHECK_THROWS_AS(table.column("nope"), SchemaError);

  std::stringstream ms;
  write_metrics(ms, traced.output.metrics, summarize(traced.output));
  const std::string text = ms.str();
  CHECK(text.starts_with("step,time,diameter,dxm,max_speed\n"));
  CHECK(text.find("# converged") != std::string::npos);
  std::istringstream back(text);
  CHECK(read_csv(back).rows.size() == traced.output.metrics.size());
}

TEST_CASE("csv reader rejects malformed input") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_csv(empty), SchemaError);
  std::istringstream ragged("a,b\n1,2\n3\n");
  try {
    read_csv(ragged);
    FAIL("expected SchemaError");
  } catch (const SchemaError& e) {
    CHECK(e.row() == 3);
  }
  std::istringstream comments("# note\na,b\n\n1,2\n");
  const auto t = read_csv(comments);
  CHECK(t.rows.size() == 1);
  CHECK(t.row_numbers[0] == 4);
}

TEST_CASE("atomic writes leave no temporary behind") {
  const auto dir = test::scratch_dir("atomic");
  write_file_atomic(dir / "out.txt", [](std::ostream& o) { o << "hello\n"; });
  std::ifstream in(dir / "out.txt");
  std::string line;
  std::getline(in, line);
  CHECK(line == "hello");
  CHECK(!std::filesystem::exists(dir / "out.txt.tmp"));
  CHECK_THROWS(write_file_atomic(dir / "missing" / "x.txt", [](std::ostream& o) { o << "x"; }));
}
