#include "rdv/config_io.hpp"
#include "rdv/error.hpp"
#include "rdv/metrics.hpp"
#include "rdv/plot.hpp"
#include "rdv/sweep.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kRuntimeAbort = 2;

void warn_delay(const rdv::ScenarioConfig& c) {
  if (rdv::delay_was_rounded(c)) {
    std::cerr << "warning: delay " << c.delay << " rounded to " << rdv::delay_steps(c) << " steps of dt=" << c.dt
              << '\n';
  }
}

int cmd_run(const std::string& path, const std::string& out, std::optional<std::uint64_t> seed, bool plots) {
  auto parsed = rdv::load_config(path);
  if (seed) parsed.config.seed = *seed;
  for (const auto& d : parsed.defaulted) std::cout << "default " << d << '\n';
  warn_delay(parsed.config);
  const auto art = rdv::run_command(parsed.config, out, {.plots = plots});
  std::cout << rdv::summary_line(art.summary) << '\n';
  std::cout << "trace " << art.trace_csv.string() << "\nmetrics " << art.metrics_csv.string() << '\n';
  for (const auto& svg : art.svgs) std::cout << "plot " << svg.string() << '\n';
  return art.summary.error.empty() ? kOk : kRuntimeAbort;
}

int cmd_sweep(const std::string& path, const std::string& out, unsigned jobs) {
  const auto spec = rdv::load_sweep(path);
  warn_delay(spec.base);
  const auto rows = rdv::sweep_command(spec, out, jobs);
  std::size_t converged = 0, failed = 0;
  for (const auto& r : rows) {
    converged += r.summary.converged ? 1 : 0;
    failed += r.summary.error.empty() ? 0 : 1;
  }
  std::cout << "runs=" << rows.size() << " converged=" << converged << " failed=" << failed << '\n';
  std::cout << "table " << (std::filesystem::path(out) / "sweep.csv").string() << '\n';
  return failed == 0 ? kOk : kRuntimeAbort;
}

int cmd_plot(const std::string& csv, const std::string& kind_name, const std::string& out) {
  const auto kind = rdv::parse_plot_kind(kind_name);
  if (!kind) {
    std::cerr << "error: unknown plot kind '" << kind_name
              << "' (diameter-vs-time, dxm-vs-time, tc-vs-epsilon, trajectories)\n";
    return kConfigError;
  }
  rdv::emit_plot(csv, *kind, out);
  return kOk;
}

int cmd_bound(int K, double a, double eps_min, double eps_max, double dx0, double c1, int points) {
  if (!(eps_min > 0.0) || !(eps_max >= eps_min) || points < 2) {
    std::cerr << "error: need 0 < eps-min <= eps-max and points >= 2\n";
    return kConfigError;
  }
  std::cout << "epsilon,tc_bound\n";
  const double l0 = std::log(eps_min), l1 = std::log(eps_max);
  for (int i = 0; i < points; ++i) {
    const double eps = i == points - 1 ? eps_max : std::exp(l0 + (l1 - l0) * i / (points - 1));
    const auto b = rdv::tc_bound(K, a, eps, dx0, c1);
    std::cout << rdv::format_double(eps) << ',' << rdv::format_double(b.value) << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-agent rendezvous simulator"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  std::optional<std::uint64_t> seed;
  bool plots = false;
  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("config", config_path, "Scenario file")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_flag("--plots", plots, "Also write SVG plots");

  std::string sweep_path, sweep_out = "out";
  unsigned jobs = 1;
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("spec", sweep_path, "Sweep file")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Output directory");
  sweep->add_option("--jobs", jobs, "Concurrent runs")->check(CLI::PositiveNumber);

  std::string plot_csv, plot_kind, plot_out;
  auto* plot = app.add_subcommand("plot", "Render a CSV as SVG");
  plot->add_option("csv", plot_csv, "metrics.csv, trace.csv or sweep.csv")->required()->check(CLI::ExistingFile);
  plot->add_option("--kind", plot_kind, "diameter-vs-time | dxm-vs-time | tc-vs-epsilon | trajectories")->required();
  plot->add_option("--out", plot_out, "SVG file")->required();

  int K = 1, points = 50;
  double a = 1.0, eps_min = 0.001, eps_max = 10.0, dx0 = 1.0, c1 = 0.0;
  auto* bound = app.add_subcommand("bound", "Print the convergence-time bound versus epsilon as CSV");
  bound->add_option("--K", K)->required();
  bound->add_option("--a", a)->required();
  bound->add_option("--eps-min", eps_min)->required();
  bound->add_option("--eps-max", eps_max)->required();
  bound->add_option("--dx0", dx0)->required();
  bound->add_option("--C1", c1)->required();
  bound->add_option("--points", points, "Samples, log spaced");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (*run) return cmd_run(config_path, out_dir, seed, plots);
    if (*sweep) return cmd_sweep(sweep_path, sweep_out, jobs);
    if (*plot) return cmd_plot(plot_csv, plot_kind, plot_out);
    if (*bound) return cmd_bound(K, a, eps_min, eps_max, dx0, c1, points);
  } catch (const rdv::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const rdv::SchemaError& e) {
    std::cerr << "schema error: " << e.what() << '\n';
    return kConfigError;
  } catch (const rdv::InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeAbort;
  }
  return kOk;
}
