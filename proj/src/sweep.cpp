#include "rdv/sweep.hpp"

#include "rdv/plot.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <ostream>
#include <thread>

namespace rdv {

namespace fs = std::filesystem;

namespace {

std::string optional_text(const std::optional<double>& v) { return v ? format_double(*v) : std::string{}; }

std::string csv_safe(std::string s) {
  std::replace(s.begin(), s.end(), ',', ';');
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

RunArtifacts run_command(const ScenarioConfig& config, const fs::path& out_dir, const RunCommandOptions& options) {
  fs::create_directories(out_dir);
  RunArtifacts art;
  art.trace_csv = out_dir / "trace.csv";
  art.metrics_csv = out_dir / "metrics.csv";

  RunOutput result;
  write_file_atomic(art.trace_csv, [&](std::ostream& out) {
    write_trace_header(out, config.dynamics, config.dim);
    RunOptions opts;
    opts.per_agent_metrics = false;
    opts.observer = [&](const StepRecord& rec) { write_trace_rows(out, rec, config.dynamics, config.dim); };
    result = run(config, opts);
  });
  art.summary = summarize(result);
  write_file_atomic(art.metrics_csv, [&](std::ostream& out) { write_metrics(out, result.metrics, art.summary); });

  if (options.plots) {
    const std::pair<PlotKind, const char*> plots[] = {{PlotKind::DiameterVsTime, "diameter.svg"},
                                                      {PlotKind::DxmVsTime, "dxm.svg"}};
    for (const auto& [kind, name] : plots) {
      if (kind == PlotKind::DxmVsTime && priority_radius(config.provider) <= 0.0) continue;
      emit_plot(art.metrics_csv, kind, out_dir / name);
      art.svgs.push_back(out_dir / name);
    }
    if (config.dim >= 2) {
      emit_plot(art.trace_csv, PlotKind::Trajectories, out_dir / "trajectories.svg");
      art.svgs.push_back(out_dir / "trajectories.svg");
    }
  }
  return art;
}

std::string summary_line(const RunSummary& s) {
  std::string out = "converged=" + std::string(s.converged ? "true" : "false");
  out += " tc=" + (s.tc ? format_short(*s.tc) : std::string("none"));
  out += " tc_steps=" + (s.tc_steps ? std::to_string(*s.tc_steps) : std::string("none"));
  out += " max_dxm=" + format_short(s.max_dxm);
  out += " dL=" + format_short(s.dl);
  out += " path_spread=" + format_short(s.path_spread);
  out += " steps=" + std::to_string(s.steps);
  if (!s.error.empty()) out += " error=\"" + s.error + "\"";
  return out;
}

std::string run_dir_name(SweepAxis axis, double value, std::uint64_t seed) {
  return std::string(to_string(axis)) + "_" + format_short(value) + "_seed_" + std::to_string(seed);
}

void write_sweep_table(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows) {
  out << to_string(axis) << ",seed,tc,tc_steps,max_dxm,dL,path_spread,converged,error\n";
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out << format_double(r.value) << ',' << r.seed << ',' << optional_text(s.tc) << ','
        << (s.tc_steps ? std::to_string(*s.tc_steps) : std::string{}) << ',' << format_double(s.max_dxm) << ','
        << format_double(s.dl) << ',' << format_double(s.path_spread) << ',' << (s.converged ? "true" : "false")
        << ',' << csv_safe(s.error) << '\n';
  }
}

std::vector<SweepRow> sweep_command(const SweepSpec& spec, const fs::path& out_dir, unsigned jobs) {
  const auto points = expand_sweep(spec);
  std::vector<SweepRow> rows(points.size());
  fs::create_directories(out_dir / "runs");

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      const auto& p = points[i];
      rows[i].value = p.value;
      rows[i].seed = p.seed;
      try {
        rows[i].summary = run_command(p.config, out_dir / "runs" / run_dir_name(spec.axis, p.value, p.seed)).summary;
      } catch (const std::exception& e) {
        rows[i].summary = RunSummary{};
        rows[i].summary.error = e.what();
      }
    }
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(std::max<std::size_t>(points.size(), 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }
  write_file_atomic(out_dir / "sweep.csv", [&](std::ostream& out) { write_sweep_table(out, spec.axis, rows); });
  return rows;
}

}  // namespace rdv
