#pragma once

#include "rdv/config_io.hpp"
#include "rdv/csv.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rdv {

struct RunArtifacts {
  std::filesystem::path trace_csv;
  std::filesystem::path metrics_csv;
  RunSummary summary;
  std::vector<std::filesystem::path> svgs;
};

struct RunCommandOptions {
  bool plots = false;  ///< also render diameter, dxm and trajectory SVGs
};

/// Runs one scenario and writes trace.csv and metrics.csv into `out_dir`.
RunArtifacts run_command(const ScenarioConfig& config, const std::filesystem::path& out_dir,
                         const RunCommandOptions& options = {});

/// One line, key=value pairs separated by spaces.
std::string summary_line(const RunSummary& summary);

struct SweepRow {
  double value = 0.0;
  std::uint64_t seed = 0;
  RunSummary summary;
};

/// Executes every (value, seed) run, each into its own directory under
/// `out_dir/runs`, and writes `out_dir/sweep.csv`. Failed runs still get a row.
std::vector<SweepRow> sweep_command(const SweepSpec& spec, const std::filesystem::path& out_dir, unsigned jobs = 1);

void write_sweep_table(std::ostream& out, SweepAxis axis, const std::vector<SweepRow>& rows);

/// Directory name for one sweep run, e.g. "epsilon_0.5_seed_3".
std::string run_dir_name(SweepAxis axis, double value, std::uint64_t seed);

}  // namespace rdv
