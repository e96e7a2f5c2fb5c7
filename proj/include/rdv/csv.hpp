#pragma once

#include "rdv/engine.hpp"
#include "rdv/metrics.hpp"
#include "rdv/scenario.hpp"

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace rdv {

/// Round-trippable decimal text: 17 significant digits, '.' separator,
/// "nan" / "inf" / "-inf" for non-finite values. Independent of the C locale.
std::string format_double(double v);

/// Shortest text that reads back to the same double.
std::string format_short(double v);

/// Fixed-point text with `decimals` digits, locale independent.
std::string format_fixed(double v, int decimals);

double parse_double(std::string_view text);

std::vector<std::string> trace_columns(DynamicsKind kind, int dim);
void write_trace_header(std::ostream& out, DynamicsKind kind, int dim);
void write_trace_rows(std::ostream& out, const StepRecord& record, DynamicsKind kind, int dim);
void write_trace(std::ostream& out, const SimTrace& trace);

/// Per-run outcome shared by the run summary line and sweep rows.
struct RunSummary {
  std::optional<double> tc;
  std::optional<std::size_t> tc_steps;
  double max_dxm = std::numeric_limits<double>::quiet_NaN();
  double dl = 0.0;
  double path_spread = 0.0;
  bool converged = false;
  std::size_t steps = 0;
  std::string error;  ///< empty when the run completed
};

RunSummary summarize(const RunOutput& out);

/// Columns: step,time,diameter,dxm,max_speed; then '#'-prefixed summary lines.
void write_metrics(std::ostream& out, const MetricsSeries& series, const RunSummary& summary);

/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> row_numbers;  ///< source row of each entry in `rows`

  /// Throws SchemaError when the column is missing.
  std::size_t column(std::string_view name) const;
};

/// Reads a comma-separated table with one header line. Blank lines and lines
/// starting with '#' are skipped. Rows with the wrong field count are rejected.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::filesystem::path& path);

}  // namespace rdv
