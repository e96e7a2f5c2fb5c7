#include "rdv/csv.hpp"

#include "rdv/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

namespace rdv {

namespace {

constexpr const char* kAxes[] = {"x", "y", "z"};

std::string non_finite(double v) {
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string format_double(double v) {
  if (!std::isfinite(v)) return non_finite(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

std::string format_short(double v) {
  if (!std::isfinite(v)) return non_finite(v);
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::string format_fixed(double v, int decimals) {
  if (!std::isfinite(v)) return non_finite(v);
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  return {buf, res.ptr};
}

double parse_double(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (text == "inf") return std::numeric_limits<double>::infinity();
  if (text == "-inf") return -std::numeric_limits<double>::infinity();
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::vector<std::string> trace_columns(DynamicsKind kind, int dim) {
  std::vector<std::string> cols{"step", "time", "agent_id"};
  for (int k = 0; k < dim; ++k) cols.emplace_back(kAxes[k]);
  switch (kind) {
    case DynamicsKind::Single: break;
    case DynamicsKind::Double:
      for (int k = 0; k < dim; ++k) cols.push_back(std::string("v") + kAxes[k]);
      break;
    case DynamicsKind::Ugv: cols.emplace_back("theta"); break;
    case DynamicsKind::Uav:
      cols.insert(cols.end(), {"v", "gamma", "psi"});
      break;
  }
  for (int k = 0; k < dim; ++k) cols.push_back(std::string("uc_") + kAxes[k]);
  switch (kind) {
    case DynamicsKind::Single:
      for (int k = 0; k < dim; ++k) cols.push_back(std::string("u_") + kAxes[k]);
      break;
    case DynamicsKind::Double:
      for (int k = 0; k < dim; ++k) cols.push_back(std::string("a_") + kAxes[k]);
      break;
    case DynamicsKind::Ugv: cols.insert(cols.end(), {"wheel_rate", "steering"}); break;
    case DynamicsKind::Uav: cols.insert(cols.end(), {"F_T", "F_N", "eta"}); break;
  }
  return cols;
}

void write_trace_header(std::ostream& out, DynamicsKind kind, int dim) {
  const auto cols = trace_columns(kind, dim);
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
}

void write_trace_rows(std::ostream& out, const StepRecord& rec, DynamicsKind kind, int dim) {
  const std::string prefix = std::to_string(rec.step) + ',' + format_double(rec.time) + ',';
  std::string line;
  for (std::size_t i = 0; i < rec.agents.size(); ++i) {
    const auto& a = rec.agents[i];
    line = prefix;
    line += std::to_string(a.id);
    auto put = [&](double v) {
      line += ',';
      line += format_double(v);
    };
    for (int k = 0; k < dim; ++k) put(a.position[k]);
    switch (kind) {
      case DynamicsKind::Single: break;
      case DynamicsKind::Double:
        for (int k = 0; k < dim; ++k) put((*a.velocity)[k]);
        break;
      case DynamicsKind::Ugv: put(*a.heading); break;
      case DynamicsKind::Uav:
        put(a.flight->speed);
        put(a.flight->path_angle);
        put(a.flight->heading);
        break;
    }
    for (int k = 0; k < dim; ++k) put(rec.guidance[i][k]);
    for (Eigen::Index k = 0; k < rec.control[i].size(); ++k) put(rec.control[i][k]);
    line += '\n';
    out << line;
  }
}

void write_trace(std::ostream& out, const SimTrace& trace) {
  write_trace_header(out, trace.dynamics, trace.dim);
  for (const auto& rec : trace.steps) write_trace_rows(out, rec, trace.dynamics, trace.dim);
}

RunSummary summarize(const RunOutput& out) {
  RunSummary s;
  s.tc = out.metrics.tc;
  s.tc_steps = out.metrics.tc_step;
  s.max_dxm = out.metrics.max_dxm;
  s.dl = out.metrics.paths.mean;
  s.path_spread = out.metrics.paths.spread;
  s.converged = out.metrics.converged();
  s.steps = out.steps_run;
  if (out.abort_reason) s.error = *out.abort_reason;
  return s;
}

void write_metrics(std::ostream& out, const MetricsSeries& m, const RunSummary& s) {
  out << "step,time,diameter,dxm,max_speed\n";
  for (std::size_t k = 0; k < m.size(); ++k) {
    out << m.step[k] << ',' << format_double(m.time[k]) << ',' << format_double(m.diameter[k]) << ','
        << format_double(m.dxm[k]) << ',' << format_double(m.max_speed[k]) << '\n';
  }
  out << "# converged=" << (s.converged ? "true" : "false") << '\n';
  out << "# tc=" << (s.tc ? format_double(*s.tc) : "none") << '\n';
  out << "# tc_steps=" << (s.tc_steps ? std::to_string(*s.tc_steps) : "none") << '\n';
  out << "# max_dxm=" << format_double(s.max_dxm) << '\n';
  out << "# dL=" << format_double(s.dl) << '\n';
  out << "# path_spread=" << format_double(s.path_spread) << '\n';
  out << "# neighbor_switches=" << m.neighbor_switches << '\n';
  out << "# saturation_hits=" << m.saturation_hits << '\n';
  out << "# empty_views=" << m.empty_views << '\n';
  if (!s.error.empty()) out << "# aborted=" << s.error << '\n';
}

void write_file_atomic(const std::filesystem::path& path, const std::function<void(std::ostream&)>& writer) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw SchemaError("missing column '" + std::string(name) + "'", 1);
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

CsvTable read_csv(std::istream& in) {
  CsvTable t;
  std::string line;
  std::size_t row = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_fields(line);
    if (!have_header) {
      t.header = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != t.header.size()) {
      throw SchemaError("expected " + std::to_string(t.header.size()) + " fields, got " + std::to_string(fields.size()),
                        row);
    }
    t.rows.push_back(std::move(fields));
    t.row_numbers.push_back(row);
  }
  if (!have_header) throw SchemaError("no header line");
  return t;
}

CsvTable read_csv_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return read_csv(in);
}

}  // namespace rdv
