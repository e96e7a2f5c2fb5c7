#include "rdv/plot.hpp"

#include "rdv/error.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <map>
#include <sstream>

namespace rdv {

namespace {

constexpr double kWidth = 720.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 24.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 56.0;

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> pts;
  bool markers = false;
};

struct Figure {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  bool equal_aspect = false;
  std::vector<Series> series;
};

std::string num(double v) { return format_fixed(v, 2); }

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::vector<double> nice_ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 6.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (step >= raw) break;
  }
  std::vector<double> ticks;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
    ticks.push_back(std::abs(t) < 1e-12 * step ? 0.0 : t);
  }
  return ticks;
}

std::string tick_label(double v) {
  std::ostringstream s;
  s.imbue(std::locale::classic());
  s << v;
  return s.str();
}

std::string render(const Figure& f) {
  double xmin = INFINITY, xmax = -INFINITY, ymin = INFINITY, ymax = -INFINITY;
  for (const auto& s : f.series) {
    for (const auto& [x, y] : s.pts) {
      const double xv = f.log_x ? std::log10(x) : x;
      xmin = std::min(xmin, xv);
      xmax = std::max(xmax, xv);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  }
  auto widen = [](double& lo, double& hi) {
    if (hi - lo < 1e-12) {
      const double pad = std::max(std::abs(lo) * 0.05, 0.5);
      lo -= pad;
      hi += pad;
    } else {
      const double pad = 0.04 * (hi - lo);
      lo -= pad;
      hi += pad;
    }
  };
  widen(xmin, xmax);
  widen(ymin, ymax);
  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  if (f.equal_aspect) {
    const double scale = std::max((xmax - xmin) / pw, (ymax - ymin) / ph);
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    xmin = cx - 0.5 * scale * pw;
    xmax = cx + 0.5 * scale * pw;
    ymin = cy - 0.5 * scale * ph;
    ymax = cy + 0.5 * scale * ph;
  }
  auto sx = [&](double x) { return kLeft + ((f.log_x ? std::log10(x) : x) - xmin) / (xmax - xmin) * pw; };
  auto sx_raw = [&](double xv) { return kLeft + (xv - xmin) / (xmax - xmin) * pw; };
  auto sy = [&](double y) { return kTop + (ymax - y) / (ymax - ymin) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth) << "\" height=\"" << num(kHeight)
    << "\" viewBox=\"0 0 " << num(kWidth) << ' ' << num(kHeight) << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << escape(f.title)
    << "</text>\n";
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  std::vector<double> xticks;
  if (f.log_x) {
    for (double d = std::ceil(xmin); d <= xmax; d += 1.0) xticks.push_back(d);
  } else {
    xticks = nice_ticks(xmin, xmax);
  }
  for (double t : xticks) {
    const double x = sx_raw(t);
    o << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(x) << "\" y2=\""
      << num(kTop + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + ph + 19) << "\" text-anchor=\"middle\">"
      << (f.log_x ? "1e" + tick_label(t) : tick_label(t)) << "</text>\n";
  }
  for (double t : nice_ticks(ymin, ymax)) {
    const double y = sy(t);
    o << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(y)
      << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << tick_label(t)
      << "</text>\n";
  }
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12) << "\" text-anchor=\"middle\">"
    << escape(f.xlabel) << "</text>\n";
  o << "<text x=\"18\" y=\"" << num(kTop + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << num(kTop + ph / 2) << ")\">" << escape(f.ylabel) << "</text>\n";

  for (std::size_t i = 0; i < f.series.size(); ++i) {
    const auto& s = f.series[i];
    const char* color = kPalette[i % std::size(kPalette)];
    o << "<g stroke=\"" << color << "\" fill=\"none\">";
    if (!s.label.empty()) o << "<title>" << escape(s.label) << "</title>";
    o << "\n<polyline stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < s.pts.size(); ++k) {
      o << (k ? " " : "") << num(sx(s.pts[k].first)) << ',' << num(sy(s.pts[k].second));
    }
    o << "\"/>\n";
    if (s.markers) {
      for (const auto& [x, y] : s.pts) {
        o << "<circle cx=\"" << num(sx(x)) << "\" cy=\"" << num(sy(y)) << "\" r=\"3\" fill=\"" << color << "\"/>\n";
      }
    }
    o << "</g>\n";
  }
  o << "</svg>\n";
  return o.str();
}

double cell(const CsvTable& t, std::size_t row, std::size_t col) {
  try {
    return parse_double(t.rows[row][col]);
  } catch (const InvalidInput&) {
    throw SchemaError("column '" + t.header[col] + "': expected a number, got '" + t.rows[row][col] + "'",
                      t.row_numbers[row]);
  }
}

Series column_series(const CsvTable& t, std::string_view xname, std::string_view yname) {
  const auto xc = t.column(xname);
  const auto yc = t.column(yname);
  Series s;
  s.label = std::string(yname);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const double x = cell(t, r, xc);
    const double y = cell(t, r, yc);
    if (std::isfinite(x) && std::isfinite(y)) s.pts.emplace_back(x, y);
  }
  return s;
}

}  // namespace

std::optional<PlotKind> parse_plot_kind(std::string_view name) {
  for (auto k : {PlotKind::DiameterVsTime, PlotKind::DxmVsTime, PlotKind::TcVsEpsilon, PlotKind::Trajectories}) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

const char* to_string(PlotKind kind) {
  switch (kind) {
    case PlotKind::DiameterVsTime: return "diameter-vs-time";
    case PlotKind::DxmVsTime: return "dxm-vs-time";
    case PlotKind::TcVsEpsilon: return "tc-vs-epsilon";
    case PlotKind::Trajectories: return "trajectories";
  }
  return "?";
}

std::string render_plot(const CsvTable& t, PlotKind kind) {
  if (t.rows.empty()) throw SchemaError("no data rows", 2);
  Figure f;
  switch (kind) {
    case PlotKind::DiameterVsTime:
      f.title = "Group diameter";
      f.xlabel = "time";
      f.ylabel = "diameter";
      f.series.push_back(column_series(t, "time", "diameter"));
      break;
    case PlotKind::DxmVsTime:
      f.title = "Largest nearest-outside distance";
      f.xlabel = "time";
      f.ylabel = "dxm";
      f.series.push_back(column_series(t, "time", "dxm"));
      break;
    case PlotKind::TcVsEpsilon: {
      f.title = "Convergence time versus epsilon";
      f.xlabel = "epsilon (log scale)";
      f.ylabel = "mean convergence time";
      f.log_x = true;
      const auto ec = t.column("epsilon");
      const auto tc = t.column("tc");
      std::map<double, std::pair<double, int>> acc;
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const double eps = cell(t, r, ec);
        if (t.rows[r][tc].empty()) continue;
        const double v = cell(t, r, tc);
        if (!(eps > 0.0) || !std::isfinite(v)) continue;
        auto& [sum, count] = acc[eps];
        sum += v;
        ++count;
      }
      Series s;
      s.label = "mean tc";
      s.markers = true;
      for (const auto& [eps, sc] : acc) s.pts.emplace_back(eps, sc.first / sc.second);
      f.series.push_back(std::move(s));
      break;
    }
    case PlotKind::Trajectories: {
      f.title = "Agent trajectories";
      f.xlabel = "x";
      f.ylabel = "y";
      f.equal_aspect = true;
      const auto ic = t.column("agent_id");
      const auto xc = t.column("x");
      const auto yc = t.column("y");
      std::map<long long, Series> by_agent;
      for (std::size_t r = 0; r < t.rows.size(); ++r) {
        const auto id = static_cast<long long>(cell(t, r, ic));
        auto& s = by_agent[id];
        s.label = "agent " + std::to_string(id);
        s.pts.emplace_back(cell(t, r, xc), cell(t, r, yc));
      }
      for (auto& [id, s] : by_agent) f.series.push_back(std::move(s));
      break;
    }
  }
  std::size_t points = 0;
  for (const auto& s : f.series) points += s.pts.size();
  if (points == 0) throw SchemaError("no plottable values", t.row_numbers.front());
  return render(f);
}

void emit_plot(const std::filesystem::path& csv, PlotKind kind, const std::filesystem::path& out) {
  const auto svg = render_plot(read_csv_file(csv), kind);
  if (out.has_parent_path()) std::filesystem::create_directories(out.parent_path());
  write_file_atomic(out, [&](std::ostream& o) { o << svg; });
}

}  // namespace rdv
