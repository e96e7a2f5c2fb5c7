#include "rdv/config_io.hpp"

#include "rdv/csv.hpp"
#include "rdv/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rdv {

namespace {

const std::map<std::string, std::set<std::string>, std::less<>>& known_keys() {
  static const std::map<std::string, std::set<std::string>, std::less<>> keys{
      {"scenario",
       {"N", "dimension", "dynamics", "dt", "t_max", "delta", "seed", "init", "box_width", "box_height", "box_depth",
        "radius", "positions", "headings", "integrator", "stop_hold", "trace_every"}},
      {"graph", {"provider", "edges"}},
      {"guidance", {"epsilon", "L", "weights", "reference_velocity"}},
      {"dynamics",
       {"b", "K_d", "guidance_floor", "heaviside", "K1", "K2", "wheel_radius", "axle_distance", "phi_limit", "mass",
        "gravity", "K_u", "K_lambda", "v_floor", "initial_speed"}},
      {"perturbations",
       {"delay", "saturation", "drift", "leader", "leader_kind", "leader_velocity", "leader_amplitude",
        "leader_frequency"}},
      {"sweep", {"axis", "values", "repeats"}},
  };
  return keys;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == ',' || ch == ' ' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string field_name(std::string_view section, std::string_view key) {
  return "[" + std::string(section) + "]." + std::string(key);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class Document {
 public:
  Document(std::string_view text, bool allow_sweep) {
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto end = std::min(text.find('\n', pos), text.size());
      std::string_view line = text.substr(pos, end - pos);
      pos = end + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') throw ConfigError("", "malformed section header", line_no);
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (!known_keys().contains(section) || (section == "sweep" && !allow_sweep)) {
          throw ConfigError("[" + section + "]", "unknown section", line_no);
        }
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) throw ConfigError("", "expected 'key = value'", line_no);
      const std::string key(trim(line.substr(0, eq)));
      if (section.empty()) throw ConfigError(key, "key outside of any section", line_no);
      const auto field = field_name(section, key);
      if (!known_keys().find(section)->second.contains(key)) throw ConfigError(field, "unknown key", line_no);
      auto [it, inserted] = entries_.try_emplace({section, key}, Entry{std::string(trim(line.substr(eq + 1))), line_no});
      if (!inserted) throw ConfigError(field, "duplicate key", line_no);
    }
  }

  Entry* find(std::string_view section, std::string_view key) {
    const auto it = entries_.find({std::string(section), std::string(key)});
    if (it == entries_.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  int line_of(const std::string& field) const {
    for (const auto& [k, e] : entries_) {
      if (field_name(k.first, k.second) == field) return e.line;
    }
    return 0;
  }

  void reject_unused() const {
    for (const auto& [k, e] : entries_) {
      if (!e.used) throw ConfigError(field_name(k.first, k.second), "does not apply to this scenario", e.line);
    }
  }

 private:
  std::map<std::pair<std::string, std::string>, Entry> entries_;
};

class Reader {
 public:
  Reader(Document& doc, std::vector<std::string>& defaulted) : doc_(doc), defaulted_(defaulted) {}

  bool has(std::string_view section, std::string_view key) { return doc_.find(section, key) != nullptr; }

  double number(std::string_view section, std::string_view key, double fallback) {
    if (const auto* e = doc_.find(section, key)) return to_number(*e, section, key);
    note(section, key, format_short(fallback));
    return fallback;
  }

  std::optional<double> optional_number(std::string_view section, std::string_view key) {
    if (const auto* e = doc_.find(section, key)) return to_number(*e, section, key);
    return std::nullopt;
  }

  double required_number(std::string_view section, std::string_view key) {
    return to_number(required(section, key), section, key);
  }

  std::uint64_t integer(std::string_view section, std::string_view key, std::uint64_t fallback) {
    if (const auto* e = doc_.find(section, key)) return to_integer(*e, section, key);
    note(section, key, std::to_string(fallback));
    return fallback;
  }

  std::uint64_t required_integer(std::string_view section, std::string_view key) {
    return to_integer(required(section, key), section, key);
  }

  std::optional<std::string> word(std::string_view section, std::string_view key) {
    if (const auto* e = doc_.find(section, key)) return e->value;
    return std::nullopt;
  }

  std::string required_word(std::string_view section, std::string_view key) { return required(section, key).value; }

  template <typename Enum>
  Enum choice(std::string_view section, std::string_view key, std::initializer_list<std::pair<const char*, Enum>> options,
              std::optional<Enum> fallback) {
    const Entry* e = fallback ? doc_.find(section, key) : &required(section, key);
    if (!e) {
      for (const auto& [name, value] : options) {
        if (value == *fallback) note(section, key, name);
      }
      return *fallback;
    }
    std::string allowed;
    for (const auto& [name, value] : options) {
      if (e->value == name) return value;
      allowed += (allowed.empty() ? "" : ", ") + std::string(name);
    }
    throw ConfigError(field_name(section, key), "expected one of " + allowed + ", got '" + e->value + "'", e->line);
  }

  std::vector<double> numbers(const Entry& e, std::string_view section, std::string_view key) {
    std::vector<double> out;
    for (const auto& tok : split_list(e.value)) out.push_back(parse_number(tok, e, section, key));
    return out;
  }

  std::vector<Point> points(const Entry& e, std::string_view section, std::string_view key) {
    std::vector<Point> out;
    std::string_view rest = e.value;
    while (!trim(rest).empty()) {
      const auto semi = rest.find(';');
      const auto chunk = rest.substr(0, semi);
      const auto comps = split_list(chunk);
      if (comps.empty() || comps.size() > 3) {
        throw ConfigError(field_name(section, key), "points need 1 to 3 components", e.line);
      }
      Point p(static_cast<Eigen::Index>(comps.size()));
      for (std::size_t k = 0; k < comps.size(); ++k) p[static_cast<Eigen::Index>(k)] = parse_number(comps[k], e, section, key);
      out.push_back(std::move(p));
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    return out;
  }

  Point point(const Entry& e, std::string_view section, std::string_view key) {
    auto pts = points(e, section, key);
    if (pts.size() != 1) throw ConfigError(field_name(section, key), "expected a single point", e.line);
    return pts.front();
  }

  const Entry& required(std::string_view section, std::string_view key) {
    const auto* e = doc_.find(section, key);
    if (!e) throw ConfigError(field_name(section, key), "missing required key");
    return *e;
  }

  Entry* find(std::string_view section, std::string_view key) { return doc_.find(section, key); }

  void note(std::string_view section, std::string_view key, const std::string& value) {
    defaulted_.push_back(field_name(section, key) + " = " + value);
  }

 private:
  static double parse_number(const std::string& tok, const Entry& e, std::string_view section, std::string_view key) {
    try {
      return parse_double(tok);
    } catch (const InvalidInput&) {
      throw ConfigError(field_name(section, key), "expected a number, got '" + tok + "'", e.line);
    }
  }

  static double to_number(const Entry& e, std::string_view section, std::string_view key) {
    return parse_number(e.value, e, section, key);
  }

  static std::uint64_t to_integer(const Entry& e, std::string_view section, std::string_view key) {
    std::uint64_t v = 0;
    const auto* first = e.value.data();
    const auto* last = first + e.value.size();
    const auto res = std::from_chars(first, last, v);
    if (e.value.empty() || res.ec != std::errc{} || res.ptr != last) {
      throw ConfigError(field_name(section, key), "expected a non-negative integer, got '" + e.value + "'", e.line);
    }
    return v;
  }

  Document& doc_;
  std::vector<std::string>& defaulted_;
};

std::vector<std::pair<AgentId, AgentId>> parse_edges(const Entry& e) {
  std::vector<std::pair<AgentId, AgentId>> edges;
  for (auto tok : split_list(e.value)) {
    std::erase(tok, '-');
    const auto gt = tok.find('>');
    auto parse_id = [&](std::string_view s) {
      std::size_t v = 0;
      const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
      if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("[graph].edges", "expected edges like '0>1', got '" + tok + "'", e.line);
      }
      return v;
    };
    if (gt == std::string::npos) throw ConfigError("[graph].edges", "expected edges like '0>1', got '" + tok + "'", e.line);
    edges.emplace_back(parse_id(std::string_view(tok).substr(0, gt)), parse_id(std::string_view(tok).substr(gt + 1)));
  }
  return edges;
}

ScenarioConfig build_config(Document& doc, std::vector<std::string>& defaulted) {
  Reader r(doc, defaulted);
  ScenarioConfig c;

  c.n = static_cast<std::size_t>(r.required_integer("scenario", "N"));
  c.dynamics = r.choice<DynamicsKind>("scenario", "dynamics",
                                      {{"single", DynamicsKind::Single},
                                       {"double", DynamicsKind::Double},
                                       {"ugv", DynamicsKind::Ugv},
                                       {"uav", DynamicsKind::Uav}},
                                      std::nullopt);
  c.dim = static_cast<int>(r.integer("scenario", "dimension", c.dynamics == DynamicsKind::Uav ? 3 : 2));
  c.dt = r.number("scenario", "dt", c.dt);
  c.t_max = r.required_number("scenario", "t_max");
  c.delta = r.number("scenario", "delta", c.delta);
  c.seed = r.integer("scenario", "seed", c.seed);
  c.trace_every = static_cast<std::size_t>(r.integer("scenario", "trace_every", c.trace_every));
  c.stop_hold = r.optional_number("scenario", "stop_hold");

  enum class InitKind { Box, Circle, Explicit };
  const auto init = r.choice<InitKind>(
      "scenario", "init",
      {{"uniform-box", InitKind::Box}, {"circle", InitKind::Circle}, {"explicit", InitKind::Explicit}}, std::nullopt);
  switch (init) {
    case InitKind::Box: {
      UniformBox b;
      b.width = r.number("scenario", "box_width", b.width);
      b.height = r.number("scenario", "box_height", b.height);
      if (c.dim == 3) b.depth = r.number("scenario", "box_depth", b.depth);
      c.init = b;
      break;
    }
    case InitKind::Circle: {
      Circle ci;
      ci.radius = r.number("scenario", "radius", ci.radius);
      c.init = ci;
      break;
    }
    case InitKind::Explicit: {
      const auto& e = r.required("scenario", "positions");
      c.init = ExplicitPositions{r.points(e, "scenario", "positions")};
      break;
    }
  }
  if (const auto* e = r.find("scenario", "headings")) c.headings = r.numbers(*e, "scenario", "headings");
  if (c.dynamics == DynamicsKind::Single) {
    c.integrator = r.choice<Integrator>("scenario", "integrator",
                                        {{"euler", Integrator::Euler}, {"rk4", Integrator::Rk4}}, Integrator::Euler);
  }

  enum class ProviderKind { Priority, Plain, Fixed };
  const auto provider = r.choice<ProviderKind>(
      "graph", "provider",
      {{"dynamic-priority", ProviderKind::Priority}, {"dynamic-plain", ProviderKind::Plain}, {"fixed", ProviderKind::Fixed}},
      std::nullopt);
  switch (provider) {
    case ProviderKind::Priority: {
      DynamicPriority p;
      p.epsilon = r.number("guidance", "epsilon", p.epsilon);
      p.L = static_cast<int>(r.integer("guidance", "L", static_cast<std::uint64_t>(p.L)));
      c.provider = p;
      break;
    }
    case ProviderKind::Plain: {
      DynamicPlain p;
      p.L = static_cast<int>(r.integer("guidance", "L", static_cast<std::uint64_t>(p.L)));
      c.provider = p;
      break;
    }
    case ProviderKind::Fixed: {
      if (const auto* e = r.find("graph", "edges")) {
        c.provider = FixedDigraph{parse_edges(*e)};
      } else {
        r.note("graph", "edges", "ring");
        c.provider = FixedDigraph::ring(c.n);
      }
      break;
    }
  }

  if (const auto* e = r.find("guidance", "weights")) {
    c.guidance.weights = r.numbers(*e, "guidance", "weights");
  } else {
    r.note("guidance", "weights", "1");
  }
  if (const auto* e = r.find("guidance", "reference_velocity")) {
    c.guidance.reference_velocity = r.point(*e, "guidance", "reference_velocity");
  }

  switch (c.dynamics) {
    case DynamicsKind::Single: break;
    case DynamicsKind::Double:
      c.nadf.b = r.number("dynamics", "b", c.nadf.b);
      c.nadf.kd = r.number("dynamics", "K_d", c.nadf.kd);
      c.nadf.guidance_floor = r.number("dynamics", "guidance_floor", c.nadf.guidance_floor);
      c.nadf.mode = r.choice<HeavisideMode>("dynamics", "heaviside",
                                            {{"oppose-only", HeavisideMode::OpposeOnly},
                                             {"as-printed", HeavisideMode::AsPrinted}},
                                            c.nadf.mode);
      break;
    case DynamicsKind::Ugv:
      c.ugv.k1 = r.number("dynamics", "K1", c.ugv.k1);
      c.ugv.k2 = r.number("dynamics", "K2", c.ugv.k2);
      c.ugv.wheel_radius = r.number("dynamics", "wheel_radius", c.ugv.wheel_radius);
      c.ugv.axle_distance = r.number("dynamics", "axle_distance", c.ugv.axle_distance);
      c.ugv.phi_limit = r.number("dynamics", "phi_limit", c.ugv.phi_limit);
      break;
    case DynamicsKind::Uav:
      c.uav.mass = r.number("dynamics", "mass", c.uav.mass);
      c.uav.gravity = r.number("dynamics", "gravity", c.uav.gravity);
      c.uav.k_u = r.number("dynamics", "K_u", c.uav.k_u);
      c.uav.k_lambda = r.number("dynamics", "K_lambda", c.uav.k_lambda);
      c.uav.v_floor = r.number("dynamics", "v_floor", c.uav.v_floor);
      c.uav.initial_speed = r.number("dynamics", "initial_speed", c.uav.initial_speed);
      break;
  }

  c.delay = r.number("perturbations", "delay", c.delay);
  c.saturation = r.optional_number("perturbations", "saturation");
  if (const auto* e = r.find("perturbations", "drift")) c.drift = r.points(*e, "perturbations", "drift");
  if (const auto* e = r.find("perturbations", "leader")) {
    LeaderScript l;
    l.agent = static_cast<AgentId>(r.required_integer("perturbations", "leader"));
    (void)e;
    l.kind = r.choice<LeaderScript::Kind>("perturbations", "leader_kind",
                                          {{"linear", LeaderScript::Kind::Linear},
                                           {"sinusoidal", LeaderScript::Kind::Sinusoidal}},
                                          LeaderScript::Kind::Linear);
    l.velocity = r.point(r.required("perturbations", "leader_velocity"), "perturbations", "leader_velocity");
    if (l.kind == LeaderScript::Kind::Sinusoidal) {
      l.amplitude = r.required_number("perturbations", "leader_amplitude");
      l.frequency = r.required_number("perturbations", "leader_frequency");
    }
    c.leader = l;
  }
  return c;
}

void validate_with_lines(const ScenarioConfig& c, const Document& doc) {
  try {
    validate(c);
  } catch (const ConfigError& e) {
    const int line = doc.line_of(e.field());
    if (line == 0) throw;
    const std::string prefix = e.field() + ": ";
    std::string message = e.what();
    if (message.starts_with(prefix)) message = message.substr(prefix.size());
    throw ConfigError(e.field(), message, line);
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + format_short(v[i]);
  return out;
}

std::string point_text(const Point& p) {
  std::string out;
  for (Eigen::Index k = 0; k < p.size(); ++k) out += (k ? " " : "") + format_short(p[k]);
  return out;
}

std::string points_text(const std::vector<Point>& pts) {
  std::string out;
  for (std::size_t i = 0; i < pts.size(); ++i) out += (i ? "; " : "") + point_text(pts[i]);
  return out;
}

}  // namespace

ParsedConfig parse_config(std::string_view text) {
  Document doc(text, false);
  ParsedConfig out;
  out.config = build_config(doc, out.defaulted);
  doc.reject_unused();
  validate_with_lines(out.config, doc);
  return out;
}

ParsedConfig load_config(const std::filesystem::path& path) { return parse_config(slurp(path)); }

std::string serialize_config(const ScenarioConfig& c) {
  std::ostringstream o;
  o << "[scenario]\n";
  o << "N = " << c.n << '\n';
  o << "dimension = " << c.dim << '\n';
  o << "dynamics = " << to_string(c.dynamics) << '\n';
  o << "dt = " << format_short(c.dt) << '\n';
  o << "t_max = " << format_short(c.t_max) << '\n';
  o << "delta = " << format_short(c.delta) << '\n';
  o << "seed = " << c.seed << '\n';
  o << "trace_every = " << c.trace_every << '\n';
  if (c.stop_hold) o << "stop_hold = " << format_short(*c.stop_hold) << '\n';
  if (const auto* b = std::get_if<UniformBox>(&c.init)) {
    o << "init = uniform-box\nbox_width = " << format_short(b->width) << "\nbox_height = " << format_short(b->height)
      << '\n';
    if (c.dim == 3) o << "box_depth = " << format_short(b->depth) << '\n';
  } else if (const auto* ci = std::get_if<Circle>(&c.init)) {
    o << "init = circle\nradius = " << format_short(ci->radius) << '\n';
  } else {
    o << "init = explicit\npositions = " << points_text(std::get<ExplicitPositions>(c.init).positions) << '\n';
  }
  if (!c.headings.empty()) o << "headings = " << join_numbers(c.headings) << '\n';
  if (c.dynamics == DynamicsKind::Single) {
    o << "integrator = " << (c.integrator == Integrator::Rk4 ? "rk4" : "euler") << '\n';
  }

  o << "\n[graph]\n";
  std::ostringstream guidance;
  if (const auto* p = std::get_if<DynamicPriority>(&c.provider)) {
    o << "provider = dynamic-priority\n";
    guidance << "epsilon = " << format_short(p->epsilon) << "\nL = " << p->L << '\n';
  } else if (const auto* p = std::get_if<DynamicPlain>(&c.provider)) {
    o << "provider = dynamic-plain\n";
    guidance << "L = " << p->L << '\n';
  } else {
    o << "provider = fixed\nedges = ";
    const auto& edges = std::get<FixedDigraph>(c.provider).edges;
    for (std::size_t i = 0; i < edges.size(); ++i) o << (i ? ", " : "") << edges[i].first << '>' << edges[i].second;
    o << '\n';
  }

  o << "\n[guidance]\n" << guidance.str();
  o << "weights = " << join_numbers(c.guidance.weights) << '\n';
  if (c.guidance.reference_velocity) o << "reference_velocity = " << point_text(*c.guidance.reference_velocity) << '\n';

  switch (c.dynamics) {
    case DynamicsKind::Single: break;
    case DynamicsKind::Double:
      o << "\n[dynamics]\nb = " << format_short(c.nadf.b) << "\nK_d = " << format_short(c.nadf.kd)
        << "\nguidance_floor = " << format_short(c.nadf.guidance_floor) << "\nheaviside = "
        << (c.nadf.mode == HeavisideMode::OpposeOnly ? "oppose-only" : "as-printed") << '\n';
      break;
    case DynamicsKind::Ugv:
      o << "\n[dynamics]\nK1 = " << format_short(c.ugv.k1) << "\nK2 = " << format_short(c.ugv.k2)
        << "\nwheel_radius = " << format_short(c.ugv.wheel_radius)
        << "\naxle_distance = " << format_short(c.ugv.axle_distance)
        << "\nphi_limit = " << format_short(c.ugv.phi_limit) << '\n';
      break;
    case DynamicsKind::Uav:
      o << "\n[dynamics]\nmass = " << format_short(c.uav.mass) << "\ngravity = " << format_short(c.uav.gravity)
        << "\nK_u = " << format_short(c.uav.k_u) << "\nK_lambda = " << format_short(c.uav.k_lambda)
        << "\nv_floor = " << format_short(c.uav.v_floor) << "\ninitial_speed = " << format_short(c.uav.initial_speed)
        << '\n';
      break;
  }

  o << "\n[perturbations]\ndelay = " << format_short(c.delay) << '\n';
  if (c.saturation) o << "saturation = " << format_short(*c.saturation) << '\n';
  if (!c.drift.empty()) o << "drift = " << points_text(c.drift) << '\n';
  if (c.leader) {
    const auto& l = *c.leader;
    o << "leader = " << l.agent << "\nleader_kind = " << (l.kind == LeaderScript::Kind::Linear ? "linear" : "sinusoidal")
      << "\nleader_velocity = " << point_text(l.velocity) << '\n';
    if (l.kind == LeaderScript::Kind::Sinusoidal) {
      o << "leader_amplitude = " << format_short(l.amplitude) << "\nleader_frequency = " << format_short(l.frequency)
        << '\n';
    }
  }
  return o.str();
}

const char* to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::Epsilon: return "epsilon";
    case SweepAxis::L: return "L";
    case SweepAxis::Delay: return "delay";
    case SweepAxis::Seed: return "seed";
  }
  return "?";
}

namespace {

ScenarioConfig apply_axis(ScenarioConfig c, SweepAxis axis, double value) {
  auto as_integer = [&](const char* what) {
    if (!(value >= 0.0) || value != std::floor(value) || value > 1e15) {
      throw ConfigError("[sweep].values", std::string(what) + " values must be non-negative integers");
    }
    return static_cast<std::uint64_t>(value);
  };
  switch (axis) {
    case SweepAxis::Epsilon:
      std::get<DynamicPriority>(c.provider).epsilon = value;
      break;
    case SweepAxis::L: {
      const auto L = static_cast<int>(as_integer("L"));
      if (auto* p = std::get_if<DynamicPriority>(&c.provider)) p->L = L;
      if (auto* p = std::get_if<DynamicPlain>(&c.provider)) p->L = L;
      break;
    }
    case SweepAxis::Delay: c.delay = value; break;
    case SweepAxis::Seed: c.seed = as_integer("seed"); break;
  }
  return c;
}

}  // namespace

SweepSpec parse_sweep(std::string_view text) {
  Document doc(text, true);
  std::vector<std::string> defaulted;
  SweepSpec spec;
  spec.base = build_config(doc, defaulted);
  Reader r(doc, defaulted);
  spec.axis = r.choice<SweepAxis>(
      "sweep", "axis",
      {{"epsilon", SweepAxis::Epsilon}, {"L", SweepAxis::L}, {"delay", SweepAxis::Delay}, {"seed", SweepAxis::Seed}},
      std::nullopt);
  const auto& values = r.required("sweep", "values");
  spec.values = r.numbers(values, "sweep", "values");
  spec.repeats = static_cast<std::size_t>(r.integer("sweep", "repeats", 1));
  doc.reject_unused();
  validate_with_lines(spec.base, doc);

  if (spec.values.empty()) throw ConfigError("[sweep].values", "at least one value required", values.line);
  if (spec.repeats < 1) throw ConfigError("[sweep].repeats", "must be >= 1", doc.line_of("[sweep].repeats"));
  if (spec.axis == SweepAxis::Seed && spec.repeats != 1) {
    throw ConfigError("[sweep].repeats", "seed sweeps take their seeds from values; repeats must be 1",
                      doc.line_of("[sweep].repeats"));
  }
  if (spec.axis == SweepAxis::Epsilon && !std::holds_alternative<DynamicPriority>(spec.base.provider)) {
    throw ConfigError("[sweep].axis", "epsilon sweeps need the dynamic-priority provider", doc.line_of("[sweep].axis"));
  }
  if (spec.axis == SweepAxis::L && std::holds_alternative<FixedDigraph>(spec.base.provider)) {
    throw ConfigError("[sweep].axis", "L sweeps need a dynamic provider", doc.line_of("[sweep].axis"));
  }
  auto sorted = spec.values;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw ConfigError("[sweep].values", "duplicate value", values.line);
  }
  for (double v : spec.values) {
    try {
      validate(apply_axis(spec.base, spec.axis, v));
    } catch (const ConfigError& e) {
      throw ConfigError("[sweep].values", "value " + format_short(v) + ": " + e.what(), values.line);
    }
  }
  return spec;
}

SweepSpec load_sweep(const std::filesystem::path& path) { return parse_sweep(slurp(path)); }

std::vector<SweepPoint> expand_sweep(const SweepSpec& spec) {
  auto values = spec.values;
  std::sort(values.begin(), values.end());
  std::vector<SweepPoint> out;
  out.reserve(values.size() * spec.repeats);
  for (double v : values) {
    for (std::size_t k = 0; k < spec.repeats; ++k) {
      SweepPoint p;
      p.value = v;
      p.config = spec.base;
      if (spec.axis != SweepAxis::Seed) p.config.seed = spec.base.seed + k;
      p.config = apply_axis(std::move(p.config), spec.axis, v);
      p.seed = p.config.seed;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace rdv
