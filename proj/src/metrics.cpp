#include "rdv/metrics.hpp"

#include "rdv/error.hpp"

#include <algorithm>
#include <cmath>

namespace rdv {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool shares_inside_agent(const DistanceMatrix& d, AgentId i, AgentId k, double epsilon) {
  for (AgentId j = 0; j < d.size(); ++j) {
    if (j == i || j == k) continue;
    if (d(i, j) < epsilon && d(k, j) < epsilon) return true;
  }
  return false;
}

}  // namespace

std::optional<NearestOutside> dm(std::span<const double> row, AgentId i, double epsilon) {
  if (i >= row.size()) throw InvalidInput("dm: agent id out of range");
  std::optional<NearestOutside> best;
  for (AgentId j = 0; j < row.size(); ++j) {
    if (j == i || !(row[j] > epsilon)) continue;
    if (!best || row[j] < best->distance) best = NearestOutside{row[j], j};
  }
  return best;
}

std::optional<NearestOutside> dm(const DistanceMatrix& d, AgentId i, double epsilon) {
  if (i >= d.size()) throw InvalidInput("dm: agent id out of range");
  return dm(d.row(i), i, epsilon);
}

std::optional<double> dxm(const DistanceMatrix& d, double epsilon) {
  std::optional<double> best;
  for (AgentId i = 0; i < d.size(); ++i) {
    if (auto m = dm(d, i, epsilon); m && (!best || m->distance > *best)) best = m->distance;
  }
  return best;
}

PathStats path_stats(std::span<const double> lengths) {
  if (lengths.empty()) return {};
  double sum = 0.0;
  for (double l : lengths) sum += l;
  const auto [lo, hi] = std::minmax_element(lengths.begin(), lengths.end());
  return {sum / static_cast<double>(lengths.size()), *hi - *lo};
}

std::vector<Point> positions_of(const StepRecord& record) {
  std::vector<Point> out;
  out.reserve(record.agents.size());
  for (const auto& a : record.agents) out.push_back(a.position);
  return out;
}

PathStats path_stats(const SimTrace& trace) {
  if (trace.steps.empty()) throw InvalidInput("path_stats: empty trace");
  const std::size_t n = trace.steps.front().agents.size();
  std::vector<double> lengths(n, 0.0);
  for (std::size_t k = 1; k < trace.steps.size(); ++k) {
    const auto& prev = trace.steps[k - 1].agents;
    const auto& cur = trace.steps[k].agents;
    for (std::size_t i = 0; i < n; ++i) lengths[i] += (cur[i].position - prev[i].position).norm();
  }
  return path_stats(lengths);
}

TcBound tc_bound(int K, double a, double epsilon, double dx0, double c1) {
  if (K < 1) throw InvalidInput("tc_bound: K must be a positive integer");
  if (!(a > 0.0)) throw InvalidInput("tc_bound: rate a must be > 0");
  if (!(dx0 > 0.0)) throw InvalidInput("tc_bound: dx0 must be > 0");
  if (!(epsilon > 0.0)) return {TcBound::Kind::Unbounded, std::numeric_limits<double>::infinity()};
  if (epsilon >= dx0) return {TcBound::Kind::Constant, c1};
  return {TcBound::Kind::Finite, -(static_cast<double>(K) / a) * std::log(epsilon / dx0) + c1};
}

SharingCheck sharing_check(const DistanceMatrix& d, double epsilon) {
  SharingCheck out;
  const std::size_t n = d.size();
  out.dxm = dxm(d, epsilon);

  bool any_pair = false;
  bool all_pairs_share = true;
  for (AgentId i = 0; i < n && all_pairs_share; ++i) {
    const auto m = dm(d, i, epsilon);
    if (!m) continue;
    any_pair = true;
    all_pairs_share = shares_inside_agent(d, i, m->id, epsilon);
  }
  out.pair_hypothesis = any_pair && all_pairs_share;

  bool universal = n >= 3;
  for (AgentId i = 0; i < n && universal; ++i) {
    for (AgentId k = i + 1; k < n && universal; ++k) universal = shares_inside_agent(d, i, k, epsilon);
  }
  out.universal_hypothesis = universal;

  const bool large = out.dxm && *out.dxm >= 2.0 * epsilon;
  out.pair_violation = out.pair_hypothesis && large;
  out.universal_violation = out.universal_hypothesis && large;
  return out;
}

SharingReport prop5_monitor(const SimTrace& trace, double epsilon) {
  SharingReport r;
  DistanceMatrix d;
  for (const auto& rec : trace.steps) {
    const auto pos = positions_of(rec);
    pairwise_distances(pos, d);
    const auto c = sharing_check(d, epsilon);
    ++r.steps;
    r.pair_hypothesis_steps += c.pair_hypothesis;
    r.universal_hypothesis_steps += c.universal_hypothesis;
    r.pair_violations += c.pair_violation;
    r.universal_violations += c.universal_violation;
    if (c.pair_violation || c.universal_violation) r.violation_steps.push_back(rec.step);
  }
  return r;
}

// --- recorder ----------------------------------------------------------------

MetricsRecorder::MetricsRecorder(std::size_t n, double epsilon, double delta, double dt, bool per_agent) {
  s_.n = n;
  s_.epsilon = epsilon;
  s_.delta = delta;
  s_.dt = dt;
  s_.per_agent = per_agent;
  s_.path_length.assign(n, 0.0);
}

void MetricsRecorder::record(std::size_t step, double time, const DistanceMatrix& d, std::span<const Point> positions,
                             std::span<const std::optional<NearestOutside>> nearest, double max_speed, double kinetic,
                             std::span<const Event> events) {
  s_.step.push_back(step);
  s_.time.push_back(time);
  const double diameter = d.max_entry();
  s_.diameter.push_back(diameter);
  s_.max_speed.push_back(max_speed);
  s_.kinetic.push_back(kinetic);

  std::optional<double> largest;
  for (const auto& m : nearest) {
    if (m && (!largest || m->distance > *largest)) largest = m->distance;
  }
  s_.dxm.push_back(largest ? *largest : kNaN);
  if (largest && !(s_.max_dxm >= *largest)) s_.max_dxm = *largest;

  if (s_.per_agent) {
    for (const auto& m : nearest) {
      s_.dm.push_back(m ? m->distance : kNaN);
      s_.dm_id.push_back(m ? m->id : kNone);
    }
  }

  if (!last_positions_.empty()) {
    for (std::size_t i = 0; i < positions.size(); ++i) {
      s_.path_length[i] += (positions[i] - last_positions_[i]).norm();
    }
  }
  last_positions_.assign(positions.begin(), positions.end());

  for (const auto& e : events) {
    switch (e.kind) {
      case Event::Kind::NeighborSwitch: ++s_.neighbor_switches; break;
      case Event::Kind::Saturation: ++s_.saturation_hits; break;
      case Event::Kind::EmptyView: ++s_.empty_views; break;
    }
  }

  if (diameter < s_.delta) {
    if (!below_since_) below_since_ = time;
  } else {
    below_since_.reset();
  }
}

double MetricsRecorder::time_below_delta() const {
  if (!below_since_ || s_.time.empty()) return -1.0;
  return s_.time.back() - *below_since_;
}

std::optional<std::size_t> convergence_index(std::span<const double> diameter, double delta) {
  if (diameter.empty()) return std::nullopt;
  std::size_t k = diameter.size();
  while (k > 0 && diameter[k - 1] < delta) --k;
  if (k == diameter.size()) return std::nullopt;
  return k;
}

MetricsSeries MetricsRecorder::finish() {
  if (const auto k = convergence_index(s_.diameter, s_.delta)) {
    s_.tc_step = s_.step[*k];
    s_.tc = s_.time[*k];
  }
  s_.paths = path_stats(s_.path_length);
  return std::move(s_);
}

// --- checks ------------------------------------------------------------------

MonotoneReport check_dm_monotone(const MetricsSeries& s) {
  if (!s.per_agent) throw InvalidInput("check_dm_monotone: series has no per-agent data");
  MonotoneReport r;
  for (std::size_t k = 0; k + 1 < s.size(); ++k) {
    const double tol = 2.0 * s.dt * s.max_speed[k];
    for (std::size_t i = 0; i < s.n; ++i) {
      const std::size_t a = k * s.n + i, b = (k + 1) * s.n + i;
      if (s.dm_id[a] == kNone || s.dm_id[b] == kNone) continue;
      if (s.dm_id[a] != s.dm_id[b]) {
        ++r.switches;
        continue;
      }
      ++r.checked;
      const double growth = s.dm[b] - s.dm[a];
      if (growth < 0.0) ++r.strict_decreases;
      if (growth > tol) {
        ++r.violations;
        r.worst_excess = std::max(r.worst_excess, growth - tol);
      }
    }
  }
  return r;
}

MonotoneReport check_diameter_decreasing(const MetricsSeries& s) {
  MonotoneReport r;
  for (std::size_t k = 0; k + 1 < s.size() && s.diameter[k] >= s.delta; ++k) {
    ++r.checked;
    const double growth = s.diameter[k + 1] - s.diameter[k];
    if (growth < 0.0) {
      ++r.strict_decreases;
    } else {
      ++r.violations;
      r.worst_excess = std::max(r.worst_excess, growth);
    }
  }
  return r;
}

MonotoneReport check_energy_proxy(const MetricsSeries& s, double exempt_fraction, double rel_tol) {
  MonotoneReport r;
  if (s.size() < 2) return r;
  auto energy = [&](std::size_t k) { return s.diameter[k] * s.diameter[k] + s.kinetic[k]; };
  const double tol = rel_tol * energy(0);
  const auto start = static_cast<std::size_t>(std::ceil(exempt_fraction * static_cast<double>(s.size())));
  for (std::size_t k = start; k + 1 < s.size(); ++k) {
    ++r.checked;
    const double growth = energy(k + 1) - energy(k);
    if (growth < 0.0) ++r.strict_decreases;
    if (growth > tol) {
      ++r.violations;
      r.worst_excess = std::max(r.worst_excess, growth - tol);
    }
  }
  return r;
}

ZoneReport check_zone_retention(const SimTrace& trace, double epsilon, double tol) {
  ZoneReport r;
  if (trace.steps.empty()) return r;
  const std::size_t n = trace.steps.front().agents.size();
  std::vector<char> inside(n * n, 0);
  DistanceMatrix d;
  for (const auto& rec : trace.steps) {
    pairwise_distances(positions_of(rec), d);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        char& flag = inside[i * n + j];
        if (flag) {
          if (!(d(i, j) < epsilon + tol)) {
            ++r.escapes;
            r.worst_excess = std::max(r.worst_excess, d(i, j) - epsilon - tol);
          }
        } else if (d(i, j) < epsilon) {
          flag = 1;
          ++r.entries;
        }
      }
    }
  }
  return r;
}

}  // namespace rdv
