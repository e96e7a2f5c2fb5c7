#include "rdv/neighbors.hpp"

#include "rdv/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rdv {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<AgentId> others(std::size_t n, AgentId self) {
  std::vector<AgentId> ids;
  ids.reserve(n > 0 ? n - 1 : 0);
  for (AgentId j = 0; j < n; ++j) {
    if (j != self) ids.push_back(j);
  }
  return ids;
}

void check_id(std::size_t n, AgentId self) {
  if (self >= n) throw InvalidInput("agent id " + std::to_string(self) + " out of range");
}

struct AscendingKey {
  std::span<const double> row;
  bool operator()(AgentId a, AgentId b) const {
    if (row[a] != row[b]) return row[a] < row[b];
    return a < b;
  }
};

struct PriorityKey {
  std::span<const double> row;
  double epsilon;
  bool operator()(AgentId a, AgentId b) const {
    const bool a_low = row[a] < epsilon;
    const bool b_low = row[b] < epsilon;
    if (a_low != b_low) return b_low;
    if (row[a] != row[b]) return a_low ? row[a] > row[b] : row[a] < row[b];
    return a < b;
  }
};

template <class Key>
std::vector<AgentId> head(std::span<const double> row, AgentId self, int L, Key key) {
  auto ids = others(row.size(), self);
  if (L == 1) {
    // Coincident agents carry no direction information for a single link.
    std::erase_if(ids, [&](AgentId j) { return row[j] == 0.0; });
  }
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(L), ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(k), ids.end(), key);
  ids.resize(k);
  return ids;
}

}  // namespace

FixedDigraph FixedDigraph::ring(std::size_t n) {
  FixedDigraph g;
  for (std::size_t i = 0; i < n; ++i) g.edges.emplace_back(i, (i + 1) % n);
  return g;
}

void validate_provider(const GraphProvider& provider, std::size_t n) {
  std::visit(overloaded{
                 [&](const DynamicPriority& p) {
                   if (!(p.epsilon >= 0.0) || !std::isfinite(p.epsilon)) throw InvalidInput("epsilon must be >= 0");
                   if (p.L < 1) throw InvalidInput("L must be >= 1");
                   if (n < 2) throw InvalidInput("dynamic-priority provider needs at least 2 agents");
                 },
                 [&](const DynamicPlain& p) {
                   if (p.L < 1) throw InvalidInput("L must be >= 1");
                 },
                 [&](const FixedDigraph& g) {
                   for (const auto& [from, to] : g.edges) {
                     if (from >= n || to >= n) {
                       throw InvalidInput("edge " + std::to_string(from) + "->" + std::to_string(to) +
                                          " out of range for " + std::to_string(n) + " agents");
                     }
                     if (from == to) throw InvalidInput("self-loop on agent " + std::to_string(from));
                   }
                 },
             },
             provider);
}

double priority_radius(const GraphProvider& provider) {
  if (const auto* p = std::get_if<DynamicPriority>(&provider)) return p->epsilon;
  return 0.0;
}

std::vector<AgentId> ascending_order(std::span<const double> row, AgentId self) {
  check_id(row.size(), self);
  auto ids = others(row.size(), self);
  std::sort(ids.begin(), ids.end(), AscendingKey{row});
  return ids;
}

std::vector<AgentId> ascending_order(const DistanceMatrix& d, AgentId self) {
  check_id(d.size(), self);
  return ascending_order(d.row(self), self);
}

std::vector<AgentId> priority_order(std::span<const double> row, AgentId self, double epsilon) {
  check_id(row.size(), self);
  if (epsilon < 0.0) throw InvalidInput("epsilon must be >= 0");
  auto ids = others(row.size(), self);
  std::sort(ids.begin(), ids.end(), PriorityKey{row, epsilon});
  return ids;
}

std::vector<AgentId> priority_order(const DistanceMatrix& d, AgentId self, double epsilon) {
  check_id(d.size(), self);
  return priority_order(d.row(self), self, epsilon);
}

std::vector<AgentId> select_neighbors(const GraphProvider& provider, std::span<const double> row, AgentId self) {
  check_id(row.size(), self);
  return std::visit(overloaded{
                        [&](const DynamicPriority& p) { return head(row, self, p.L, PriorityKey{row, p.epsilon}); },
                        [&](const DynamicPlain& p) { return head(row, self, p.L, AscendingKey{row}); },
                        [&](const FixedDigraph& g) {
                          std::vector<AgentId> out;
                          for (const auto& [from, to] : g.edges) {
                            if (from == self) out.push_back(to);
                          }
                          return out;
                        },
                    },
                    provider);
}

std::vector<AgentId> select_neighbors(const GraphProvider& provider, const DistanceMatrix& d, AgentId self) {
  check_id(d.size(), self);
  return select_neighbors(provider, d.row(self), self);
}

}  // namespace rdv
