#pragma once

#include "rdv/geometry.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace rdv {

/// Modified protocol: agents closer than `epsilon` are demoted to the back of the buffer.
struct DynamicPriority {
  double epsilon = 1.0;
  int L = 1;
  bool operator==(const DynamicPriority&) const = default;
};

/// Conventional L-nearest-neighbor protocol.
struct DynamicPlain {
  int L = 1;
  bool operator==(const DynamicPlain&) const = default;
};

/// Static directed communication graph; an edge (i, j) means i listens to j.
struct FixedDigraph {
  std::vector<std::pair<AgentId, AgentId>> edges;
  bool operator==(const FixedDigraph&) const = default;

  /// Directed ring i -> i+1 (mod n).
  static FixedDigraph ring(std::size_t n);
};

using GraphProvider = std::variant<DynamicPriority, DynamicPlain, FixedDigraph>;

/// Throws InvalidInput when the provider cannot serve `n` agents.
void validate_provider(const GraphProvider& provider, std::size_t n);

/// Radius of the priority zone; 0 for providers without one.
double priority_radius(const GraphProvider& provider);

/// The N-1 other agents sorted by distance from `self` (ties: smaller id first).
/// `row` holds the distances from `self` as seen by `self`.
std::vector<AgentId> ascending_order(std::span<const double> row, AgentId self);
std::vector<AgentId> ascending_order(const DistanceMatrix& d, AgentId self);

/// Priority buffer: agents at distance >= epsilon ascending, then agents inside
/// the zone (distance < epsilon) in descending distance.
std::vector<AgentId> priority_order(std::span<const double> row, AgentId self, double epsilon);
std::vector<AgentId> priority_order(const DistanceMatrix& d, AgentId self, double epsilon);

/// Neighbors `self` uses this step, highest priority first. Dynamic providers
/// with L = 1 never return a coincident agent. A fixed-graph node without
/// out-edges gets an empty list.
std::vector<AgentId> select_neighbors(const GraphProvider& provider, std::span<const double> row, AgentId self);
std::vector<AgentId> select_neighbors(const GraphProvider& provider, const DistanceMatrix& d, AgentId self);

/// Per-agent ordered neighbor lists for one synchronous round.
using NeighborView = std::vector<std::vector<AgentId>>;

}  // namespace rdv
