#pragma once

#include "rdv/geometry.hpp"

#include <optional>
#include <span>
#include <vector>

namespace rdv {

/// Coupling weights a_ij. One entry means uniform weighting; more entries are
/// indexed by the neighbor's rank in the priority buffer.
struct GuidanceParams {
  std::vector<double> weights{1.0};
  /// Common velocity added to every agent's guidance. Rendezvous then happens
  /// in a frame moving at this velocity; needed by vehicles that cannot hover.
  std::optional<Point> reference_velocity;

  double weight(std::size_t rank) const;
  bool operator==(const GuidanceParams&) const = default;
};

void validate_guidance(const GuidanceParams& params);

/// Single-integrator guidance Uc_i = sum_j a_j (X_{p_j} - X_i).
/// `seen` is indexed by agent id and holds the (possibly delayed) positions
/// agent `self` knows about; its own entry is ignored in favor of `own`.
Point guidance_velocity(const Point& own, std::span<const Point> seen, std::span<const AgentId> neighbors,
                        const GuidanceParams& params);

}  // namespace rdv
