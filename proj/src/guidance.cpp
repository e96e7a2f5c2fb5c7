#include "rdv/guidance.hpp"

#include "rdv/error.hpp"

#include <cmath>
#include <string>

namespace rdv {

double GuidanceParams::weight(std::size_t rank) const {
  if (weights.size() == 1) return weights.front();
  if (rank >= weights.size()) {
    throw InvalidInput("no weight for neighbor rank " + std::to_string(rank) + " (" + std::to_string(weights.size()) +
                       " given)");
  }
  return weights[rank];
}

void validate_guidance(const GuidanceParams& params) {
  if (params.weights.empty()) throw InvalidInput("at least one weight required");
  for (double w : params.weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw InvalidInput("weights must be positive and finite");
  }
  if (params.reference_velocity && !params.reference_velocity->allFinite()) {
    throw InvalidInput("reference velocity must be finite");
  }
}

Point guidance_velocity(const Point& own, std::span<const Point> seen, std::span<const AgentId> neighbors,
                        const GuidanceParams& params) {
  Point uc = params.reference_velocity ? *params.reference_velocity : Point::Zero(own.size());
  if (uc.size() != own.size()) throw InvalidInput("reference velocity dimension mismatch");
  for (std::size_t rank = 0; rank < neighbors.size(); ++rank) {
    const AgentId j = neighbors[rank];
    if (j >= seen.size()) throw InvalidInput("neighbor id " + std::to_string(j) + " out of range");
    if (seen[j].size() != own.size()) throw InvalidInput("dimension mismatch for neighbor " + std::to_string(j));
    uc += params.weight(rank) * (seen[j] - own);
  }
  return uc;
}

}  // namespace rdv
