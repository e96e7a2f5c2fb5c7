#include "rdv/geometry.hpp"

#include "rdv/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rdv {

Point zero_point(int dim) { return Point::Zero(dim); }

double DistanceMatrix::max_entry() const noexcept {
  double best = 0.0;
  for (double v : d_) best = std::max(best, v);
  return best;
}

void DistanceMatrix::resize(std::size_t n) {
  n_ = n;
  d_.assign(n * n, 0.0);
}

int common_dimension(std::span<const Point> positions) {
  if (positions.empty()) throw InvalidInput("empty position list");
  const auto dim = positions.front().size();
  if (dim < 1 || dim > kMaxDim) throw InvalidInput("dimension must be 1, 2 or 3, got " + std::to_string(dim));
  for (std::size_t i = 1; i < positions.size(); ++i) {
    if (positions[i].size() != dim) {
      throw InvalidInput("dimension mismatch at agent " + std::to_string(i) + ": expected " + std::to_string(dim) +
                         ", got " + std::to_string(positions[i].size()));
    }
  }
  return static_cast<int>(dim);
}

void pairwise_distances(std::span<const Point> positions, DistanceMatrix& out) {
  const int dim = common_dimension(positions);
  const std::size_t n = positions.size();
  if (out.size() != n) out.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = 0.0;
    const double* a = positions[i].data();
    for (std::size_t j = i + 1; j < n; ++j) {
      const double* b = positions[j].data();
      double s = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double diff = a[k] - b[k];
        s += diff * diff;
      }
      const double d = std::sqrt(s);
      out(i, j) = d;
      out(j, i) = d;
    }
  }
}

DistanceMatrix pairwise_distances(std::span<const Point> positions) {
  DistanceMatrix d;
  pairwise_distances(positions, d);
  return d;
}

double group_diameter(std::span<const Point> positions) {
  const int dim = common_dimension(positions);
  double best = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      double s = 0.0;
      for (int k = 0; k < dim; ++k) {
        const double diff = positions[i][k] - positions[j][k];
        s += diff * diff;
      }
      best = std::max(best, s);
    }
  }
  return std::sqrt(best);
}

Point centroid(std::span<const Point> positions) {
  const int dim = common_dimension(positions);
  Point c = Point::Zero(dim);
  for (const auto& p : positions) c += p;
  return c / static_cast<double>(positions.size());
}

}  // namespace rdv
