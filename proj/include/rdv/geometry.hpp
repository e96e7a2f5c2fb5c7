#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <vector>

namespace rdv {

inline constexpr int kMaxDim = 3;

/// A point or vector in an M-dimensional workspace, M in {1, 2, 3}.
/// Fixed capacity, so no heap traffic in the inner loops.
using Point = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, kMaxDim, 1>;

using AgentId = std::size_t;

Point zero_point(int dim);

/// Symmetric N x N matrix of Euclidean distances with zero diagonal, row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), d_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return d_[i * n_ + j]; }
  double& operator()(std::size_t i, std::size_t j) noexcept { return d_[i * n_ + j]; }
  std::span<const double> row(std::size_t i) const noexcept { return {d_.data() + i * n_, n_}; }
  double max_entry() const noexcept;

  void resize(std::size_t n);

 private:
  std::size_t n_ = 0;
  std::vector<double> d_;
};

DistanceMatrix pairwise_distances(std::span<const Point> positions);

/// Rebuilds `out` in place; lets the engine reuse one allocation per run.
void pairwise_distances(std::span<const Point> positions, DistanceMatrix& out);

/// Largest inter-agent distance; 0 for a single agent.
double group_diameter(std::span<const Point> positions);

Point centroid(std::span<const Point> positions);

/// Throws InvalidInput unless every point has the same dimension in [1, 3].
int common_dimension(std::span<const Point> positions);

}  // namespace rdv
