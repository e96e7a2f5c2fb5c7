#pragma once

#include "rdv/geometry.hpp"

#include <filesystem>
#include <initializer_list>
#include <random>
#include <string>

namespace rdv::test {

inline Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index k = 0;
  for (double x : xs) p[k++] = x;
  return p;
}

inline Point random_point(std::mt19937_64& rng, int dim, double scale = 10.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  Point p(dim);
  for (int k = 0; k < dim; ++k) p[k] = u(rng);
  return p;
}

/// Fresh empty directory under the system temp dir, unique per test name.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("rdv_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace rdv::test
