#include "rdv/error.hpp"
#include "rdv/geometry.hpp"
#include "support.hpp"

#include <doctest.h>

#include <vector>

using namespace rdv;
using rdv::test::pt;

TEST_CASE("pairwise distances of a 3-4-5 triangle") {
  const std::vector<Point> p{pt({0, 0}), pt({3, 4})};
  const auto d = pairwise_distances(p);
  REQUIRE(d.size() == 2);
  CHECK(d(0, 0) == 0.0);
  CHECK(d(0, 1) == doctest::Approx(5.0));
  CHECK(d(1, 0) == doctest::Approx(5.0));
}

TEST_CASE("single agent has a zero matrix") {
  const std::vector<Point> p{pt({1, 1})};
  const auto d = pairwise_distances(p);
  REQUIRE(d.size() == 1);
  CHECK(d(0, 0) == 0.0);
}

TEST_CASE("one-dimensional distances") {
  const std::vector<Point> p{pt({0}), pt({2}), pt({5})};
  const auto d = pairwise_distances(p);
  const double expected[3][3] = {{0, 2, 5}, {2, 0, 3}, {5, 3, 0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(d(i, j) == expected[i][j]);
  CHECK(d.max_entry() == 5.0);
}

TEST_CASE("dimension mismatch is rejected") {
  const std::vector<Point> p{pt({0, 0}), pt({1, 1, 1})};
  CHECK_THROWS_AS(pairwise_distances(p), InvalidInput);
  CHECK_THROWS_AS(group_diameter(p), InvalidInput);
}

TEST_CASE("group diameter") {
  CHECK(group_diameter(std::vector<Point>{pt({0, 0}), pt({3, 4})}) == doctest::Approx(5.0));
  CHECK(group_diameter(std::vector<Point>{pt({0}), pt({2}), pt({5})}) == 5.0);
  CHECK(group_diameter(std::vector<Point>(7, pt({1.5, -2, 3}))) == 0.0);
  CHECK(group_diameter(std::vector<Point>{pt({4, 4})}) == 0.0);
}

TEST_CASE("centroid") {
  CHECK(centroid(std::vector<Point>{pt({0, 0}), pt({2, 0})}).isApprox(pt({1, 0})));
  CHECK(centroid(std::vector<Point>{pt({0, 0}), pt({2, 0}), pt({1, 3})}).isApprox(pt({1, 1})));
  const Point p = pt({0.25, -7, 2});
  CHECK(centroid(std::vector<Point>{p}) == p);
  CHECK_THROWS_AS(centroid(std::vector<Point>{}), InvalidInput);
}

TEST_CASE("random distance matrices are metric and agree with the diameter") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const int dim = 1 + trial % 3;
    std::vector<Point> p;
    for (int k = 0; k < 12; ++k) p.push_back(test::random_point(rng, dim));
    const auto d = pairwise_distances(p);
    for (std::size_t i = 0; i < p.size(); ++i) {
      CHECK(d(i, i) == 0.0);
      for (std::size_t j = 0; j < p.size(); ++j) {
        CHECK(d(i, j) == d(j, i));
        for (std::size_t k = 0; k < p.size(); ++k) CHECK(d(i, k) <= d(i, j) + d(j, k) + 1e-12);
      }
    }
    CHECK(group_diameter(p) == d.max_entry());
  }
}
