#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sigot/error.hpp"
#include "sigot/metric.hpp"

using namespace sigot;

TEST_SUITE("metric") {

TEST_CASE("toroidal distance examples") {
  CHECK(toroidal_distance({0.125, 0.125}, {0.125, 0.125}) == 0.0);
  CHECK(toroidal_distance({0.0625, 0.5}, {0.8125, 0.5}) == 0.25);
  CHECK(toroidal_distance({0.25, 0.25}, {0.75, 0.75}) == doctest::Approx(std::sqrt(2.0) / 2).epsilon(1e-15));
  CHECK(kTorusDiameter == std::sqrt(2.0) / 2.0);
}

TEST_CASE("matches the nine-image brute force") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    CHECK(toroidal_distance(a, b) ==
          doctest::Approx(oracle::torus_distance(a.x, a.y, b.x, b.y)).epsilon(1e-14));
  }
}

TEST_CASE("symmetry, triangle inequality and translation invariance") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 2000; ++rep) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    const Point c{u(rng), u(rng)};
    CHECK(toroidal_distance(a, b) == toroidal_distance(b, a));
    CHECK(toroidal_distance(a, b) <= toroidal_distance(a, c) + toroidal_distance(c, b) + 1e-15);
    const double ox = u(rng), oy = u(rng);
    const Point as{std::fmod(a.x + ox, 1.0), std::fmod(a.y + oy, 1.0)};
    const Point bs{std::fmod(b.x + ox, 1.0), std::fmod(b.y + oy, 1.0)};
    CHECK(std::abs(toroidal_distance(as, bs) - toroidal_distance(a, b)) <= 1e-15);
  }
}

TEST_CASE("cost matrix entries and diameter bound") {
  DiscreteMeasure one{{{0.3, 0.4}}, {1.0}, {}};
  const CostMatrix same = cost_matrix(one, one, 2);
  CHECK(same.rows() == 1);
  CHECK(same(0, 0) == 0.0);

  DiscreteMeasure two{{{0.1, 0.1}, {0.1, 0.4}}, {0.5, 0.5}, {}};
  const CostMatrix c2 = cost_matrix(two, two, 2);
  CHECK(c2(0, 1) == doctest::Approx(0.09).epsilon(1e-14));
  CHECK(c2(1, 0) == c2(0, 1));

  CHECK_THROWS_AS(cost_matrix(one, one, 0), Error);

  // Every pixel pair on an 8 x 8 grid.
  const std::size_t n = 8;
  DiscreteMeasure all;
  const SignedGridMeasure g(n);
  for (std::size_t k = 0; k < n * n; ++k) {
    all.points.push_back(g.pixel_center(k));
    all.weights.push_back(1.0);
  }
  for (int p = 1; p <= 3; ++p) {
    const CostMatrix c = cost_matrix(all, all, p);
    CHECK(c.max_entry() <= std::pow(kTorusDiameter, p) * (1 + 1e-15));
    CHECK(c.max_entry() == doctest::Approx(std::pow(kTorusDiameter, p)).epsilon(1e-14));
    for (std::size_t i = 0; i < c.rows(); ++i) {
      for (std::size_t j = 0; j < c.cols(); ++j) {
        const Point a = all.points[i], b = all.points[j];
        CHECK(c(i, j) ==
              doctest::Approx(std::pow(oracle::torus_distance(a.x, a.y, b.x, b.y), p)).epsilon(1e-13));
      }
    }
  }
}

TEST_CASE("ground cost powers") {
  CHECK(ground_cost(0.5, 1) == 0.5);
  CHECK(ground_cost(0.5, 2) == 0.25);
  CHECK(ground_cost(0.5, 3) == 0.125);
  CHECK(ground_cost(0.3, 5) == doctest::Approx(std::pow(0.3, 5)).epsilon(1e-15));
}

}  // TEST_SUITE
