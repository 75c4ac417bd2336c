#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sigot/dyadic.hpp"
#include "sigot/error.hpp"
#include "sigot/metric.hpp"
#include "sigot/solver.hpp"

using namespace sigot;

namespace {

// Cell sums via the index shift (i >> (eta - k), j >> (eta - k)).
std::vector<double> reference_levels(const SignedGridMeasure& mu, const SignedGridMeasure& nu,
                                     int k_star) {
  const std::size_t n = mu.n();
  int eta = 0;
  while ((std::size_t{1} << eta) < n) ++eta;
  std::vector<double> out;
  for (int k = 1; k <= k_star; ++k) {
    const std::size_t per_axis = std::size_t{1} << k;
    std::vector<long double> cell(per_axis * per_axis, 0.0L);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        cell[(i >> (eta - k)) * per_axis + (j >> (eta - k))] += mu(i, j) - static_cast<long double>(nu(i, j));
      }
    }
    long double total = 0.0L;
    for (long double c : cell) total += std::fabs(c);
    out.push_back(static_cast<double>(total));
  }
  return out;
}

}  // namespace

TEST_SUITE("dyadic") {

TEST_CASE("partition shapes") {
  const DyadicPartition p2 = build_partition(2, 1);
  REQUIRE(p2.levels.size() == 1);
  CHECK(p2.level(1).size() == 4);
  for (const DyadicCell& c : p2.level(1)) CHECK(c.side == 1);

  const DyadicPartition p8 = build_partition(8, 2);
  CHECK(p8.level(1).size() == 4);
  CHECK(p8.level(1).front().side == 4);
  CHECK(p8.level(2).size() == 16);
  CHECK(p8.level(2).front().side == 2);

  const DyadicPartition p32 = build_partition(32);
  CHECK(p32.k_star == 5);
  CHECK(p32.level(5).size() == 1024);
  for (const DyadicCell& c : p32.level(5)) CHECK(c.side == 1);
}

TEST_CASE("cells cover every pixel once and nest") {
  const std::size_t n = 16;
  const DyadicPartition part = build_partition(n);
  for (int k = 1; k <= part.k_star; ++k) {
    std::vector<int> hits(n * n, 0);
    for (const DyadicCell& c : part.level(k)) {
      for (std::size_t i = c.row; i < c.row + c.side; ++i) {
        for (std::size_t j = c.col; j < c.col + c.side; ++j) ++hits[i * n + j];
      }
      if (k > 1) {
        int parents = 0;
        for (const DyadicCell& q : part.level(k - 1)) {
          if (c.row >= q.row && c.row + c.side <= q.row + q.side && c.col >= q.col &&
              c.col + c.side <= q.col + q.side) {
            ++parents;
          }
        }
        CHECK(parents == 1);
      }
    }
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("cell diameters are about twice delta^k diam") {
  // Quadrant blocks are as wide as 2^-k of the torus, so their diameter is
  // sqrt(2) (2^-k - 1/n) rather than 2^-k sqrt(2)/2.
  const std::size_t n = 32;
  const DyadicPartition part = build_partition(n);
  const SignedGridMeasure g(n);
  for (int k = 1; k <= part.k_star; ++k) {
    const DyadicCell c = part.level(k).front();
    const double diam = toroidal_distance(g.pixel_center(c.row, c.col),
                                          g.pixel_center(c.row + c.side - 1, c.col + c.side - 1));
    const double expected = std::sqrt(2.0) * (std::ldexp(1.0, -k) - 1.0 / n);
    CHECK(diam == doctest::Approx(std::min(expected, kTorusDiameter)).epsilon(1e-14));
  }
}

TEST_CASE("invalid partitions") {
  CHECK_THROWS_AS(build_partition(12), Error);
  CHECK_THROWS_AS(build_partition(1), Error);
  CHECK_THROWS_AS(build_partition(8, 0), Error);
  CHECK_THROWS_AS(build_partition(8, 4), Error);
  CHECK(is_power_of_two(64));
  CHECK_FALSE(is_power_of_two(0));
  CHECK(exact_log2(1024) == 10);
}

TEST_CASE("identical measures leave only the resolution term") {
  std::mt19937_64 rng(3);
  const SignedGridMeasure mu = oracle::random_probability(32, rng);
  const DyadicPartition part = build_partition(32);
  const double b = multiscale_bound(mu, mu, 1, part);
  CHECK(b == (std::sqrt(2.0) / 2) * std::pow(2.0, -5));
  CHECK(b == doctest::Approx(0.02210).epsilon(1e-3));
  for (int p = 2; p <= 3; ++p) {
    CHECK(multiscale_bound(mu, mu, p, part) ==
          std::pow(std::sqrt(2.0) / 2, p) * std::pow(2.0, -p * 5));
  }
}

TEST_CASE("level discrepancies match direct cell sums") {
  std::mt19937_64 rng(4);
  for (int rep = 0; rep < 20; ++rep) {
    const SignedGridMeasure mu = oracle::random_probability(16, rng);
    const SignedGridMeasure nu = oracle::random_sparse_probability(16, 0.3, rng);
    const DyadicPartition part = build_partition(16);
    const auto got = level_discrepancies(mu, nu, part);
    const auto want = reference_levels(mu, nu, part.k_star);
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-12);
  }
}

TEST_CASE("upper bound on random dense pairs") {
  std::mt19937_64 rng(8);
  const DyadicPartition part = build_partition(8);
  for (int rep = 0; rep < 40; ++rep) {
    const SignedGridMeasure mu = oracle::random_probability(8, rng);
    const SignedGridMeasure nu = oracle::random_probability(8, rng);
    for (int p = 1; p <= 2; ++p) {
      const double exact =
          solve_transport(to_support(mu).measure, to_support(nu).measure, p).total_cost_p;
      CHECK(exact <= multiscale_bound(mu, nu, p, part) + 1e-9);
    }
  }
}

TEST_CASE("concentrated mass inside one quadrant can exceed the bound for p = 2") {
  // Level-1 discrepancy is zero, and the finer levels are weighted as if the
  // quadrant had diameter delta * diam.
  const std::size_t n = 32;
  const SignedGridMeasure a = SignedGridMeasure::point_mass(n, 0, 0);
  const SignedGridMeasure b = SignedGridMeasure::point_mass(n, 15, 15);
  const DyadicPartition part = build_partition(n);
  const double exact =
      solve_transport(to_support(a).measure, to_support(b).measure, 2).total_cost_p;
  CHECK(exact == doctest::Approx(2.0 * (15.0 / 32) * (15.0 / 32)));
  CHECK(multiscale_bound(a, b, 2, part) < exact);
  // p = 1 still holds for this pair.
  CHECK(multiscale_bound(a, b, 1, part) >=
        solve_transport(to_support(a).measure, to_support(b).measure, 1).total_cost_p);
}

TEST_CASE("resolution term shrinks with depth") {
  std::mt19937_64 rng(9);
  const SignedGridMeasure mu = oracle::random_probability(16, rng);
  double prev = INFINITY;
  for (int k = 1; k <= 4; ++k) {
    const double res = multiscale_bound(mu, mu, 2, build_partition(16, k));
    CHECK(res <= prev);
    prev = res;
  }
}

TEST_CASE("invalid inputs") {
  const DyadicPartition part = build_partition(4);
  const SignedGridMeasure half = SignedGridMeasure::point_mass(4, 0, 0, 0.5);
  const SignedGridMeasure one = SignedGridMeasure::point_mass(4, 1, 1);
  CHECK_THROWS_AS(multiscale_bound(half, one, 1, part), Error);
  const SignedGridMeasure neg = one + SignedGridMeasure::point_mass(4, 2, 2, -0.5) +
                                SignedGridMeasure::point_mass(4, 3, 3, 0.5);
  CHECK_THROWS_AS(multiscale_bound(neg, one, 1, part), Error);
  const SignedGridMeasure other = SignedGridMeasure::point_mass(8, 1, 1);
  CHECK_THROWS_AS(multiscale_bound(other, other, 1, part), Error);
  CHECK_THROWS_AS(multiscale_bound(one, one, 0, part), Error);
}

}  // TEST_SUITE
