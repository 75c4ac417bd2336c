#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sigot/bounds.hpp"
#include "sigot/error.hpp"
#include "sigot/synthetic.hpp"

using namespace sigot;

TEST_SUITE("bounds") {

TEST_CASE("self-distance W1 bound") {
  CHECK(bound_w1_self(32, 0.0) == 0.0);
  CHECK(bound_w1_self(32, 0.01) == doctest::Approx(1.8957).epsilon(1e-4));
  CHECK(bound_w1_self(32, 0.02) == doctest::Approx(2.0 * bound_w1_self(32, 0.01)).epsilon(1e-15));
  CHECK_THROWS_AS(bound_w1_self(12, 0.01), Error);
  CHECK_THROWS_AS(bound_w1_self(1, 0.01), Error);
  CHECK_THROWS_AS(bound_w1_self(32, -0.1), Error);
}

TEST_CASE("self-distance Wp bound") {
  CHECK(bound_wp_self(32, 0.0, 2) == 0.0);
  // sqrt(4 * 32 * 0.01 / sqrt(pi)) = sqrt(0.72216...) = 0.84980...
  const double pre = 4.0 * 32 * 0.01 / std::sqrt(std::numbers::pi);
  CHECK(bound_wp_self_power(32, 0.01, 2) == doctest::Approx(pre).epsilon(1e-15));
  CHECK(bound_wp_self(32, 0.01, 2) == doctest::Approx(0.849802).epsilon(1e-6));
  for (int p = 2; p <= 4; ++p) {
    CHECK(bound_wp_self(32, 0.04, p) / bound_wp_self(32, 0.01, p) ==
          doctest::Approx(std::pow(4.0, 1.0 / p)).epsilon(1e-14));
    CHECK(bound_wp_self(16, 0.03, p) == std::pow(bound_wp_self_power(16, 0.03, p), 1.0 / p));
  }
  CHECK_THROWS_AS(bound_wp_self(32, 0.01, 1), Error);
}

TEST_CASE("two-image W1 bound") {
  CHECK(bound_w1_pair(32, 0.0) == doctest::Approx(0.044194).epsilon(1e-5));
  CHECK(bound_w1_pair(32, 0.01) == doctest::Approx(672 * 0.01 / std::sqrt(std::numbers::pi) +
                                                   std::sqrt(2.0) / 32).epsilon(1e-15));
  CHECK(bound_w1_pair(32, 0.01) == doctest::Approx(3.8355).epsilon(1e-4));
  const double c = std::sqrt(2.0) / 32;
  CHECK((bound_w1_pair(32, 0.03) - c) ==
        doctest::Approx(3.0 * (bound_w1_pair(32, 0.01) - c)).epsilon(1e-13));
}

TEST_CASE("two-image Wp bound") {
  CHECK(bound_wp_pair(0.3, 32, 0.0, 1) == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(bound_wp_pair(0.0, 32, 0.01, 2) == doctest::Approx(1.4093).epsilon(1e-4));
  double prev = -1.0;
  for (double sigma : {0.0, 1e-4, 1e-3, 1e-2, 1e-1}) {
    const double b = bound_wp_pair(0.2, 32, sigma, 3);
    CHECK(b > prev);
    prev = b;
  }
  CHECK(bound_wp_pair(0.3, 32, 0.01, 2) > bound_wp_pair(0.2, 32, 0.01, 2));
  CHECK_THROWS_AS(bound_wp_pair(-0.1, 32, 0.01, 2), Error);
  CHECK_THROWS_AS(bound_wp_pair(0.1, 32, 0.01, 0), Error);
}

TEST_CASE("bounds are non-negative and non-decreasing in sigma") {
  for (std::size_t n : {2u, 8u, 64u}) {
    double a = 0, b = 0, c = 0, d = 0;
    for (int s = 0; s <= 20; ++s) {
      const double sigma = 0.005 * s;
      const double na = bound_w1_self(n, sigma), nb = bound_wp_self(n, sigma, 3),
                   nc = bound_w1_pair(n, sigma), nd = bound_wp_pair(0.1, n, sigma, 2);
      CHECK(na >= a);
      CHECK(nb >= b);
      CHECK(nc >= c);
      CHECK(nd >= d);
      CHECK(std::isfinite(na + nb + nc + nd));
      a = na, b = nb, c = nc, d = nd;
    }
  }
}

TEST_CASE("evaluate_bounds reports all four") {
  const auto reports = evaluate_bounds(32, 0.01, 1, 0.25);
  REQUIRE(reports.size() == 4);
  CHECK(reports[0].name == "w1_self");
  CHECK(reports[1].p == 2);
  CHECK(reports[1].inputs.at("pre_jensen") == bound_wp_self_power(32, 0.01, 2));
  CHECK(reports[3].inputs.at("w1_clean") == 0.25);
  CHECK(reports[3].value == bound_wp_pair(0.25, 32, 0.01, 1));
}

TEST_CASE("mass imbalance statistic") {
  const SignedGridMeasure mu = smooth_blobs(16, 1);
  const SignedGridMeasure nu = smooth_blobs(16, 2);
  CHECK(mass_imbalance_stat(mu, nu, 0.0, 100, 1).statistic == 0.0);
  const MassImbalanceReport iid = mass_imbalance_stat(mu, nu, 0.05, 1000, 7);
  CHECK(std::abs(iid.statistic - std::sqrt(2.0)) <= 0.1 * std::sqrt(2.0));
  const MassImbalanceReport zs = mass_imbalance_stat(mu, nu, 0.05, 100, 7, true);
  CHECK(zs.statistic <= 1e-12);
  CHECK_THROWS_AS(mass_imbalance_stat(mu, nu, 0.05, 99, 7), Error);
}

}  // TEST_SUITE
