#include <doctest.h>

#include <cmath>
#include <numbers>
#include <thread>

#include "oracles.hpp"
#include "sigot/error.hpp"
#include "sigot/noise.hpp"

using namespace sigot;

TEST_SUITE("noise") {

TEST_CASE("every draw sums to zero") {
  for (std::size_t n : {2u, 3u, 8u, 16u, 32u}) {
    for (double sigma : {1e-4, 0.01, 1.0}) {
      const NoiseModel model{n, sigma, 123, false};
      for (std::uint64_t t = 0; t < 50; ++t) {
        const SignedGridMeasure eps = sample_zero_sum(model, t);
        std::vector<double> v(eps.values().begin(), eps.values().end());
        CHECK(std::abs(oracle::exact_sum(v)) <= 1e-12 * static_cast<double>(n) * sigma);
      }
    }
  }
}

TEST_CASE("marginal variance and covariance match the zero-sum model") {
  const std::size_t n = 8;
  const std::size_t m = n * n;
  const double sigma = 0.5;
  const NoiseModel model{n, sigma, 2024, false};
  const int draws = 20000;
  std::vector<double> sum_sq(m, 0.0);
  std::vector<double> prod;
  prod.reserve(draws);
  for (int t = 0; t < draws; ++t) {
    const SignedGridMeasure eps = sample_zero_sum(model, static_cast<std::uint64_t>(t));
    for (std::size_t k = 0; k < m; ++k) sum_sq[k] += eps[k] * eps[k];
    prod.push_back(eps[3] * eps[40]);
  }
  const double var = sigma * sigma;
  // Relative sd of a variance estimate is sqrt(2 / draws) = 1%.
  for (std::size_t k = 0; k < m; ++k) CHECK(std::abs(sum_sq[k] / draws / var - 1.0) <= 0.05);
  double mean = 0.0;
  for (double x : prod) mean += x;
  mean /= draws;
  double ss = 0.0;
  for (double x : prod) ss += (x - mean) * (x - mean);
  const double se = std::sqrt(ss / (draws - 1) / draws);
  CHECK(std::abs(mean - (-var / static_cast<double>(m - 1))) <= 5.0 * se);
}

TEST_CASE("expected positive mass of the noise") {
  const std::size_t n = 16;
  const double sigma = 0.02;
  const NoiseModel model{n, sigma, 5, false};
  const int draws = 10000;
  double total = 0.0;
  for (int t = 0; t < draws; ++t) {
    const auto [pos, neg] = jordan_decompose(sample_zero_sum(model, static_cast<std::uint64_t>(t)));
    total += pos.total_mass();
  }
  const double nd = static_cast<double>(n);
  const double expected =
      nd * nd / 2.0 * std::sqrt(2.0 / std::numbers::pi) * sigma * std::sqrt(1.0 - 1.0 / (nd * nd));
  CHECK(std::abs(total / draws - expected) <= 0.03 * expected);
}

TEST_CASE("draws are reproducible and order independent") {
  const NoiseModel model{8, 0.1, 77, false};
  const SignedGridMeasure a = sample_zero_sum(model, 3, 1);
  const SignedGridMeasure b = sample_zero_sum(model, 3, 1);
  CHECK(a == b);
  CHECK_FALSE(a == sample_zero_sum(model, 3, 0));
  CHECK_FALSE(a == sample_zero_sum(model, 4, 1));
  CHECK_FALSE(a == sample_zero_sum({8, 0.1, 78, false}, 3, 1));

  std::vector<SignedGridMeasure> threaded(6);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threaded.size(); ++t) {
    pool.emplace_back([&, t] { threaded[t] = sample_zero_sum(model, 5 - t, 0); });
  }
  for (auto& th : pool) th.join();
  for (std::size_t t = 0; t < threaded.size(); ++t) {
    CHECK(threaded[t] == sample_zero_sum(model, 5 - t, 0));
  }
}

TEST_CASE("noise at different sigma shares the same normals") {
  const SignedGridMeasure small = sample_zero_sum({8, 0.01, 9, false}, 2);
  const SignedGridMeasure large = sample_zero_sum({8, 0.04, 9, false}, 2);
  for (std::size_t k = 0; k < small.size(); ++k) {
    CHECK(large[k] == doctest::Approx(4.0 * small[k]).epsilon(1e-12));
  }
}

TEST_CASE("iid variant skips the mean subtraction") {
  const NoiseModel model{8, 0.3, 4, true};
  double total = 0.0;
  double ss = 0.0;
  const int draws = 4000;
  for (int t = 0; t < draws; ++t) {
    const SignedGridMeasure eps = sample_zero_sum(model, static_cast<std::uint64_t>(t));
    const double s = eps.total_mass();
    total += s;
    ss += s * s;
  }
  // Sum of 64 iid N(0, 0.09): variance 5.76.
  CHECK(std::abs(ss / draws - 5.76) <= 0.1 * 5.76);
  CHECK(std::abs(total / draws) <= 5.0 * std::sqrt(5.76 / draws));
}

TEST_CASE("uniform counters stay inside (0, 1)") {
  for (std::uint64_t c = 0; c < 100000; ++c) {
    const double u = counter_uniform(1, 2, 3, c);
    CHECK((u > 0.0 && u < 1.0));
  }
}

TEST_CASE("invalid models") {
  CHECK_THROWS_AS(sample_zero_sum({8, 0.0, 0, false}, 0), Error);
  CHECK_THROWS_AS(sample_zero_sum({8, -1.0, 0, false}, 0), Error);
  CHECK_THROWS_AS(sample_zero_sum({1, 0.1, 0, false}, 0), Error);
  CHECK_NOTHROW(sample_zero_sum({1, 0.1, 0, true}, 0));
}

TEST_CASE("add_noise") {
  std::mt19937_64 rng(2);
  const SignedGridMeasure mu = oracle::random_probability(16, rng);
  CHECK(add_noise(mu, SignedGridMeasure(16)) == mu);
  const SignedGridMeasure eps = sample_zero_sum({16, 0.05, 1, false}, 0);
  const SignedGridMeasure noisy = add_noise(mu, eps);
  CHECK(std::abs(noisy.total_mass() - 1.0) <= 1e-12);
  const SignedGridMeasure back = noisy - eps;
  for (std::size_t k = 0; k < mu.size(); ++k) CHECK(std::abs(back[k] - mu[k]) <= 1e-15);
  CHECK_THROWS_AS(add_noise(mu, SignedGridMeasure(8)), Error);
}

}  // TEST_SUITE
