#include "sigot/noise.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "sigot/error.hpp"

namespace sigot {

namespace {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t trial,
                           std::uint64_t stream, std::uint64_t counter) noexcept {
  std::uint64_t key = mix64(seed);
  key = mix64(key ^ trial);
  key = mix64(key ^ (stream * 0xd1b54a32d192ed03ULL));
  return mix64(key ^ mix64(counter));
}

double counter_uniform(std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t stream, std::uint64_t counter) noexcept {
  const std::uint64_t bits = counter_bits(seed, trial, stream, counter) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double counter_normal(std::uint64_t seed, std::uint64_t trial,
                      std::uint64_t stream, std::uint64_t index) noexcept {
  const double u1 = counter_uniform(seed, trial, stream, 2 * index);
  const double u2 = counter_uniform(seed, trial, stream, 2 * index + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

SignedGridMeasure sample_zero_sum(const NoiseModel& model, std::uint64_t trial,
                                  std::uint64_t stream) {
  if (!(model.sigma > 0.0) || !std::isfinite(model.sigma)) {
    throw Error(Errc::invalid_argument, "noise sigma must be positive");
  }
  if (model.n == 0 || (!model.iid && model.n < 2)) {
    throw Error(Errc::invalid_argument, "zero-sum noise needs n >= 2");
  }
  const std::size_t m = model.n * model.n;
  std::vector<double> values(m);
  if (model.iid) {
    for (std::size_t k = 0; k < m; ++k) {
      values[k] = model.sigma * counter_normal(model.seed, trial, stream, k);
    }
    return SignedGridMeasure(model.n, std::move(values));
  }

  // Subtracting the sample mean of m iid N(0, s^2) gives variance
  // s^2 (m - 1) / m and covariance -s^2 / m, so s = sigma sqrt(m / (m - 1))
  // reproduces the target covariance exactly.
  const double md = static_cast<double>(m);
  const double inflated = model.sigma * std::sqrt(md / (md - 1.0));
  for (std::size_t k = 0; k < m; ++k) {
    values[k] = inflated * counter_normal(model.seed, trial, stream, k);
  }
  // Two passes: the second removes the rounding left by the first.
  for (int pass = 0; pass < 2; ++pass) {
    const double mean = compensated_sum(values) / md;
    for (double& v : values) v -= mean;
  }
  return SignedGridMeasure(model.n, std::move(values));
}

SignedGridMeasure add_noise(const SignedGridMeasure& mu,
                            const SignedGridMeasure& eps) {
  return mu + eps;
}

}  // namespace sigot
