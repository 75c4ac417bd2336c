#pragma once

#include <cstddef>
#include <cstdint>

#include "sigot/measures.hpp"

namespace sigot {

// Zero-sum Gaussian pixel noise: marginal variance sigma^2 and covariance
// -sigma^2 / (m - 1) between distinct pixels, m = n^2. With `iid` set the
// mean subtraction is skipped and pixels are independent N(0, sigma^2).
struct NoiseModel {
  std::size_t n = 32;
  double sigma = 0.0;
  std::uint64_t seed = 0;
  bool iid = false;
};

// Stateless counter-based generator: every output is a pure function of
// (seed, trial, stream, counter), so draws do not depend on evaluation order.
std::uint64_t counter_bits(std::uint64_t seed, std::uint64_t trial,
                           std::uint64_t stream, std::uint64_t counter) noexcept;

// Uniform on (0, 1).
double counter_uniform(std::uint64_t seed, std::uint64_t trial,
                       std::uint64_t stream, std::uint64_t counter) noexcept;

// Standard normal via Box-Muller on counters (2k, 2k + 1).
double counter_normal(std::uint64_t seed, std::uint64_t trial,
                      std::uint64_t stream, std::uint64_t index) noexcept;

// One noise field. Distinct `stream` values give independent fields for the
// same trial (e.g. one per image). Throws Errc::invalid_argument when
// sigma <= 0 or, for the zero-sum model, n < 2.
SignedGridMeasure sample_zero_sum(const NoiseModel& model, std::uint64_t trial,
                                  std::uint64_t stream = 0);

// Pixel-wise mu + eps.
SignedGridMeasure add_noise(const SignedGridMeasure& mu,
                            const SignedGridMeasure& eps);

}  // namespace sigot
