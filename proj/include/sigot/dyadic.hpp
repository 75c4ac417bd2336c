#pragma once

#include <cstddef>
#include <vector>

#include "sigot/measures.hpp"

namespace sigot {

// Axis-aligned block of pixels [row, row + side) x [col, col + side).
struct DyadicCell {
  std::size_t row = 0;
  std::size_t col = 0;
  std::size_t side = 0;
};

// Quadrant recursion on an n x n grid, n = 2^eta. levels[k - 1] holds the 4^k
// cells of level k (side 2^(eta - k)), ordered row-major by block origin.
struct DyadicPartition {
  std::size_t n = 0;
  int eta = 0;
  int k_star = 0;
  std::vector<std::vector<DyadicCell>> levels;

  const std::vector<DyadicCell>& level(int k) const { return levels.at(k - 1); }
};

inline constexpr double kDyadicRatio = 0.5;

bool is_power_of_two(std::size_t n) noexcept;
// log2(n) for a power of two; throws Errc::invalid_argument otherwise.
int exact_log2(std::size_t n);

// Throws Errc::invalid_argument when n is not a power of two (n >= 2) or
// k_star is outside [1, log2 n].
DyadicPartition build_partition(std::size_t n, int k_star);
DyadicPartition build_partition(std::size_t n);

// Upper bound on W_p^p(mu, nu) for probability measures:
//   diam^p (delta^(p k*) + sum_{k=1..k*} delta^(p (k-1)) sum_Q |mu(Q) - nu(Q)|)
// with diam = sqrt(2)/2 and delta = 1/2.
double multiscale_bound(const SignedGridMeasure& mu, const SignedGridMeasure& nu,
                        int p, const DyadicPartition& partition);

// Per-level sums sum_Q |mu(Q) - nu(Q)|, index k - 1.
std::vector<double> level_discrepancies(const SignedGridMeasure& mu,
                                        const SignedGridMeasure& nu,
                                        const DyadicPartition& partition);

}  // namespace sigot
