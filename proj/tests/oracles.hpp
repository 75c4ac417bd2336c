#pragma once

// Reference computations that share no code with the library.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include "sigot/measures.hpp"

namespace oracle {

// Torus distance by brute force over the nine periodic images of b.
inline double torus_distance(double ax, double ay, double bx, double by) {
  double best = std::numeric_limits<double>::infinity();
  for (int sx = -1; sx <= 1; ++sx) {
    for (int sy = -1; sy <= 1; ++sy) {
      best = std::min(best, std::hypot(ax - (bx + sx), ay - (by + sy)));
    }
  }
  return best;
}

// Optimal assignment cost by enumerating permutations (k <= 8). For two
// uniform measures on k points each, W_p^p equals this divided by k.
inline double assignment_cost(const std::vector<std::vector<double>>& cost) {
  const std::size_t k = cost.size();
  std::vector<std::size_t> perm(k);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) total += cost[i][perm[i]];
    best = std::min(best, total);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Random non-negative image of unit mass with every pixel positive.
inline sigot::SignedGridMeasure random_probability(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  std::vector<double> v(n * n);
  for (double& x : v) x = u(rng);
  double total = 0.0;
  for (double x : v) total += x;
  for (double& x : v) x /= total;
  return sigot::SignedGridMeasure(n, std::move(v));
}

// Random image with about `density` of pixels nonzero, unit mass.
inline sigot::SignedGridMeasure random_sparse_probability(std::size_t n, double density,
                                                          std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> v(n * n, 0.0);
  double total = 0.0;
  for (double& x : v) {
    if (u(rng) < density) {
      x = 0.1 + u(rng);
      total += x;
    }
  }
  if (total == 0.0) {
    v[0] = 1.0;
    total = 1.0;
  }
  for (double& x : v) x /= total;
  return sigot::SignedGridMeasure(n, std::move(v));
}

// Random signed image with entries in [-1, 1].
inline sigot::SignedGridMeasure random_signed(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n * n);
  for (double& x : v) x = u(rng);
  return sigot::SignedGridMeasure(n, std::move(v));
}

// Long-double reference sum.
inline double exact_sum(const std::vector<double>& v) {
  long double s = 0.0L;
  for (double x : v) s += x;
  return static_cast<double>(s);
}

}  // namespace oracle
