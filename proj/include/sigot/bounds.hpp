#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "sigot/measures.hpp"

namespace sigot {

// Closed-form right-hand sides of the noise-robustness bounds. All take the
// grid side n (a power of two, n >= 2) and the pixel noise level sigma >= 0.

// E W1+-(mu, mu + eps) <= (2/sqrt(pi)) sigma n log2 n + sigma n / (2 sqrt(pi)).
double bound_w1_self(std::size_t n, double sigma);

// E[(Wp+-(mu + eps, mu))^p] <= 4 n sigma / sqrt(pi), for integer p >= 2.
double bound_wp_self_power(std::size_t n, double sigma, int p);
// Jensen: E Wp+-(mu + eps, mu) <= (4 n sigma / sqrt(pi))^(1/p).
double bound_wp_self(std::size_t n, double sigma, int p);

// E[W1+-(noisy pair) - W1+-(clean pair)] <= (4 n log2 n + n) sigma / sqrt(pi)
//                                           + sqrt(2) / n.
double bound_w1_pair(std::size_t n, double sigma);

// E Wp+-(noisy pair) <= D^(1 - 1/p) w1_clean^(1/p)
//                       + D ((4/sqrt(pi)) n log2 n + (2/sqrt(pi)) n)^(1/p)
//                         sigma^(1/p),  D = sqrt(2)/2.
double bound_wp_pair(double w1_clean, std::size_t n, double sigma, int p);

struct BoundReport {
  std::string name;
  std::size_t n = 0;
  double sigma = 0.0;
  int p = 1;
  double value = 0.0;
  std::map<std::string, double> inputs;
};

// The four bounds for one (n, sigma, p); the self W_p and pair W_p entries use
// max(p, 2) and p respectively.
std::vector<BoundReport> evaluate_bounds(std::size_t n, double sigma, int p,
                                         double w1_clean = 0.0);

struct MassImbalanceReport {
  // sd(sum S - sum T) / (sigma n); about sqrt(2) under iid noise.
  double statistic = 0.0;
  double mean_imbalance = 0.0;
  std::size_t trials = 0;
};

inline constexpr std::size_t kMinImbalanceTrials = 100;

// Corrupts both images with independent noise (iid unless zero_sum is set) and
// reports the spread of the split's mass imbalance. Throws when trials < 100.
MassImbalanceReport mass_imbalance_stat(const SignedGridMeasure& mu,
                                        const SignedGridMeasure& nu,
                                        double sigma, std::size_t trials,
                                        std::uint64_t seed,
                                        bool zero_sum = false);

}  // namespace sigot
