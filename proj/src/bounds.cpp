#include "sigot/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sigot/dyadic.hpp"
#include "sigot/error.hpp"
#include "sigot/metric.hpp"
#include "sigot/noise.hpp"

namespace sigot {

namespace {

const double kSqrtPi = std::sqrt(std::numbers::pi);

struct GridTerms {
  double n;
  double log2n;
};

GridTerms grid_terms(std::size_t n, double sigma) {
  if (n < 2) throw Error(Errc::invalid_argument, "bounds need n >= 2");
  const int eta = exact_log2(n);
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(Errc::invalid_argument, "sigma must be finite and >= 0");
  }
  return {static_cast<double>(n), static_cast<double>(eta)};
}

}  // namespace

double bound_w1_self(std::size_t n, double sigma) {
  const auto [nd, log2n] = grid_terms(n, sigma);
  return (2.0 / kSqrtPi) * sigma * nd * log2n + sigma * nd / (2.0 * kSqrtPi);
}

double bound_wp_self_power(std::size_t n, double sigma, int p) {
  const auto [nd, log2n] = grid_terms(n, sigma);
  if (p < 2) throw Error(Errc::invalid_argument, "self W_p bound needs p >= 2");
  return 4.0 * nd * sigma / kSqrtPi;
}

double bound_wp_self(std::size_t n, double sigma, int p) {
  return std::pow(bound_wp_self_power(n, sigma, p), 1.0 / p);
}

double bound_w1_pair(std::size_t n, double sigma) {
  const auto [nd, log2n] = grid_terms(n, sigma);
  return (4.0 * nd * log2n + nd) * sigma / kSqrtPi + std::numbers::sqrt2 / nd;
}

double bound_wp_pair(double w1_clean, std::size_t n, double sigma, int p) {
  const auto [nd, log2n] = grid_terms(n, sigma);
  if (!(w1_clean >= 0.0)) {
    throw Error(Errc::invalid_argument, "clean W1 must be >= 0");
  }
  if (p < 1) throw Error(Errc::invalid_argument, "exponent p must be >= 1");
  const double inv_p = 1.0 / p;
  const double noise = (4.0 / kSqrtPi) * nd * log2n + (2.0 / kSqrtPi) * nd;
  return std::pow(kTorusDiameter, 1.0 - inv_p) * std::pow(w1_clean, inv_p) +
         kTorusDiameter * std::pow(noise, inv_p) * std::pow(sigma, inv_p);
}

std::vector<BoundReport> evaluate_bounds(std::size_t n, double sigma, int p,
                                         double w1_clean) {
  const int p_self = std::max(p, 2);
  std::vector<BoundReport> out;
  out.push_back({"w1_self", n, sigma, 1, bound_w1_self(n, sigma), {}});
  out.push_back({"wp_self", n, sigma, p_self, bound_wp_self(n, sigma, p_self),
                 {{"pre_jensen", bound_wp_self_power(n, sigma, p_self)}}});
  out.push_back({"w1_pair", n, sigma, 1, bound_w1_pair(n, sigma), {}});
  out.push_back({"wp_pair", n, sigma, p, bound_wp_pair(w1_clean, n, sigma, p),
                 {{"w1_clean", w1_clean}}});
  return out;
}

MassImbalanceReport mass_imbalance_stat(const SignedGridMeasure& mu,
                                        const SignedGridMeasure& nu,
                                        double sigma, std::size_t trials,
                                        std::uint64_t seed, bool zero_sum) {
  require_same_grid(mu, nu);
  if (trials < kMinImbalanceTrials) {
    throw Error(Errc::invalid_argument,
                "mass imbalance needs at least " +
                    std::to_string(kMinImbalanceTrials) + " trials");
  }
  if (!(sigma >= 0.0)) throw Error(Errc::invalid_argument, "sigma must be >= 0");
  MassImbalanceReport report;
  report.trials = trials;
  if (sigma == 0.0) return report;

  const NoiseModel model{mu.n(), sigma, seed, !zero_sum};
  std::vector<double> imbalance(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const SplitPair split =
        mainini_split(add_noise(mu, sample_zero_sum(model, t, 0)),
                      add_noise(nu, sample_zero_sum(model, t, 1)));
    imbalance[t] = split.c_s - split.c_t;
  }
  const double td = static_cast<double>(trials);
  report.mean_imbalance = compensated_sum(imbalance) / td;
  std::vector<double> squares(trials);
  for (std::size_t t = 0; t < trials; ++t) {
    const double d = imbalance[t] - report.mean_imbalance;
    squares[t] = d * d;
  }
  const double sd = std::sqrt(compensated_sum(squares) / (td - 1.0));
  report.statistic = sd / (sigma * static_cast<double>(mu.n()));
  return report;
}

}  // namespace sigot
