#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sigot/measures.hpp"
#include "sigot/solver.hpp"

namespace sigot {

enum class Metric { L2, W1, W2, W3 };

std::string_view metric_name(Metric m) noexcept;
// Accepts "L2", "W1", "W2", "W3" (case-insensitive).
Metric parse_metric(std::string_view name);
// 0 for L2, p for W_p.
int metric_exponent(Metric m) noexcept;

// Distance between two images under `m`; W_p uses the signed cost.
double evaluate_metric(Metric m, const SignedGridMeasure& a,
                       const SignedGridMeasure& b, double weight_floor = 0.0);

struct ExperimentConfig {
  std::size_t n = 32;
  // Strictly increasing, >= 0. Zero is the noiseless level.
  std::vector<double> sigmas;
  std::size_t trials = 100;
  std::vector<Metric> metrics{Metric::L2, Metric::W1, Metric::W2};
  std::uint64_t seed = 0;
  unsigned workers = 1;
  double weight_floor = 0.0;
};

// Throws Errc::invalid_argument on an empty or unsorted sweep, negative
// sigma, zero trials, no metrics or zero workers.
void validate(const ExperimentConfig& cfg);

// n log-spaced values from lo to hi inclusive.
std::vector<double> log_space(double lo, double hi, std::size_t count);

// One CSV row. Per-trial rows carry trial >= 0; summary rows use trial = -1
// and a suffixed metric name ("W1_mean", "W1_se", ...).
struct ExperimentRecord {
  double sigma = 0.0;
  long trial = 0;
  std::string metric;
  std::string pair;
  double value = 0.0;
  std::optional<double> bound;
};

struct SeriesPoint {
  double sigma = 0.0;
  double mean = 0.0;
  double se = 0.0;
  std::optional<double> bound;
};

struct Series {
  std::string label;
  std::vector<SeriesPoint> points;
};

// Runs body(0..count-1) on `workers` threads. Tasks must write only to their
// own slots; the first exception thrown is rethrown after all threads join.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& body);

// Mean and standard error of the mean (compensated sums; se = 0 for one value).
SeriesPoint summarize(double sigma, const std::vector<double>& values);

// Least-squares slope of log(y) against log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

// Spearman rank correlation with average ranks for ties.
double spearman(const std::vector<double>& a, const std::vector<double>& b);

struct ScalingResult {
  std::vector<ExperimentRecord> records;
  // One series per metric (mean distance); W_p series with p >= 2 are followed
  // by a "<m>^p" series of mean powered distances.
  std::vector<Series> series;
  std::vector<std::pair<Metric, double>> slopes;
};

// Self-distance mu vs mu + eps over the sweep. Slopes are fitted on the upper
// half of the sweep (sigma > 0 only).
ScalingResult exp_scaling(const SignedGridMeasure& mu,
                          const ExperimentConfig& cfg);

struct RatioResult {
  std::vector<ExperimentRecord> records;
  std::vector<Series> series;
  // Metrics whose clean distance is zero, so the ratio is undefined.
  std::vector<Metric> excluded;
};

// metric(A + eps_A, B + eps_B) / metric(A, B), averaged over trials.
RatioResult exp_ratio(const SignedGridMeasure& a, const SignedGridMeasure& b,
                      const ExperimentConfig& cfg);

struct OverlayResult {
  std::vector<ExperimentRecord> records;
  std::vector<Series> series;
  double w1_clean = 0.0;
  // Every mean <= bound + 2 se.
  bool all_within_bounds = true;
};

// Mean W_p^{+-} of the noisy pair for the W metrics in cfg next to the
// two-image bounds (p = 1: w1_clean + bound_w1_pair; p >= 2: bound_wp_pair).
OverlayResult exp_bound_overlay(const SignedGridMeasure& a,
                                const SignedGridMeasure& b,
                                const ExperimentConfig& cfg);

struct DistanceMatrix {
  std::size_t k = 0;
  std::vector<double> entries;  // row-major k x k
  bool symmetric = true;
  bool zero_diagonal = true;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * k + j]; }
  // Entries (i, j) with i < j in row-major order.
  std::vector<double> upper_triangle() const;
};

struct MatrixEntry {
  Metric metric = Metric::L2;
  double sigma = 0.0;
  DistanceMatrix clean;
  DistanceMatrix noisy;
  double rank_correlation = 0.0;
};

struct MatrixResult {
  std::vector<ExperimentRecord> records;
  std::vector<MatrixEntry> entries;  // per (sigma, metric), sweep order
};

// Clean pairwise matrices and, per sigma, matrices of distances averaged over
// trials with independent noise per image. Throws on mixed grid sizes.
MatrixResult exp_matrix(const std::vector<SignedGridMeasure>& images,
                        const ExperimentConfig& cfg);

struct DipSummary {
  Metric metric = Metric::W1;
  double clean_value = 0.0;
  bool dip_detected = false;
  // Sweep point with the largest (clean - mean) / se, when a dip exists.
  double dip_sigma = 0.0;
  double dip_depth_se = 0.0;
};

struct DipResult {
  std::vector<ExperimentRecord> records;
  std::vector<Series> series;
  std::vector<DipSummary> summaries;
};

// Unit point masses at pixels (n/4, n/4) and (3n/4, 3n/4). A dip is a sweep
// point other than the largest sigma whose mean lies more than 2 se below the
// noiseless value.
DipResult exp_dip(const ExperimentConfig& cfg);

enum class TraceDirection { source, target };

// Plan mass leaving the source pixel (i, j) (or arriving at the target pixel)
// drawn on the grid. Throws Errc::invalid_argument when the pixel is not in
// the requested support.
SignedGridMeasure flow_trace(const SignedDistanceResult& result, std::size_t i,
                             std::size_t j, TraceDirection direction);

}  // namespace sigot
