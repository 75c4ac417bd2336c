#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace sigot {

// A point on the unit torus [0,1)^2.
struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Real-valued n x n image identified with a signed measure on the unit torus.
// Values are stored row-major; pixel (i, j) is row i, column j and sits at
// ((i + 1/2) / n, (j + 1/2) / n).
class SignedGridMeasure {
 public:
  SignedGridMeasure() = default;

  // All-zero grid of side n (n >= 1).
  explicit SignedGridMeasure(std::size_t n);

  // Takes ownership of n*n row-major values. Throws on size mismatch or
  // non-finite entries.
  SignedGridMeasure(std::size_t n, std::vector<double> values);

  static SignedGridMeasure point_mass(std::size_t n, std::size_t i,
                                      std::size_t j, double mass = 1.0);

  std::size_t n() const noexcept { return n_; }
  std::size_t size() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  double operator()(std::size_t i, std::size_t j) const {
    return values_[i * n_ + j];
  }
  double operator[](std::size_t index) const { return values_[index]; }
  std::span<const double> values() const noexcept { return values_; }

  // Compensated sum of all pixel values.
  double total_mass() const;

  Point pixel_center(std::size_t index) const;
  Point pixel_center(std::size_t i, std::size_t j) const;

  friend bool operator==(const SignedGridMeasure&,
                         const SignedGridMeasure&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

// Sparse support with strictly positive weights. `pixels` optionally records
// the grid index each point came from (empty when built from raw points).
struct DiscreteMeasure {
  std::vector<Point> points;
  std::vector<double> weights;
  std::vector<std::size_t> pixels;

  std::size_t size() const noexcept { return points.size(); }
  bool empty() const noexcept { return points.empty(); }
  double total_mass() const;
};

// Mainini split of a pair of signed measures: S = mu+ + nu-, T = nu+ + mu-.
struct SplitPair {
  SignedGridMeasure s;
  SignedGridMeasure t;
  double c_s = 0.0;
  double c_t = 0.0;
};

struct Support {
  DiscreteMeasure measure;
  double dropped_mass = 0.0;
};

inline constexpr double kDefaultMassTolerance = 1e-9;

// Positive and negative parts, (max(mu, 0), max(-mu, 0)).
std::pair<SignedGridMeasure, SignedGridMeasure> jordan_decompose(
    const SignedGridMeasure& mu);

SplitPair mainini_split(const SignedGridMeasure& mu,
                        const SignedGridMeasure& nu);

// True when |C_S - C_T| <= tol_rel * max(C_S, C_T).
bool masses_equal(const SplitPair& split,
                  double tol_rel = kDefaultMassTolerance) noexcept;

// Returns the split unchanged when its masses already agree, otherwise
// (S / C_S, T / C_T). Throws Errc::degenerate if either mass is <= 0.
SplitPair normalize_pair(const SplitPair& split,
                         double tol_rel = kDefaultMassTolerance);

double l2_distance(const SignedGridMeasure& mu, const SignedGridMeasure& nu);

// Pixels with value > weight_floor as a sparse measure. Throws
// Errc::negative_mass if any entry is negative.
Support to_support(const SignedGridMeasure& mu, double weight_floor = 0.0);

// Pixel-wise arithmetic; all throw Errc::grid_mismatch on differing sides.
SignedGridMeasure operator+(const SignedGridMeasure& a,
                            const SignedGridMeasure& b);
SignedGridMeasure operator-(const SignedGridMeasure& a,
                            const SignedGridMeasure& b);
SignedGridMeasure operator*(double scale, const SignedGridMeasure& a);

// Rescale to unit mass. Throws Errc::degenerate if the mass is not positive.
SignedGridMeasure normalized(const SignedGridMeasure& mu);

void require_same_grid(const SignedGridMeasure& a, const SignedGridMeasure& b);

// Neumaier-compensated summation.
double compensated_sum(std::span<const double> values) noexcept;

}  // namespace sigot
