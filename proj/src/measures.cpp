#include "sigot/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigot/error.hpp"

namespace sigot {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid argument";
    case Errc::grid_mismatch: return "grid size mismatch";
    case Errc::degenerate: return "degenerate input";
    case Errc::mass_mismatch: return "mass mismatch";
    case Errc::empty_support: return "empty support";
    case Errc::negative_mass: return "negative mass";
    case Errc::non_finite: return "non-finite value";
    case Errc::parse_error: return "parse error";
    case Errc::io_error: return "i/o error";
  }
  return "unknown error";
}

double compensated_sum(std::span<const double> values) noexcept {
  double sum = 0.0;
  double carry = 0.0;
  for (double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return sum + carry;
}

SignedGridMeasure::SignedGridMeasure(std::size_t n)
    : n_(n), values_(n * n, 0.0) {
  if (n == 0) throw Error(Errc::invalid_argument, "grid side must be positive");
}

SignedGridMeasure::SignedGridMeasure(std::size_t n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  if (n == 0) throw Error(Errc::invalid_argument, "grid side must be positive");
  if (values_.size() != n * n) {
    throw Error(Errc::grid_mismatch,
                "expected " + std::to_string(n * n) + " values, got " +
                    std::to_string(values_.size()));
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(Errc::non_finite, "non-finite pixel value");
  }
}

SignedGridMeasure SignedGridMeasure::point_mass(std::size_t n, std::size_t i,
                                                std::size_t j, double mass) {
  if (i >= n || j >= n) {
    throw Error(Errc::invalid_argument, "pixel outside the grid");
  }
  std::vector<double> values(n * n, 0.0);
  values[i * n + j] = mass;
  return SignedGridMeasure(n, std::move(values));
}

double SignedGridMeasure::total_mass() const { return compensated_sum(values_); }

Point SignedGridMeasure::pixel_center(std::size_t index) const {
  return pixel_center(index / n_, index % n_);
}

Point SignedGridMeasure::pixel_center(std::size_t i, std::size_t j) const {
  const double side = static_cast<double>(n_);
  return {(static_cast<double>(i) + 0.5) / side,
          (static_cast<double>(j) + 0.5) / side};
}

double DiscreteMeasure::total_mass() const { return compensated_sum(weights); }

void require_same_grid(const SignedGridMeasure& a, const SignedGridMeasure& b) {
  if (a.n() != b.n()) {
    throw Error(Errc::grid_mismatch, "grid sides differ: " +
                                         std::to_string(a.n()) + " vs " +
                                         std::to_string(b.n()));
  }
}

std::pair<SignedGridMeasure, SignedGridMeasure> jordan_decompose(
    const SignedGridMeasure& mu) {
  std::vector<double> pos(mu.size());
  std::vector<double> neg(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    pos[k] = std::max(mu[k], 0.0);
    neg[k] = std::max(-mu[k], 0.0);
  }
  return {SignedGridMeasure(mu.n(), std::move(pos)),
          SignedGridMeasure(mu.n(), std::move(neg))};
}

SplitPair mainini_split(const SignedGridMeasure& mu,
                        const SignedGridMeasure& nu) {
  require_same_grid(mu, nu);
  std::vector<double> s(mu.size());
  std::vector<double> t(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    s[k] = std::max(mu[k], 0.0) + std::max(-nu[k], 0.0);
    t[k] = std::max(nu[k], 0.0) + std::max(-mu[k], 0.0);
  }
  SplitPair split{SignedGridMeasure(mu.n(), std::move(s)),
                  SignedGridMeasure(mu.n(), std::move(t)), 0.0, 0.0};
  split.c_s = split.s.total_mass();
  split.c_t = split.t.total_mass();
  return split;
}

bool masses_equal(const SplitPair& split, double tol_rel) noexcept {
  return std::abs(split.c_s - split.c_t) <=
         tol_rel * std::max(split.c_s, split.c_t);
}

SplitPair normalize_pair(const SplitPair& split, double tol_rel) {
  if (!(split.c_s > 0.0) || !(split.c_t > 0.0)) {
    throw Error(Errc::degenerate, "split has non-positive mass (C_S = " +
                                      std::to_string(split.c_s) + ", C_T = " +
                                      std::to_string(split.c_t) + ")");
  }
  if (masses_equal(split, tol_rel)) return split;
  SplitPair out{(1.0 / split.c_s) * split.s, (1.0 / split.c_t) * split.t, 0.0,
                0.0};
  out.c_s = out.s.total_mass();
  out.c_t = out.t.total_mass();
  return out;
}

double l2_distance(const SignedGridMeasure& mu, const SignedGridMeasure& nu) {
  require_same_grid(mu, nu);
  std::vector<double> squares(mu.size());
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double d = mu[k] - nu[k];
    squares[k] = d * d;
  }
  return std::sqrt(compensated_sum(squares));
}

Support to_support(const SignedGridMeasure& mu, double weight_floor) {
  Support out;
  std::vector<double> dropped;
  for (std::size_t k = 0; k < mu.size(); ++k) {
    const double v = mu[k];
    if (v < 0.0) {
      throw Error(Errc::negative_mass,
                  "negative entry at pixel " + std::to_string(k));
    }
    if (v > weight_floor) {
      out.measure.points.push_back(mu.pixel_center(k));
      out.measure.weights.push_back(v);
      out.measure.pixels.push_back(k);
    } else if (v > 0.0) {
      dropped.push_back(v);
    }
  }
  out.dropped_mass = compensated_sum(dropped);
  return out;
}

SignedGridMeasure operator+(const SignedGridMeasure& a,
                            const SignedGridMeasure& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
  return SignedGridMeasure(a.n(), std::move(v));
}

SignedGridMeasure operator-(const SignedGridMeasure& a,
                            const SignedGridMeasure& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
  return SignedGridMeasure(a.n(), std::move(v));
}

SignedGridMeasure operator*(double scale, const SignedGridMeasure& a) {
  std::vector<double> v(a.values().begin(), a.values().end());
  for (double& x : v) x *= scale;
  return SignedGridMeasure(a.n(), std::move(v));
}

SignedGridMeasure normalized(const SignedGridMeasure& mu) {
  const double mass = mu.total_mass();
  if (!(mass > 0.0)) {
    throw Error(Errc::degenerate, "cannot normalize a measure with mass " +
                                      std::to_string(mass));
  }
  return (1.0 / mass) * mu;
}

}  // namespace sigot
