#pragma once

#include <cstddef>
#include <vector>

#include "sigot/measures.hpp"

namespace sigot {

// Diameter of the unit flat torus.
inline constexpr double kTorusDiameter = 0.70710678118654752440;

// Euclidean distance on the unit torus: per axis min(|a - b|, 1 - |a - b|).
double toroidal_distance(const Point& a, const Point& b) noexcept;

// Dense row-major matrix of toroidal_distance(src_i, dst_j)^p.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols, int p,
             std::vector<double> entries);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  int p() const noexcept { return p_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  const std::vector<double>& entries() const noexcept { return entries_; }
  double max_entry() const noexcept;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  int p_ = 1;
  std::vector<double> entries_;
};

// Throws Errc::invalid_argument when p < 1.
CostMatrix cost_matrix(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                       int p);

// d^p for small integer p without going through std::pow.
double ground_cost(double distance, int p) noexcept;

}  // namespace sigot
