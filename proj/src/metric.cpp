#include "sigot/metric.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sigot/error.hpp"

namespace sigot {

namespace {

double wrapped_gap(double a, double b) noexcept {
  const double gap = std::abs(a - b);
  return std::min(gap, 1.0 - gap);
}

}  // namespace

double toroidal_distance(const Point& a, const Point& b) noexcept {
  return std::hypot(wrapped_gap(a.x, b.x), wrapped_gap(a.y, b.y));
}

double ground_cost(double distance, int p) noexcept {
  switch (p) {
    case 1: return distance;
    case 2: return distance * distance;
    case 3: return distance * distance * distance;
    default: return std::pow(distance, p);
  }
}

CostMatrix::CostMatrix(std::size_t rows, std::size_t cols, int p,
                       std::vector<double> entries)
    : rows_(rows), cols_(cols), p_(p), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw Error(Errc::invalid_argument, "cost matrix shape mismatch");
  }
}

double CostMatrix::max_entry() const noexcept {
  return entries_.empty() ? 0.0
                          : *std::max_element(entries_.begin(), entries_.end());
}

CostMatrix cost_matrix(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                       int p) {
  if (p < 1) {
    throw Error(Errc::invalid_argument,
                "exponent p must be >= 1, got " + std::to_string(p));
  }
  std::vector<double> entries(src.size() * dst.size());
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < dst.size(); ++j) {
      entries[i * dst.size() + j] =
          ground_cost(toroidal_distance(src.points[i], dst.points[j]), p);
    }
  }
  return CostMatrix(src.size(), dst.size(), p, std::move(entries));
}

}  // namespace sigot
