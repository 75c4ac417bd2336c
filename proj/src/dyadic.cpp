#include "sigot/dyadic.hpp"

#include <cmath>
#include <string>

#include "sigot/error.hpp"
#include "sigot/metric.hpp"

namespace sigot {

bool is_power_of_two(std::size_t n) noexcept {
  return n != 0 && (n & (n - 1)) == 0;
}

int exact_log2(std::size_t n) {
  if (!is_power_of_two(n)) {
    throw Error(Errc::invalid_argument,
                "grid side " + std::to_string(n) + " is not a power of two");
  }
  int eta = 0;
  while ((std::size_t{1} << eta) < n) ++eta;
  return eta;
}

DyadicPartition build_partition(std::size_t n, int k_star) {
  const int eta = exact_log2(n);
  if (eta < 1) throw Error(Errc::invalid_argument, "grid side must be >= 2");
  if (k_star < 1 || k_star > eta) {
    throw Error(Errc::invalid_argument, "depth k* = " + std::to_string(k_star) +
                                            " outside [1, " +
                                            std::to_string(eta) + "]");
  }
  DyadicPartition part;
  part.n = n;
  part.eta = eta;
  part.k_star = k_star;
  part.levels.resize(k_star);
  for (int k = 1; k <= k_star; ++k) {
    const std::size_t side = n >> k;
    const std::size_t per_axis = std::size_t{1} << k;
    auto& cells = part.levels[k - 1];
    cells.reserve(per_axis * per_axis);
    for (std::size_t r = 0; r < per_axis; ++r) {
      for (std::size_t c = 0; c < per_axis; ++c) {
        cells.push_back({r * side, c * side, side});
      }
    }
  }
  return part;
}

DyadicPartition build_partition(std::size_t n) {
  return build_partition(n, exact_log2(n));
}

std::vector<double> level_discrepancies(const SignedGridMeasure& mu,
                                        const SignedGridMeasure& nu,
                                        const DyadicPartition& partition) {
  require_same_grid(mu, nu);
  if (mu.n() != partition.n) {
    throw Error(Errc::grid_mismatch, "partition built for a different grid");
  }
  const std::size_t n = mu.n();
  std::vector<double> out;
  out.reserve(partition.levels.size());
  std::vector<double> block;
  std::vector<double> cell_terms;
  for (const auto& cells : partition.levels) {
    cell_terms.clear();
    for (const DyadicCell& cell : cells) {
      block.clear();
      for (std::size_t i = cell.row; i < cell.row + cell.side; ++i) {
        for (std::size_t j = cell.col; j < cell.col + cell.side; ++j) {
          block.push_back(mu[i * n + j]);
          block.push_back(-nu[i * n + j]);
        }
      }
      cell_terms.push_back(std::abs(compensated_sum(block)));
    }
    out.push_back(compensated_sum(cell_terms));
  }
  return out;
}

double multiscale_bound(const SignedGridMeasure& mu, const SignedGridMeasure& nu,
                        int p, const DyadicPartition& partition) {
  if (p < 1) throw Error(Errc::invalid_argument, "exponent p must be >= 1");
  for (const SignedGridMeasure* m : {&mu, &nu}) {
    for (double v : m->values()) {
      if (v < 0.0) {
        throw Error(Errc::negative_mass, "multiscale bound needs non-negative measures");
      }
    }
    if (std::abs(m->total_mass() - 1.0) > kDefaultMassTolerance) {
      throw Error(Errc::invalid_argument,
                  "multiscale bound needs probability measures");
    }
  }
  const std::vector<double> levels = level_discrepancies(mu, nu, partition);
  const double diam_p = std::pow(kTorusDiameter, p);
  const double resolution = std::ldexp(1.0, -p * partition.k_star);
  std::vector<double> terms;
  for (int k = 1; k <= partition.k_star; ++k) {
    terms.push_back(std::ldexp(levels[k - 1], -p * (k - 1)));
  }
  return diam_p * (resolution + compensated_sum(terms));
}

}  // namespace sigot
