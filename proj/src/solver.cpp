#include "sigot/solver.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "network_simplex.hpp"
#include "sigot/error.hpp"

namespace sigot {

namespace {

void validate_weights(const DiscreteMeasure& m, const char* side) {
  if (m.empty()) {
    throw Error(Errc::empty_support, std::string(side) + " support is empty");
  }
  if (m.weights.size() != m.points.size()) {
    throw Error(Errc::invalid_argument,
                std::string(side) + " has mismatched points and weights");
  }
  for (double w : m.weights) {
    if (!std::isfinite(w)) {
      throw Error(Errc::non_finite, std::string(side) + " has a non-finite weight");
    }
    if (!(w > 0.0)) {
      throw Error(Errc::invalid_argument,
                  std::string(side) + " has a non-positive weight");
    }
  }
}

void validate_masses(const DiscreteMeasure& src, const DiscreteMeasure& dst) {
  const double a = src.total_mass();
  const double b = dst.total_mass();
  if (std::abs(a - b) > kDefaultMassTolerance * std::max(a, b)) {
    throw Error(Errc::mass_mismatch, "source mass " + std::to_string(a) +
                                         " differs from target mass " +
                                         std::to_string(b));
  }
}

}  // namespace

TransportPlan solve_transport(const DiscreteMeasure& src,
                              const DiscreteMeasure& dst, int p) {
  validate_weights(src, "source");
  validate_weights(dst, "target");
  return solve_transport(src, dst, cost_matrix(src, dst, p));
}

TransportPlan solve_transport(const DiscreteMeasure& src,
                              const DiscreteMeasure& dst,
                              const CostMatrix& cost) {
  validate_weights(src, "source");
  validate_weights(dst, "target");
  validate_masses(src, dst);
  if (cost.rows() != src.size() || cost.cols() != dst.size()) {
    throw Error(Errc::invalid_argument, "cost matrix does not match supports");
  }

  detail::BipartiteNetworkSimplex simplex(src.weights, dst.weights,
                                          cost.entries());
  simplex.run();

  TransportPlan plan;
  plan.p = cost.p();
  plan.pivots = simplex.pivots();
  std::vector<double> terms;
  for (std::size_t i = 0; i < src.size(); ++i) {
    for (std::size_t j = 0; j < dst.size(); ++j) {
      const double mass = simplex.flow(i, j);
      if (mass > 0.0) {
        plan.entries.push_back({i, j, mass});
        terms.push_back(mass * cost(i, j));
      }
    }
  }
  plan.total_cost_p = std::max(0.0, compensated_sum(terms));
  plan.wasserstein_p = plan.p == 1
                           ? plan.total_cost_p
                           : std::pow(plan.total_cost_p, 1.0 / plan.p);
  plan.dual_src = simplex.source_potentials();
  plan.dual_dst = simplex.target_potentials();
  return plan;
}

SignedDistanceResult signed_wasserstein(const SignedGridMeasure& mu,
                                        const SignedGridMeasure& nu, int p,
                                        const SignedDistanceOptions& options) {
  if (p < 1) {
    throw Error(Errc::invalid_argument,
                "exponent p must be >= 1, got " + std::to_string(p));
  }
  SignedDistanceResult result;
  result.split = mainini_split(mu, nu);
  result.plan.p = p;
  if (result.split.c_s == 0.0 && result.split.c_t == 0.0) {
    result.degenerate = true;
    return result;
  }
  result.normalized = !masses_equal(result.split, options.mass_tolerance);
  const SplitPair working = normalize_pair(result.split, options.mass_tolerance);

  result.src = to_support(working.s, options.weight_floor).measure;
  result.dst = to_support(working.t, options.weight_floor).measure;
  result.plan = solve_transport(result.src, result.dst, p);
  result.value = result.plan.wasserstein_p;
  return result;
}

DualityReport check_w1_duality(const TransportPlan& plan,
                               const CostMatrix& cost, double tol) {
  DualityReport report;
  const std::size_t rows = cost.rows();
  const std::size_t cols = cost.cols();
  if (plan.dual_src.size() != rows || plan.dual_dst.size() != cols) {
    return report;
  }

  std::vector<double> src_mass(rows, 0.0);
  std::vector<double> dst_mass(cols, 0.0);
  std::vector<double> primal_terms;
  for (const PlanEntry& e : plan.entries) {
    src_mass[e.src] += e.mass;
    dst_mass[e.dst] += e.mass;
    primal_terms.push_back(e.mass * cost(e.src, e.dst));
  }

  // f(x_i) = u_i on sources, f(y_j) = -v_j on targets.
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      worst = std::max(worst, plan.dual_src[i] + plan.dual_dst[j] - cost(i, j));
    }
  }

  std::vector<double> dual_terms;
  dual_terms.reserve(rows + cols);
  for (std::size_t i = 0; i < rows; ++i) {
    dual_terms.push_back(plan.dual_src[i] * src_mass[i]);
  }
  for (std::size_t j = 0; j < cols; ++j) {
    dual_terms.push_back(plan.dual_dst[j] * dst_mass[j]);
  }

  report.primal = compensated_sum(primal_terms);
  report.dual = compensated_sum(dual_terms);
  report.worst_violation = worst;
  const double total = compensated_sum(src_mass);
  const double scale =
      std::max({std::abs(report.primal), std::abs(report.dual), 1e-9 * total});
  report.relative_gap =
      scale > 0.0 ? std::abs(report.primal - report.dual) / scale : 0.0;
  report.passed = worst <= tol && report.relative_gap <= tol;
  return report;
}

}  // namespace sigot
