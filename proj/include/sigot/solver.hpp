#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "sigot/measures.hpp"
#include "sigot/metric.hpp"

namespace sigot {

struct PlanEntry {
  std::size_t src = 0;
  std::size_t dst = 0;
  double mass = 0.0;
};

// Optimal coupling between two discrete measures. The dual potentials satisfy
// dual_src[i] + dual_dst[j] <= cost(i, j) with equality on every entry.
struct TransportPlan {
  std::vector<PlanEntry> entries;
  int p = 1;
  double total_cost_p = 0.0;
  double wasserstein_p = 0.0;
  std::vector<double> dual_src;
  std::vector<double> dual_dst;
  std::size_t pivots = 0;
};

inline constexpr double kDualTolerance = 1e-7;

// Exact W_p between equal-mass measures by the primal network simplex on the
// complete bipartite graph (block-search pivoting, strongly feasible trees).
// Throws Errc::empty_support, Errc::mass_mismatch or Errc::non_finite.
TransportPlan solve_transport(const DiscreteMeasure& src,
                              const DiscreteMeasure& dst, int p);

// Same, with a precomputed cost matrix (must match the supports' sizes).
TransportPlan solve_transport(const DiscreteMeasure& src,
                              const DiscreteMeasure& dst,
                              const CostMatrix& cost);

struct OracleResult {
  double total_cost_p = 0.0;
  double wasserstein_p = 0.0;
  // |total_cost_p - exact W_p^p| is guaranteed to stay below this.
  double quantization_bound = 0.0;
  std::int64_t scale = 0;
};

inline constexpr std::size_t kOracleMaxPoints = 64;

// Independent check of solve_transport: rounds weights to integers at
// denominator `scale` and runs successive shortest paths with Dijkstra on
// reduced costs. Shares no code with the network simplex.
OracleResult lp_oracle(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                       int p, std::int64_t scale = 1'000'000);

struct SignedDistanceResult {
  double value = 0.0;
  // True when S and T had different masses and were rescaled to unit mass.
  bool normalized = false;
  // True when both sides of the split were empty (mu == nu as measures).
  bool degenerate = false;
  TransportPlan plan;
  SplitPair split;
  DiscreteMeasure src;
  DiscreteMeasure dst;
};

struct SignedDistanceOptions {
  double mass_tolerance = kDefaultMassTolerance;
  double weight_floor = 0.0;
};

// W_p^{+-}(mu, nu) = W_p(mu+ + nu-, nu+ + mu-), rescaling S and T to unit
// mass only when their masses differ.
SignedDistanceResult signed_wasserstein(const SignedGridMeasure& mu,
                                        const SignedGridMeasure& nu, int p,
                                        const SignedDistanceOptions& options = {});

struct DualityReport {
  bool passed = false;
  double primal = 0.0;
  double dual = 0.0;
  double relative_gap = 0.0;
  // max over support pairs of f(x) - f(y) - d(x, y), clipped at zero.
  double worst_violation = 0.0;
};

// Checks Kantorovich-Rubinstein duality for a p = 1 plan: f = dual_src on the
// source support and -dual_dst on the target support must be 1-Lipschitz on
// every (source, target) pair and <f, mu - nu> must equal the primal cost.
DualityReport check_w1_duality(const TransportPlan& plan,
                               const CostMatrix& cost,
                               double tol = kDualTolerance);

}  // namespace sigot
