// Successive-shortest-path min-cost flow on integer-quantized weights. This is
// the verification path for solve_transport and deliberately uses none of the
// network simplex machinery.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "sigot/error.hpp"
#include "sigot/metric.hpp"
#include "sigot/solver.hpp"

namespace sigot {

namespace {

struct Arc {
  int to;
  std::int64_t cap;
  double cost;
};

class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : adj_(nodes) {}

  void add_arc(int from, int to, std::int64_t cap, double cost) {
    adj_[from].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({to, cap, cost});
    adj_[to].push_back(static_cast<int>(arcs_.size()));
    arcs_.push_back({from, 0, -cost});
  }

  // Pushes `amount` units from s to t; returns the total cost as long double.
  long double run(int s, int t, std::int64_t amount) {
    const int n = static_cast<int>(adj_.size());
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> potential(n, 0.0);
    std::vector<double> dist(n);
    std::vector<int> via(n);
    std::vector<char> done(n);
    long double total = 0.0L;
    while (amount > 0) {
      // Dense Dijkstra on reduced costs.
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      std::fill(done.begin(), done.end(), 0);
      dist[s] = 0.0;
      for (;;) {
        int u = -1;
        for (int v = 0; v < n; ++v) {
          if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
        }
        if (u < 0) break;
        done[u] = 1;
        for (int id : adj_[u]) {
          const Arc& a = arcs_[id];
          if (a.cap <= 0) continue;
          const double reduced =
              std::max(0.0, a.cost + potential[u] - potential[a.to]);
          if (dist[u] + reduced < dist[a.to]) {
            dist[a.to] = dist[u] + reduced;
            via[a.to] = id;
          }
        }
      }
      if (dist[t] == kInf) {
        throw Error(Errc::degenerate, "oracle network is infeasible");
      }
      for (int v = 0; v < n; ++v) {
        if (dist[v] < kInf) potential[v] += dist[v];
      }
      std::int64_t push = amount;
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        push = std::min(push, arcs_[via[v]].cap);
      }
      for (int v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].cap -= push;
        arcs_[via[v] ^ 1].cap += push;
        total += static_cast<long double>(push) * arcs_[via[v]].cost;
      }
      amount -= push;
    }
    return total;
  }

 private:
  std::vector<std::vector<int>> adj_;
  std::vector<Arc> arcs_;
};

std::vector<std::int64_t> quantize(const std::vector<double>& weights,
                                   std::int64_t scale, std::int64_t target) {
  std::vector<std::int64_t> units(weights.size());
  std::int64_t sum = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    units[k] = std::llround(weights[k] * static_cast<double>(scale));
    sum += units[k];
  }
  // Rebalance on the largest weight.
  const auto largest = std::max_element(units.begin(), units.end());
  *largest += target - sum;
  if (*largest < 0) {
    throw Error(Errc::invalid_argument, "oracle quantization failed");
  }
  return units;
}

}  // namespace

OracleResult lp_oracle(const DiscreteMeasure& src, const DiscreteMeasure& dst,
                       int p, std::int64_t scale) {
  if (src.size() > kOracleMaxPoints || dst.size() > kOracleMaxPoints) {
    throw Error(Errc::invalid_argument,
                "oracle supports at most " + std::to_string(kOracleMaxPoints) +
                    " points per side");
  }
  if (scale < 1) throw Error(Errc::invalid_argument, "oracle scale must be >= 1");
  if (p < 1) throw Error(Errc::invalid_argument, "exponent p must be >= 1");
  if (src.empty() || dst.empty()) {
    throw Error(Errc::empty_support, "oracle needs non-empty supports");
  }

  const double mass_src = src.total_mass();
  const double mass_dst = dst.total_mass();
  const std::int64_t target =
      std::llround(mass_src * static_cast<double>(scale));
  const std::vector<std::int64_t> a = quantize(src.weights, scale, target);
  const std::vector<std::int64_t> b = quantize(dst.weights, scale, target);

  const int ns = static_cast<int>(src.size());
  const int nd = static_cast<int>(dst.size());
  const int s = ns + nd;
  const int t = s + 1;
  MinCostFlow network(ns + nd + 2);
  for (int i = 0; i < ns; ++i) network.add_arc(s, i, a[i], 0.0);
  for (int j = 0; j < nd; ++j) network.add_arc(ns + j, t, b[j], 0.0);
  for (int i = 0; i < ns; ++i) {
    for (int j = 0; j < nd; ++j) {
      const double d = toroidal_distance(src.points[i], dst.points[j]);
      network.add_arc(i, ns + j, target, std::pow(d, p));
    }
  }

  OracleResult out;
  out.scale = scale;
  out.total_cost_p = static_cast<double>(network.run(s, t, target) /
                                         static_cast<long double>(scale));
  out.wasserstein_p = std::pow(out.total_cost_p, 1.0 / p);
  const double diam_p = std::pow(kTorusDiameter, p);
  out.quantization_bound =
      diam_p * static_cast<double>(src.size() + dst.size()) /
          static_cast<double>(scale) +
      diam_p * std::abs(mass_src - mass_dst);
  return out;
}

}  // namespace sigot
