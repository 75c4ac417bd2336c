#pragma once

// Primal network simplex for the uncapacitated transportation problem on a
// complete bipartite graph. Internal to the solver; the public entry point is
// sigot::solve_transport.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace sigot::detail {

class BipartiteNetworkSimplex {
 public:
  // `cost` is row-major, supply.size() x demand.size(). The totals of supply
  // and demand may differ by rounding; the residual stays on the artificial
  // root.
  BipartiteNetworkSimplex(std::span<const double> supply,
                          std::span<const double> demand,
                          std::span<const double> cost);

  // Runs to optimality. Returns false if the pivot limit was reached.
  bool run(std::size_t max_pivots = 0);

  double flow(std::size_t i, std::size_t j) const {
    return flow_[i * num_dst_ + j];
  }
  // Dual potentials with u_i + v_j <= c_ij, equality on basic arcs.
  std::vector<double> source_potentials() const;
  std::vector<double> target_potentials() const;
  std::size_t pivots() const noexcept { return pivots_; }
  // Largest flow left on an artificial arc.
  double artificial_flow() const;

  // Exhaustive consistency check of the spanning-tree arrays; returns an empty
  // string when the tree is valid. Used by the unit tests.
  std::string validate_tree() const;
  void set_validate_each_pivot(bool on) noexcept { validate_each_pivot_ = on; }

 private:
  static constexpr int kUp = 1;
  static constexpr int kDown = -1;

  int source(int e) const noexcept;
  int target(int e) const noexcept;
  double arc_cost(int e) const noexcept;
  bool in_tree(int e) const noexcept;

  bool find_entering_arc();
  void find_join_node();
  bool find_leaving_arc();
  void change_flow();
  void update_tree_structure();
  void update_potential();
  void recompute_potentials();

  int num_src_ = 0;
  int num_dst_ = 0;
  int node_num_ = 0;
  int arc_num_ = 0;
  int root_ = 0;
  int block_size_ = 0;
  int next_arc_ = 0;
  double art_cost_ = 0.0;
  double epsilon_ = 0.0;
  std::size_t pivots_ = 0;
  bool validate_each_pivot_ = false;

  std::span<const double> cost_;
  std::vector<double> supply_;
  std::vector<double> flow_;
  std::vector<double> pi_;
  std::vector<int> parent_;
  std::vector<int> pred_;
  std::vector<int> thread_;
  std::vector<int> rev_thread_;
  std::vector<int> succ_num_;
  std::vector<int> last_succ_;
  std::vector<std::int8_t> pred_dir_;
  std::vector<int> dirty_revs_;

  // Current pivot.
  int in_arc_ = -1;
  int join_ = -1;
  int u_in_ = -1;
  int v_in_ = -1;
  int u_out_ = -1;
  int v_out_ = -1;
  double delta_ = 0.0;
};

}  // namespace sigot::detail
