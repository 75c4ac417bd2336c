#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace sigot::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

BipartiteNetworkSimplex::BipartiteNetworkSimplex(
    std::span<const double> supply, std::span<const double> demand,
    std::span<const double> cost)
    : num_src_(static_cast<int>(supply.size())),
      num_dst_(static_cast<int>(demand.size())),
      node_num_(num_src_ + num_dst_),
      arc_num_(num_src_ * num_dst_),
      root_(node_num_),
      cost_(cost) {
  supply_.resize(node_num_ + 1);
  double balance = 0.0;
  for (int i = 0; i < num_src_; ++i) {
    supply_[i] = supply[i];
    balance += supply[i];
  }
  for (int j = 0; j < num_dst_; ++j) {
    supply_[num_src_ + j] = -demand[j];
    balance -= demand[j];
  }
  supply_[root_] = -balance;

  // Every source reaches every target directly, so any artificial cost above
  // the largest real cost makes routing through the root suboptimal.
  double max_cost = 0.0;
  for (double c : cost_) max_cost = std::max(max_cost, c);
  art_cost_ = max_cost + 1.0;
  epsilon_ = 1e-12 * art_cost_;

  block_size_ = std::max(
      10, static_cast<int>(std::ceil(std::sqrt(static_cast<double>(arc_num_)))));
  block_size_ = std::min(block_size_, std::max(arc_num_, 1));

  const int all_arcs = arc_num_ + node_num_;
  flow_.assign(all_arcs, 0.0);
  pi_.assign(node_num_ + 1, 0.0);
  parent_.assign(node_num_ + 1, -1);
  pred_.assign(node_num_ + 1, -1);
  thread_.assign(node_num_ + 1, 0);
  rev_thread_.assign(node_num_ + 1, 0);
  succ_num_.assign(node_num_ + 1, 1);
  last_succ_.assign(node_num_ + 1, 0);
  pred_dir_.assign(node_num_ + 1, kUp);

  // Initial basis: a star around the artificial root.
  thread_[root_] = 0;
  rev_thread_[0] = root_;
  succ_num_[root_] = node_num_ + 1;
  last_succ_[root_] = root_ - 1;
  for (int u = 0; u < node_num_; ++u) {
    const int e = arc_num_ + u;
    parent_[u] = root_;
    pred_[u] = e;
    thread_[u] = u + 1;
    rev_thread_[u + 1] = u;
    succ_num_[u] = 1;
    last_succ_[u] = u;
    if (u < num_src_) {
      pred_dir_[u] = kUp;
      pi_[u] = 0.0;
      flow_[e] = supply_[u];
    } else {
      pred_dir_[u] = kDown;
      pi_[u] = art_cost_;
      flow_[e] = -supply_[u];
    }
  }
}

int BipartiteNetworkSimplex::source(int e) const noexcept {
  if (e < arc_num_) return e / num_dst_;
  const int u = e - arc_num_;
  return u < num_src_ ? u : root_;
}

int BipartiteNetworkSimplex::target(int e) const noexcept {
  if (e < arc_num_) return num_src_ + e % num_dst_;
  const int u = e - arc_num_;
  return u < num_src_ ? root_ : u;
}

double BipartiteNetworkSimplex::arc_cost(int e) const noexcept {
  if (e < arc_num_) return cost_[e];
  return e - arc_num_ < num_src_ ? 0.0 : art_cost_;
}

bool BipartiteNetworkSimplex::in_tree(int e) const noexcept {
  return pred_[source(e)] == e || pred_[target(e)] == e;
}

// Block search: scan blocks of arcs round-robin from where the last search
// stopped and take the most negative reduced cost of the first block that has
// one. Ties keep the lowest index within the block.
bool BipartiteNetworkSimplex::find_entering_arc() {
  if (arc_num_ == 0) return false;
  double best_cost = -epsilon_;
  int best = -1;
  int count = block_size_;
  int e = next_arc_;
  int i = e / num_dst_;
  int j = e % num_dst_;
  const double* pi_dst = pi_.data() + num_src_;
  for (int scanned = 0; scanned < arc_num_; ++scanned) {
    const double c = cost_[e] + pi_[i] - pi_dst[j];
    if (c < best_cost && !in_tree(e)) {
      best_cost = c;
      best = e;
    }
    ++e;
    if (++j == num_dst_) {
      j = 0;
      if (++i == num_src_) {
        i = 0;
        e = 0;
      }
    }
    if (--count == 0) {
      if (best >= 0) break;
      count = block_size_;
    }
  }
  if (best < 0) return false;
  in_arc_ = best;
  next_arc_ = e;
  return true;
}

void BipartiteNetworkSimplex::find_join_node() {
  int u = source(in_arc_);
  int v = target(in_arc_);
  while (u != v) {
    if (succ_num_[u] < succ_num_[v]) {
      u = parent_[u];
    } else {
      v = parent_[v];
    }
  }
  join_ = u;
}

// Ratio test along the cycle closed by the entering arc. The `<=` on the
// second path keeps the tree strongly feasible.
bool BipartiteNetworkSimplex::find_leaving_arc() {
  const int first = source(in_arc_);
  const int second = target(in_arc_);
  delta_ = kInf;
  int result = 0;
  for (int u = first; u != join_; u = parent_[u]) {
    const double d = pred_dir_[u] == kUp ? flow_[pred_[u]] : kInf;
    if (d < delta_) {
      delta_ = d;
      u_out_ = u;
      result = 1;
    }
  }
  for (int u = second; u != join_; u = parent_[u]) {
    const double d = pred_dir_[u] == kDown ? flow_[pred_[u]] : kInf;
    if (d <= delta_) {
      delta_ = d;
      u_out_ = u;
      result = 2;
    }
  }
  if (result == 1) {
    u_in_ = first;
    v_in_ = second;
  } else {
    u_in_ = second;
    v_in_ = first;
  }
  return result != 0;
}

void BipartiteNetworkSimplex::change_flow() {
  if (delta_ > 0.0) {
    const double val = delta_;
    flow_[in_arc_] += val;
    for (int u = source(in_arc_); u != join_; u = parent_[u]) {
      flow_[pred_[u]] -= pred_dir_[u] * val;
    }
    for (int u = target(in_arc_); u != join_; u = parent_[u]) {
      flow_[pred_[u]] += pred_dir_[u] * val;
    }
  }
  flow_[pred_[u_out_]] = 0.0;
}

void BipartiteNetworkSimplex::update_tree_structure() {
  const int old_rev_thread = rev_thread_[u_out_];
  const int old_succ_num = succ_num_[u_out_];
  const int old_last_succ = last_succ_[u_out_];
  v_out_ = parent_[u_out_];

  if (u_in_ == u_out_) {
    parent_[u_in_] = v_in_;
    pred_[u_in_] = in_arc_;
    pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kUp : kDown;

    if (thread_[v_in_] != u_out_) {
      int after = thread_[old_last_succ];
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
      after = thread_[v_in_];
      thread_[v_in_] = u_out_;
      rev_thread_[u_out_] = v_in_;
      thread_[old_last_succ] = after;
      rev_thread_[after] = old_last_succ;
    }
  } else {
    // old_rev_thread == v_in implies join == v_out.
    const int thread_continue =
        old_rev_thread == v_in_ ? thread_[old_last_succ] : thread_[v_in_];

    // Re-hang the stem u_in -> ... -> u_out below v_in, reversing it.
    int stem = u_in_;
    int par_stem = v_in_;
    int last = last_succ_[u_in_];
    int after = thread_[last];
    thread_[v_in_] = u_in_;
    dirty_revs_.clear();
    dirty_revs_.push_back(v_in_);
    while (stem != u_out_) {
      const int next_stem = parent_[stem];
      thread_[last] = next_stem;
      dirty_revs_.push_back(last);

      const int before = rev_thread_[stem];
      thread_[before] = after;
      rev_thread_[after] = before;

      parent_[stem] = par_stem;
      par_stem = stem;
      stem = next_stem;

      last = last_succ_[stem] == last_succ_[par_stem] ? rev_thread_[par_stem]
                                                      : last_succ_[stem];
      after = thread_[last];
    }
    parent_[u_out_] = par_stem;
    thread_[last] = thread_continue;
    rev_thread_[thread_continue] = last;
    last_succ_[u_out_] = last;

    if (old_rev_thread != v_in_) {
      thread_[old_rev_thread] = after;
      rev_thread_[after] = old_rev_thread;
    }

    for (int u : dirty_revs_) rev_thread_[thread_[u]] = u;

    int tmp_sc = 0;
    const int tmp_ls = last_succ_[u_out_];
    for (int u = u_out_, p = parent_[u]; u != u_in_; u = p, p = parent_[u]) {
      pred_[u] = pred_[p];
      pred_dir_[u] = static_cast<std::int8_t>(-pred_dir_[p]);
      tmp_sc += succ_num_[u] - succ_num_[p];
      succ_num_[u] = tmp_sc;
      last_succ_[p] = tmp_ls;
    }
    pred_[u_in_] = in_arc_;
    pred_dir_[u_in_] = u_in_ == source(in_arc_) ? kUp : kDown;
    succ_num_[u_in_] = old_succ_num;
  }

  const int up_limit_out = last_succ_[join_] == v_in_ ? join_ : -1;
  const int last_succ_out = last_succ_[u_out_];
  for (int u = v_in_; u != -1 && last_succ_[u] == v_in_; u = parent_[u]) {
    last_succ_[u] = last_succ_out;
  }

  if (join_ != old_rev_thread && v_in_ != old_rev_thread) {
    for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ;
         u = parent_[u]) {
      last_succ_[u] = old_rev_thread;
    }
  } else if (last_succ_out != old_last_succ) {
    for (int u = v_out_; u != up_limit_out && last_succ_[u] == old_last_succ;
         u = parent_[u]) {
      last_succ_[u] = last_succ_out;
    }
  }

  for (int u = v_in_; u != join_; u = parent_[u]) succ_num_[u] += old_succ_num;
  for (int u = v_out_; u != join_; u = parent_[u]) succ_num_[u] -= old_succ_num;
}

void BipartiteNetworkSimplex::update_potential() {
  const double sigma =
      pi_[v_in_] - pi_[u_in_] - pred_dir_[u_in_] * arc_cost(in_arc_);
  const int end = thread_[last_succ_[u_in_]];
  for (int u = u_in_; u != end; u = thread_[u]) pi_[u] += sigma;
}

// Rebuilds pi from the tree so incremental rounding does not accumulate.
void BipartiteNetworkSimplex::recompute_potentials() {
  pi_[root_] = 0.0;
  for (int u = thread_[root_]; u != root_; u = thread_[u]) {
    const double c = arc_cost(pred_[u]);
    pi_[u] = pred_dir_[u] == kUp ? pi_[parent_[u]] - c : pi_[parent_[u]] + c;
  }
}

bool BipartiteNetworkSimplex::run(std::size_t max_pivots) {
  const std::size_t limit =
      max_pivots > 0 ? max_pivots : std::numeric_limits<std::size_t>::max();
  for (;;) {
    while (find_entering_arc()) {
      if (pivots_ >= limit) return false;
      find_join_node();
      find_leaving_arc();
      change_flow();
      update_tree_structure();
      update_potential();
      ++pivots_;
      if (validate_each_pivot_) {
        const std::string problem = validate_tree();
        if (!problem.empty()) throw std::logic_error(problem);
      }
    }
    // Confirm optimality with exact potentials before stopping.
    recompute_potentials();
    if (!find_entering_arc()) break;
    next_arc_ = 0;
  }
  return true;
}

std::vector<double> BipartiteNetworkSimplex::source_potentials() const {
  std::vector<double> u(num_src_);
  for (int i = 0; i < num_src_; ++i) u[i] = -pi_[i];
  return u;
}

std::vector<double> BipartiteNetworkSimplex::target_potentials() const {
  std::vector<double> v(num_dst_);
  for (int j = 0; j < num_dst_; ++j) v[j] = pi_[num_src_ + j];
  return v;
}

double BipartiteNetworkSimplex::artificial_flow() const {
  double worst = 0.0;
  for (int u = 0; u < node_num_; ++u) {
    worst = std::max(worst, std::abs(flow_[arc_num_ + u]));
  }
  return worst;
}

std::string BipartiteNetworkSimplex::validate_tree() const {
  std::ostringstream err;
  const int total = node_num_ + 1;
  // Preorder walk along thread must visit every node exactly once.
  std::vector<int> order;
  order.reserve(total);
  std::vector<char> seen(total, 0);
  int u = root_;
  for (int step = 0; step < total; ++step) {
    if (u < 0 || u >= total || seen[u]) {
      err << "thread broken at step " << step;
      return err.str();
    }
    seen[u] = 1;
    order.push_back(u);
    if (rev_thread_[thread_[u]] != u) {
      err << "rev_thread mismatch at " << u;
      return err.str();
    }
    u = thread_[u];
  }
  if (u != root_) return "thread does not close at root";

  std::vector<int> position(total);
  for (int k = 0; k < total; ++k) position[order[k]] = k;
  for (int v = 0; v < total; ++v) {
    if (v == root_) continue;
    const int p = parent_[v];
    if (p < 0 || position[p] >= position[v]) {
      err << "parent of " << v << " not before it in thread";
      return err.str();
    }
    const int e = pred_[v];
    const bool up = source(e) == v && target(e) == p;
    const bool down = source(e) == p && target(e) == v;
    if (!(up && pred_dir_[v] == kUp) && !(down && pred_dir_[v] == kDown)) {
      err << "pred arc of " << v << " inconsistent";
      return err.str();
    }
    if (flow_[e] < -1e-9) {
      err << "negative flow on tree arc " << e;
      return err.str();
    }
    const double reduced = arc_cost(e) + pi_[source(e)] - pi_[target(e)];
    if (std::abs(reduced) > 1e-9) {
      err << "tree arc " << e << " has reduced cost " << reduced;
      return err.str();
    }
  }
  // Subtree sizes and last successors from the preorder.
  std::vector<int> size(total, 1);
  for (int k = total - 1; k > 0; --k) size[parent_[order[k]]] += size[order[k]];
  for (int v = 0; v < total; ++v) {
    if (succ_num_[v] != size[v]) {
      err << "succ_num of " << v << " is " << succ_num_[v] << ", expected "
          << size[v];
      return err.str();
    }
    if (last_succ_[v] != order[position[v] + size[v] - 1]) {
      err << "last_succ of " << v << " wrong";
      return err.str();
    }
  }
  return {};
}

}  // namespace sigot::detail
