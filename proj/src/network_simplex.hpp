#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace hwi::detail {

// Primal network simplex for uncapacitated min-cost flow with balanced
// supplies. Starts from a big-M artificial star around an extra root node and
// keeps the spanning tree strongly feasible (zero-flow tree arcs point away
// from the root; ties for the leaving arc go to the last blocking arc on the
// cycle), which rules out cycling. Arc costs are expected to be integer
// valued so reduced costs are exact.
class NetworkSimplex {
 public:
  explicit NetworkSimplex(int node_count);

  void reserve_arcs(std::size_t count);
  int add_arc(int from, int to, double cost);
  // Positive = supply, negative = demand. Must sum to ~0.
  void set_supply(std::vector<double> supply);

  // Throws std::runtime_error if the problem turns out infeasible.
  void run();

  double flow(int arc) const { return flow_[static_cast<std::size_t>(arc)]; }
  // Node potentials; every real arc satisfies
  // cost + potential(from) - potential(to) >= 0 at optimum.
  double potential(int node) const { return pi_[static_cast<std::size_t>(node)]; }
  int arc_count() const { return real_arcs_; }
  int from(int arc) const { return src_[static_cast<std::size_t>(arc)]; }
  int to(int arc) const { return tgt_[static_cast<std::size_t>(arc)]; }
  double cost(int arc) const { return cost_[static_cast<std::size_t>(arc)]; }
  std::int64_t pivots() const { return pivots_; }

 private:
  void init_tree();
  int find_entering();
  void pivot(int entering);
  double reduced_cost(std::size_t a) const {
    return cost_[a] + pi_[static_cast<std::size_t>(src_[a])] -
           pi_[static_cast<std::size_t>(tgt_[a])];
  }
  void detach_child(int parent, int child);
  void update_subtree(int top, double shift);

  int nodes_;  // real nodes; the root has index nodes_
  int real_arcs_ = 0;
  std::vector<int> src_, tgt_;
  std::vector<double> cost_, flow_;
  std::vector<char> in_tree_;
  std::vector<double> supply_;

  std::vector<int> parent_, pred_arc_, depth_;
  std::vector<char> pred_up_;  // pred arc points from node to parent
  std::vector<double> pi_;
  std::vector<std::vector<int>> children_;
  std::vector<int> stack_;

  std::size_t next_arc_ = 0;
  std::size_t block_size_ = 0;
  std::int64_t pivots_ = 0;
};

}  // namespace hwi::detail
