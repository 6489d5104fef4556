#include "network_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hwi::detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// Costs are integer valued, so any negative reduced cost is <= -1 up to
// rounding of the potentials.
constexpr double kPricingEps = 1e-7;
constexpr double kFeasibilityTol = 1e-9;
}  // namespace

NetworkSimplex::NetworkSimplex(int node_count) : nodes_(node_count) {
  if (node_count < 0) throw std::invalid_argument("negative node count");
  supply_.assign(static_cast<std::size_t>(node_count), 0.0);
}

void NetworkSimplex::reserve_arcs(std::size_t count) {
  const std::size_t total = count + static_cast<std::size_t>(nodes_);
  src_.reserve(total);
  tgt_.reserve(total);
  cost_.reserve(total);
}

int NetworkSimplex::add_arc(int from, int to, double cost) {
  if (from < 0 || from >= nodes_ || to < 0 || to >= nodes_) {
    throw std::out_of_range("arc endpoint out of range");
  }
  src_.push_back(from);
  tgt_.push_back(to);
  cost_.push_back(cost);
  return real_arcs_++;
}

void NetworkSimplex::set_supply(std::vector<double> supply) {
  if (supply.size() != static_cast<std::size_t>(nodes_)) {
    throw std::invalid_argument("supply vector has wrong length");
  }
  supply_ = std::move(supply);
}

void NetworkSimplex::init_tree() {
  const auto n = static_cast<std::size_t>(nodes_);
  const int root = nodes_;

  double max_cost = 0.0;
  for (std::size_t a = 0; a < static_cast<std::size_t>(real_arcs_); ++a) {
    max_cost = std::max(max_cost, std::abs(cost_[a]));
  }
  const double art_cost = (max_cost + 1.0) * static_cast<double>(n + 1);

  src_.resize(static_cast<std::size_t>(real_arcs_));
  tgt_.resize(static_cast<std::size_t>(real_arcs_));
  cost_.resize(static_cast<std::size_t>(real_arcs_));
  flow_.assign(static_cast<std::size_t>(real_arcs_) + n, 0.0);
  in_tree_.assign(static_cast<std::size_t>(real_arcs_) + n, 0);

  parent_.assign(n + 1, -1);
  pred_arc_.assign(n + 1, -1);
  pred_up_.assign(n + 1, 0);
  depth_.assign(n + 1, 0);
  pi_.assign(n + 1, 0.0);
  children_.assign(n + 1, {});
  children_[n].reserve(n);

  for (int u = 0; u < nodes_; ++u) {
    const auto uu = static_cast<std::size_t>(u);
    const int arc = real_arcs_ + u;
    const auto aa = static_cast<std::size_t>(arc);
    // Zero-supply nodes hang from root-to-node arcs so the initial tree is
    // strongly feasible.
    if (supply_[uu] > 0.0) {
      src_.push_back(u);
      tgt_.push_back(root);
      flow_[aa] = supply_[uu];
      pred_up_[uu] = 1;
      pi_[uu] = -art_cost;
    } else {
      src_.push_back(root);
      tgt_.push_back(u);
      flow_[aa] = -supply_[uu];
      pred_up_[uu] = 0;
      pi_[uu] = art_cost;
    }
    cost_.push_back(art_cost);
    in_tree_[aa] = 1;
    parent_[uu] = root;
    pred_arc_[uu] = arc;
    depth_[uu] = 1;
    children_[n].push_back(u);
  }

  const auto m = static_cast<std::size_t>(real_arcs_);
  block_size_ = std::max<std::size_t>(
      10, static_cast<std::size_t>(std::sqrt(static_cast<double>(m))));
  next_arc_ = 0;
  pivots_ = 0;
}

int NetworkSimplex::find_entering() {
  const auto m = static_cast<std::size_t>(real_arcs_);
  if (m == 0) return -1;
  double best = -kPricingEps;
  int best_arc = -1;
  std::size_t scanned_in_block = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t a = next_arc_;
    next_arc_ = next_arc_ + 1 == m ? 0 : next_arc_ + 1;
    const double rc = reduced_cost(a);
    if (rc < best) {
      best = rc;
      best_arc = static_cast<int>(a);
    }
    if (++scanned_in_block == block_size_) {
      if (best_arc >= 0) return best_arc;
      scanned_in_block = 0;
    }
  }
  return best_arc;
}

void NetworkSimplex::detach_child(int parent, int child) {
  auto& kids = children_[static_cast<std::size_t>(parent)];
  auto it = std::find(kids.begin(), kids.end(), child);
  *it = kids.back();
  kids.pop_back();
}

void NetworkSimplex::update_subtree(int top, double shift) {
  stack_.clear();
  stack_.push_back(top);
  while (!stack_.empty()) {
    const auto w = static_cast<std::size_t>(stack_.back());
    stack_.pop_back();
    pi_[w] += shift;
    depth_[w] = depth_[static_cast<std::size_t>(parent_[w])] + 1;
    for (int c : children_[w]) stack_.push_back(c);
  }
}

void NetworkSimplex::pivot(int entering) {
  const auto ea = static_cast<std::size_t>(entering);
  const int first = src_[ea];
  const int second = tgt_[ea];

  // Cycle apex.
  int a = first;
  int b = second;
  while (a != b) {
    if (depth_[static_cast<std::size_t>(a)] >= depth_[static_cast<std::size_t>(b)]) {
      a = parent_[static_cast<std::size_t>(a)];
    } else {
      b = parent_[static_cast<std::size_t>(b)];
    }
  }
  const int join = a;

  // Leaving arc: strict comparison on the source side, non-strict on the
  // target side, so ties resolve to the last blocking arc in cycle order.
  double delta = kInf;
  int out_node = -1;
  bool out_on_first = false;
  for (int w = first; w != join; w = parent_[static_cast<std::size_t>(w)]) {
    const auto ww = static_cast<std::size_t>(w);
    if (pred_up_[ww]) {
      const double d = flow_[static_cast<std::size_t>(pred_arc_[ww])];
      if (d < delta) {
        delta = d;
        out_node = w;
        out_on_first = true;
      }
    }
  }
  for (int w = second; w != join; w = parent_[static_cast<std::size_t>(w)]) {
    const auto ww = static_cast<std::size_t>(w);
    if (!pred_up_[ww]) {
      const double d = flow_[static_cast<std::size_t>(pred_arc_[ww])];
      if (d <= delta) {
        delta = d;
        out_node = w;
        out_on_first = false;
      }
    }
  }
  if (out_node < 0) {
    throw std::runtime_error("network simplex: unbounded cycle");
  }

  if (delta > 0.0) {
    flow_[ea] += delta;
    for (int w = first; w != join; w = parent_[static_cast<std::size_t>(w)]) {
      const auto ww = static_cast<std::size_t>(w);
      flow_[static_cast<std::size_t>(pred_arc_[ww])] += pred_up_[ww] ? -delta : delta;
    }
    for (int w = second; w != join; w = parent_[static_cast<std::size_t>(w)]) {
      const auto ww = static_cast<std::size_t>(w);
      flow_[static_cast<std::size_t>(pred_arc_[ww])] += pred_up_[ww] ? delta : -delta;
    }
  }

  const int leaving = pred_arc_[static_cast<std::size_t>(out_node)];
  in_tree_[static_cast<std::size_t>(leaving)] = 0;
  in_tree_[ea] = 1;

  // Re-hang the subtree below the leaving arc from the entering arc,
  // reversing the tree path between the entering endpoint and out_node.
  const int in_node = out_on_first ? first : second;
  const int other = out_on_first ? second : first;
  int new_parent = other;
  int new_arc = entering;
  char new_up = (src_[ea] == in_node) ? 1 : 0;
  int w = in_node;
  while (true) {
    const auto ww = static_cast<std::size_t>(w);
    const int old_parent = parent_[ww];
    const int old_arc = pred_arc_[ww];
    const char old_up = pred_up_[ww];
    detach_child(old_parent, w);
    parent_[ww] = new_parent;
    pred_arc_[ww] = new_arc;
    pred_up_[ww] = new_up;
    children_[static_cast<std::size_t>(new_parent)].push_back(w);
    if (w == out_node) break;
    new_parent = w;
    new_arc = old_arc;
    new_up = old_up ? 0 : 1;
    w = old_parent;
  }

  const auto in = static_cast<std::size_t>(in_node);
  const double target_pi =
      in_node == src_[ea]
          ? pi_[static_cast<std::size_t>(tgt_[ea])] - cost_[ea]
          : pi_[static_cast<std::size_t>(src_[ea])] + cost_[ea];
  update_subtree(in_node, target_pi - pi_[in]);
  ++pivots_;
}

void NetworkSimplex::run() {
  init_tree();
  for (int e = find_entering(); e >= 0; e = find_entering()) {
    pivot(e);
  }
  const auto n = static_cast<std::size_t>(nodes_);
  const auto m = static_cast<std::size_t>(real_arcs_);
  double scale = 0.0;
  for (double s : supply_) scale += std::abs(s);
  for (std::size_t u = 0; u < n; ++u) {
    if (flow_[m + u] > kFeasibilityTol * std::max(1.0, scale)) {
      throw std::runtime_error("network simplex: problem is infeasible");
    }
  }
}

}  // namespace hwi::detail
