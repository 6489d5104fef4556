#include "hwi/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "network_simplex.hpp"

namespace hwi {

std::string to_string(CostKind kind) {
  switch (kind) {
    case CostKind::Linear: return "linear";
    case CostKind::Quadratic: return "quadratic";
    case CostKind::Mixed: return "mixed";
  }
  return "unknown";
}

double ground_cost(CostKind kind, int distance) {
  const auto d = static_cast<double>(distance);
  switch (kind) {
    case CostKind::Linear: return d;
    case CostKind::Quadratic: return d * d;
    case CostKind::Mixed: return d + d * d;
  }
  return d;
}

namespace {

void check_compatible(const Distribution& nu, const Distribution& mu) {
  if (!(nu.space() == mu.space())) {
    throw std::domain_error("transport marginals live on different spaces: " +
                            nu.space().descriptor() + " vs " +
                            mu.space().descriptor());
  }
  KahanSum a, b;
  for (double w : nu.weights()) a.add(w);
  for (double w : mu.weights()) b.add(w);
  if (std::abs(a.value() - b.value()) > 1e-9) {
    throw std::domain_error("transport marginals have different total mass");
  }
}

// Cost lookup table indexed by distance.
std::vector<double> cost_table(const StateSpace& space, CostKind kind) {
  std::vector<double> table(static_cast<std::size_t>(space.diameter()) + 1);
  for (std::size_t d = 0; d < table.size(); ++d) {
    table[d] = ground_cost(kind, static_cast<int>(d));
  }
  return table;
}

double plan_cost(const TransportPlan& tp, const StateSpace& space,
                 const std::vector<double>& table) {
  KahanSum total;
  for (std::size_t x = 0; x < tp.rows; ++x) {
    for (std::size_t y = 0; y < tp.cols; ++y) {
      const double p = tp.at(x, y);
      if (p > 0.0) {
        total.add(p * table[static_cast<std::size_t>(space.distance(x, y))]);
      }
    }
  }
  return total.value();
}

TransportPlan solve_dense(const Distribution& nu, const Distribution& mu,
                          CostKind kind) {
  const StateSpace& space = nu.space();
  const std::size_t size = space.size();
  const auto table = cost_table(space, kind);

  std::vector<std::size_t> rows, cols;
  for (std::size_t x = 0; x < size; ++x) {
    if (nu[x] > 0.0) rows.push_back(x);
    if (mu[x] > 0.0) cols.push_back(x);
  }
  const int r = static_cast<int>(rows.size());
  const int c = static_cast<int>(cols.size());

  detail::NetworkSimplex ns(r + c);
  ns.reserve_arcs(rows.size() * cols.size());
  for (int i = 0; i < r; ++i) {
    for (int j = 0; j < c; ++j) {
      const int d = space.distance(rows[static_cast<std::size_t>(i)],
                                   cols[static_cast<std::size_t>(j)]);
      ns.add_arc(i, r + j, table[static_cast<std::size_t>(d)]);
    }
  }
  std::vector<double> supply(static_cast<std::size_t>(r + c));
  for (int i = 0; i < r; ++i) {
    supply[static_cast<std::size_t>(i)] = nu[rows[static_cast<std::size_t>(i)]];
  }
  for (int j = 0; j < c; ++j) {
    supply[static_cast<std::size_t>(r + j)] = -mu[cols[static_cast<std::size_t>(j)]];
  }
  ns.set_supply(std::move(supply));
  ns.run();

  TransportPlan tp;
  tp.rows = size;
  tp.cols = size;
  tp.plan.assign(size * size, 0.0);
  tp.pivots = ns.pivots();
  for (int a = 0; a < ns.arc_count(); ++a) {
    const double f = ns.flow(a);
    if (f > 0.0) {
      const std::size_t x = rows[static_cast<std::size_t>(ns.from(a))];
      const std::size_t y = cols[static_cast<std::size_t>(ns.to(a) - r)];
      tp.plan[x * size + y] = f;
    }
  }

  constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();
  tp.dual_u.assign(size, kUnset);
  tp.dual_v.assign(size, kUnset);
  const double shift = r > 0 ? -ns.potential(0) : 0.0;
  for (int i = 0; i < r; ++i) {
    tp.dual_u[rows[static_cast<std::size_t>(i)]] = -ns.potential(i) - shift;
  }
  for (int j = 0; j < c; ++j) {
    tp.dual_v[cols[static_cast<std::size_t>(j)]] = ns.potential(r + j) + shift;
  }
  // Zero-mass rows and columns were left out of the solve; give them the
  // c-transform of the other side so the dual stays feasible everywhere.
  for (std::size_t x = 0; x < size; ++x) {
    if (!std::isnan(tp.dual_u[x])) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t y : cols) {
      best = std::min(best, table[static_cast<std::size_t>(space.distance(x, y))] -
                                tp.dual_v[y]);
    }
    tp.dual_u[x] = best;
  }
  for (std::size_t y = 0; y < size; ++y) {
    if (!std::isnan(tp.dual_v[y])) continue;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t x = 0; x < size; ++x) {
      best = std::min(best, table[static_cast<std::size_t>(space.distance(x, y))] -
                                tp.dual_u[x]);
    }
    tp.dual_v[y] = best;
  }
  tp.cost = plan_cost(tp, space, table);
  return tp;
}

TransportPlan solve_graph_flow(const Distribution& nu, const Distribution& mu) {
  const StateSpace& space = nu.space();
  const std::size_t size = space.size();
  const int n = static_cast<int>(size);

  detail::NetworkSimplex ns(n);
  std::vector<double> supply(size);
  for (std::size_t x = 0; x < size; ++x) {
    supply[x] = nu[x] - mu[x];
    for (State y : space.neighbors(x)) {
      ns.add_arc(static_cast<int>(x), static_cast<int>(y), 1.0);
    }
  }
  ns.set_supply(supply);
  ns.run();

  TransportPlan tp;
  tp.rows = size;
  tp.cols = size;
  tp.plan.assign(size * size, 0.0);
  tp.pivots = ns.pivots();
  for (std::size_t x = 0; x < size; ++x) {
    tp.plan[x * size + x] = std::min(nu[x], mu[x]);
  }

  // Decompose the flow into source-to-sink paths. Positive-flow arcs are
  // tree arcs with zero reduced cost, so every walk along them is a
  // shortest path and its endpoints are tight for the potentials.
  std::vector<std::vector<int>> out(size);
  std::vector<double> remaining(static_cast<std::size_t>(ns.arc_count()));
  for (int a = 0; a < ns.arc_count(); ++a) {
    remaining[static_cast<std::size_t>(a)] = ns.flow(a);
    if (ns.flow(a) > 0.0) out[static_cast<std::size_t>(ns.from(a))].push_back(a);
  }
  std::vector<std::size_t> cursor(size, 0);
  std::vector<double> deficit(size);
  for (std::size_t x = 0; x < size; ++x) deficit[x] = std::max(-supply[x], 0.0);

  std::vector<int> path;
  for (std::size_t x = 0; x < size; ++x) {
    double excess = std::max(supply[x], 0.0);
    while (excess > 0.0) {
      path.clear();
      std::size_t w = x;
      double bottleneck = excess;
      bool stuck = false;
      while (deficit[w] <= 0.0) {
        auto& cur = cursor[w];
        const auto& arcs = out[w];
        while (cur < arcs.size() &&
               remaining[static_cast<std::size_t>(arcs[cur])] <= 0.0) {
          ++cur;
        }
        if (cur == arcs.size()) {
          stuck = true;
          break;
        }
        const int a = arcs[cur];
        path.push_back(a);
        bottleneck = std::min(bottleneck, remaining[static_cast<std::size_t>(a)]);
        w = static_cast<std::size_t>(ns.to(a));
      }
      // A dead end is only reachable through rounding residue on the path;
      // the endpoint is still tight, so the residue is assigned to it.
      if (!stuck) bottleneck = std::min(bottleneck, deficit[w]);
      for (int a : path) remaining[static_cast<std::size_t>(a)] -= bottleneck;
      if (!stuck) deficit[w] -= bottleneck;
      excess -= bottleneck;
      tp.plan[x * size + w] += bottleneck;
    }
  }

  tp.dual_u.resize(size);
  tp.dual_v.resize(size);
  const double shift = ns.potential(0);
  for (std::size_t x = 0; x < size; ++x) {
    const double p = ns.potential(static_cast<int>(x)) - shift;
    tp.dual_u[x] = -p;
    tp.dual_v[x] = p;
  }
  tp.cost = plan_cost(tp, space, cost_table(space, CostKind::Linear));
  return tp;
}

}  // namespace

CertificateReport check_certificate(const TransportPlan& tp,
                                    const Distribution& nu,
                                    const Distribution& mu, CostKind kind) {
  const StateSpace& space = nu.space();
  const std::size_t size = space.size();
  if (tp.rows != size || tp.cols != size || tp.plan.size() != size * size ||
      tp.dual_u.size() != size || tp.dual_v.size() != size) {
    throw std::domain_error("transport plan shape does not match the space");
  }
  const auto table = cost_table(space, kind);
  CertificateReport rep;
  rep.min_plan_entry = std::numeric_limits<double>::infinity();
  std::vector<KahanSum> col_sums(size);
  for (std::size_t x = 0; x < size; ++x) {
    KahanSum row;
    for (std::size_t y = 0; y < size; ++y) {
      const double p = tp.at(x, y);
      row.add(p);
      col_sums[y].add(p);
      rep.min_plan_entry = std::min(rep.min_plan_entry, p);
      const double c = table[static_cast<std::size_t>(space.distance(x, y))];
      const double slack = tp.dual_u[x] + tp.dual_v[y] - c;
      rep.max_dual_violation = std::max(rep.max_dual_violation, slack);
      if (p > 0.0) {
        rep.max_slackness_violation =
            std::max(rep.max_slackness_violation, std::abs(slack));
      }
    }
    rep.max_marginal_error =
        std::max(rep.max_marginal_error, std::abs(row.value() - nu[x]));
  }
  KahanSum dual_obj;
  for (std::size_t y = 0; y < size; ++y) {
    rep.max_marginal_error =
        std::max(rep.max_marginal_error, std::abs(col_sums[y].value() - mu[y]));
    dual_obj.add(tp.dual_u[y] * nu[y]);
    dual_obj.add(tp.dual_v[y] * mu[y]);
  }
  rep.duality_gap = std::abs(dual_obj.value() - tp.cost);
  return rep;
}

TransportPlan solve(const Distribution& nu, const Distribution& mu,
                    CostKind cost, SolveMethod method) {
  check_compatible(nu, mu);
  if (method == SolveMethod::GraphFlow && cost != CostKind::Linear) {
    throw std::domain_error("graph-flow transport requires the linear cost");
  }
  const bool graph = method == SolveMethod::GraphFlow ||
                     (method == SolveMethod::Auto && cost == CostKind::Linear);
  TransportPlan tp = graph ? solve_graph_flow(nu, mu) : solve_dense(nu, mu, cost);
  const CertificateReport rep = check_certificate(tp, nu, mu, cost);
  if (!rep.valid()) {
    throw std::runtime_error(
        "transport solver produced an invalid optimality certificate "
        "(marginal error " + std::to_string(rep.max_marginal_error) +
        ", dual violation " + std::to_string(rep.max_dual_violation) +
        ", slackness " + std::to_string(rep.max_slackness_violation) +
        ", gap " + std::to_string(rep.duality_gap) + ")");
  }
  return tp;
}

double w1(const Distribution& nu, const Distribution& mu) {
  return solve(nu, mu, CostKind::Linear).cost;
}

double w2(const Distribution& nu, const Distribution& mu) {
  return std::sqrt(solve(nu, mu, CostKind::Quadratic).cost);
}

double wc(const Distribution& nu, const Distribution& mu) {
  return std::sqrt(solve(nu, mu, CostKind::Mixed).cost);
}

}  // namespace hwi
