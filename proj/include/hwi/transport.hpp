#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hwi/functionals.hpp"
#include "hwi/state_space.hpp"

namespace hwi {

enum class CostKind {
  Linear,     // d
  Quadratic,  // d^2
  Mixed,      // d + d^2
};

std::string to_string(CostKind kind);
double ground_cost(CostKind kind, int distance);

// Optimal coupling of two distributions on the same space, with the dual
// potentials that certify it: u(x) + v(y) <= c(x, y) everywhere, with
// equality wherever the plan is positive.
struct TransportPlan {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> plan;  // row-major, rows x cols
  double cost = 0.0;         // optimal transport cost, not square-rooted
  std::vector<double> dual_u;
  std::vector<double> dual_v;
  std::int64_t pivots = 0;

  double at(std::size_t x, std::size_t y) const { return plan[x * cols + y]; }
};

enum class SolveMethod {
  // Dense transportation problem on the complete bipartite graph.
  Dense,
  // Linear cost only: min-cost flow along the edges of the state graph.
  // Exact because the ground cost is the graph distance.
  GraphFlow,
  // GraphFlow for Linear cost, Dense otherwise.
  Auto,
};

struct CertificateReport {
  double max_marginal_error = 0.0;
  double max_dual_violation = 0.0;       // max(u + v - c, 0)
  double max_slackness_violation = 0.0;  // |u + v - c| on plan support
  double duality_gap = 0.0;              // |<u,nu> + <v,mu> - cost|
  double min_plan_entry = 0.0;

  bool valid(double marginal_tol = 1e-10, double dual_tol = 1e-9) const {
    return max_marginal_error <= marginal_tol &&
           max_dual_violation <= dual_tol &&
           max_slackness_violation <= dual_tol && duality_gap <= dual_tol &&
           min_plan_entry >= 0.0;
  }
};

CertificateReport check_certificate(const TransportPlan& plan,
                                    const Distribution& nu,
                                    const Distribution& mu, CostKind cost);

// Exact optimal transport between nu and mu. The returned certificate is
// validated before returning; a failed validation throws std::runtime_error.
// Marginals on different spaces or with masses differing by more than 1e-9
// throw std::domain_error.
TransportPlan solve(const Distribution& nu, const Distribution& mu,
                    CostKind cost, SolveMethod method = SolveMethod::Auto);

double w1(const Distribution& nu, const Distribution& mu);
// Square root of the optimal quadratic cost.
double w2(const Distribution& nu, const Distribution& mu);
// Square root of the optimal d + d^2 cost.
double wc(const Distribution& nu, const Distribution& mu);

}  // namespace hwi
