#include "hwi/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hwi {

Distribution::Distribution(StateSpace space, std::vector<double> weights)
    : space_(space), weights_(std::move(weights)) {
  if (weights_.size() != space_.size()) {
    throw std::domain_error("distribution has " +
                            std::to_string(weights_.size()) +
                            " weights but " + space_.descriptor() + " has " +
                            std::to_string(space_.size()) + " states");
  }
  KahanSum total;
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::domain_error("distribution weights must be finite and >= 0");
    }
    total.add(w);
  }
  if (std::abs(total.value() - 1.0) > kSumTolerance) {
    throw std::domain_error("distribution weights sum to " +
                            std::to_string(total.value()) + ", expected 1");
  }
}

Distribution Distribution::uniform(const StateSpace& space) {
  return Distribution(space, std::vector<double>(
                                 space.size(),
                                 1.0 / static_cast<double>(space.size())));
}

Distribution Distribution::point_mass(const StateSpace& space, State x) {
  if (x >= space.size()) {
    throw std::domain_error("point mass location out of range");
  }
  std::vector<double> w(space.size(), 0.0);
  w[x] = 1.0;
  return Distribution(space, std::move(w));
}

Distribution Distribution::normalized(StateSpace space,
                                      std::vector<double> weights) {
  KahanSum total;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::domain_error("weights must be finite and >= 0");
    }
    total.add(w);
  }
  const double z = total.value();
  if (!(z > 0.0)) throw std::domain_error("weights have zero total mass");
  for (double& w : weights) w /= z;
  return Distribution(space, std::move(weights));
}

void KahanSum::add(double x) {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    compensation_ += (sum_ - t) + x;
  } else {
    compensation_ += (x - t) + sum_;
  }
  sum_ = t;
}

namespace {

// (a - b)(log a - log b) with the support-mismatch conventions. Returns
// false when exactly one endpoint is zero.
bool edge_term(double a, double b, double& out) {
  if (a == 0.0 && b == 0.0) {
    out = 0.0;
    return true;
  }
  if (a == 0.0 || b == 0.0) return false;
  const double diff = a - b;
  out = diff * std::log1p(diff / b);
  return true;
}

}  // namespace

FunctionalValue relative_entropy(const Distribution& nu) {
  const double size = static_cast<double>(nu.size());
  KahanSum h;
  for (double w : nu.weights()) {
    if (w > 0.0) h.add(w * std::log(w * size));
  }
  // Rounding can leave a tiny negative value when nu is uniform.
  return {std::max(h.value(), 0.0), false};
}

FunctionalValue fisher_hypercube(const Distribution& nu) {
  const StateSpace& space = nu.space();
  if (!space.is_hypercube()) {
    throw std::domain_error("fisher_hypercube requires a hypercube space");
  }
  const auto w = nu.weights();
  KahanSum total;
  // Each undirected edge {x, x^i} appears twice in the ordered double sum;
  // the factor 1/2 cancels that, and rho/mu scaling cancels to nu.
  for (int i = 0; i < space.n(); ++i) {
    const State bit = State{1} << i;
    for (State x = 0; x < space.size(); ++x) {
      if (x & bit) continue;
      double term = 0.0;
      if (!edge_term(w[x ^ bit], w[x], term)) {
        return FunctionalValue::infinite();
      }
      total.add(term);
    }
  }
  return {std::max(total.value(), 0.0), false};
}

FunctionalValue fisher_torus(const Distribution& nu) {
  const StateSpace& space = nu.space();
  if (!space.is_torus()) {
    throw std::domain_error("fisher_torus requires a torus space");
  }
  const auto w = nu.weights();
  const std::size_t n = space.size();
  KahanSum total;
  for (State x = 0; x < n; ++x) {
    double term = 0.0;
    if (!edge_term(w[(x + 1) % n], w[x], term)) {
      return FunctionalValue::infinite();
    }
    total.add(term);
  }
  return {std::max(total.value(), 0.0), false};
}

FunctionalValue fisher(const Distribution& nu) {
  return nu.space().is_hypercube() ? fisher_hypercube(nu) : fisher_torus(nu);
}

}  // namespace hwi
