#pragma once

#include <limits>
#include <span>
#include <vector>

#include "hwi/state_space.hpp"

namespace hwi {

// Probability vector over a StateSpace. The reference measure is always the
// uniform distribution on the same space.
class Distribution {
 public:
  static constexpr double kSumTolerance = 1e-12;

  // Throws std::domain_error on wrong length, negative or non-finite weights,
  // or a total mass further than kSumTolerance from 1.
  Distribution(StateSpace space, std::vector<double> weights);

  static Distribution uniform(const StateSpace& space);
  static Distribution point_mass(const StateSpace& space, State x);
  // Divides by the total mass first; weights must be nonnegative with a
  // positive sum.
  static Distribution normalized(StateSpace space, std::vector<double> weights);

  const StateSpace& space() const { return space_; }
  std::size_t size() const { return weights_.size(); }
  double operator[](State x) const { return weights_[x]; }
  std::span<const double> weights() const { return weights_; }

  // Density with respect to the uniform measure, size * nu(x).
  double density(State x) const {
    return static_cast<double>(weights_.size()) * weights_[x];
  }

 private:
  StateSpace space_;
  std::vector<double> weights_;
};

// Extended nonnegative real. `vacuous` is set when the value is +infinity
// because one endpoint of an edge carries mass and the other does not.
struct FunctionalValue {
  double value = 0.0;
  bool vacuous = false;

  bool is_finite() const { return !vacuous; }
  static FunctionalValue infinite() {
    return {std::numeric_limits<double>::infinity(), true};
  }
};

// Compensated (Neumaier) accumulator.
class KahanSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

// H(nu | uniform) in nats, with 0 log 0 = 0.
FunctionalValue relative_entropy(const Distribution& nu);

// (1/2) sum_i sum_x (rho(x^i) - rho(x)) (log rho(x^i) - log rho(x)) mu(x)
FunctionalValue fisher_hypercube(const Distribution& nu);

// sum_x (log nu(x+1) - log nu(x)) (nu(x+1) - nu(x))
FunctionalValue fisher_torus(const Distribution& nu);

// Dispatches on the space kind.
FunctionalValue fisher(const Distribution& nu);

}  // namespace hwi
