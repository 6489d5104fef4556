#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hwi/functionals.hpp"
#include "hwi/state_space.hpp"

namespace hwi {

inline constexpr double kMarginTolerance = 1e-9;

enum class Verdict { Pass, VacuousPass, NotApplicable, Fail };

std::string to_string(Verdict v);

// One inequality trial. margin = rhs - lhs. Functional fields left empty were
// not computed for this check.
struct InequalityReport {
  std::uint64_t trial_id = 0;
  std::string space;   // "hypercube", "torus", "bessel", ...
  int n = 0;
  std::string family;  // generator spec plus everything needed to replay
  std::optional<double> H, I, W1, W2, Wc;
  bool applicable = true;
  bool vacuous = false;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::Pass;
};

// FAIL iff applicable, not vacuous and margin < -tolerance.
Verdict decide(bool applicable, bool vacuous, double margin,
               double tolerance = kMarginTolerance);

// phi(t) = e^{-2t} log((1 + e^{-2t}) / (1 - e^{-2t})): relative entropy of
// Bernoulli((1 - e^{-2t})/2) with respect to Bernoulli((1 + e^{-2t})/2).
double phi(double t);
// 2 / (1 - e^{-2t}) - 2, the upper bound used for phi.
double phi_upper_bound(double t);

// With s = 1 - e^{-2t}: 2 w1 / s - 2 w1 + s fisher / 2.
double combined_bound(double w1, double fisher, double s);
// Minimizer s* = 2 sqrt(w1 / fisher) of combined_bound; requires
// fisher >= 4 w1 > 0 so that s* <= 1.
double optimal_time(double w1, double fisher);

// H <= 2 sqrt(W1 I) - 2 W1 whenever I >= 4 W1.
InequalityReport check_hypercube_hwi(const Distribution& nu,
                                     double tolerance = kMarginTolerance);
// H <= sqrt(2) Wc sqrt(I).
InequalityReport check_torus_hwi(const Distribution& nu,
                                 double tolerance = kMarginTolerance);
// H <= I / 2 on the hypercube.
InequalityReport check_mlsi(const Distribution& nu,
                            double tolerance = kMarginTolerance);

// Reverse transport-entropy bounds along the flow, one report per grid time:
// hypercube H(nu_t) <= phi(t) W1(nu, mu); torus H(nu_t) <= Wc(nu, mu)^2 / (2t)
// where t runs on the clock of the rate-1 walk on Z, i.e. nu_t is
// evolve_torus(nu, t / 2).
std::vector<InequalityReport> check_flow_bounds(
    const Distribution& nu, const std::vector<double>& t_grid,
    double tolerance = kMarginTolerance);

// Random test distributions. Spec strings:
//   dirichlet:<alpha>        Dirichlet over the whole simplex
//   bernoulli[:<p>]          product Bernoulli, p per coordinate (uniform
//                            random per coordinate when omitted); hypercube
//   sparse:<k>               Dirichlet(1) on a uniformly random k-subset
//   point-mass[:<x>]         Dirac at x, or at a uniformly random state
//   pushforward:<t>:<base>   base sample evolved along the semigroup for t
struct DistributionFamily {
  enum class Kind { Dirichlet, ProductBernoulli, SparseSupport, PointMass, Pushforward };

  Kind kind = Kind::Dirichlet;
  double alpha = 1.0;
  std::optional<double> p;
  int k = 0;
  std::optional<State> location;
  double t = 0.0;
  std::shared_ptr<const DistributionFamily> base;

  // Throws std::invalid_argument on malformed specs.
  static DistributionFamily parse(std::string_view spec);
  std::string to_string() const;
};

// Deterministic in (family, space, seed).
Distribution sample(const DistributionFamily& family, const StateSpace& space,
                    std::uint64_t seed);

// Shortest round-trip decimal form; "inf" for +infinity.
std::string format_double(double x);

}  // namespace hwi
