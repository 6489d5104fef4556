#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "hwi/functionals.hpp"
#include "hwi/state_space.hpp"

namespace hwi {

// Hypercube semigroup: every coordinate is resampled uniformly at rate 2, so
// a single coordinate moves with probability (1 - e^{-2t}) / 2 by time t.
Distribution evolve_hypercube(const Distribution& nu, double t);

// Torus heat semigroup for Lf(x) = f(x+1) + f(x-1) - 2 f(x). The kernel is
// the rate-2 walk on Z wrapped mod N,
//   P_t(j) = sum_{m = j mod N} e^{-2t} I_m(2t),
// which equals the Fourier expansion (1/N) sum_k e^{t(2cos(2 pi k/N) - 2)}
// e^{2 pi i k j / N} but keeps relative accuracy in the far tails.
Distribution evolve_torus(const Distribution& nu, double t);

// Dispatches on the space kind.
Distribution evolve(const Distribution& nu, double t);

// Single-site torus kernel P_t(0 -> j), j = 0..N-1.
std::vector<double> torus_kernel(int n, double t);

struct FlowTrace {
  std::vector<double> times;
  std::vector<Distribution> states;
  std::vector<double> entropies;
  std::vector<FunctionalValue> fishers;
};

// Evaluates nu_t, H(nu_t) and I(nu_t) at every grid time. The grid must be
// sorted and nonnegative.
FlowTrace trace(const Distribution& nu, const std::vector<double>& time_grid);

// Adaptive Simpson quadrature to relative tolerance `rel_tol`.
template <typename F>
double adaptive_simpson(F&& f, double a, double b, double rel_tol,
                        int max_depth = 40);

struct DeBruijnCheck {
  double entropy_drop = 0.0;     // H(nu_0) - H(nu_t)
  double fisher_integral = 0.0;  // int_0^t I(nu_s) ds
  double relative_residual = 0.0;  // |drop - integral| / max(H(nu_0), 1e-6)
};

// Requires a distribution with finite Fisher information along the flow.
DeBruijnCheck de_bruijn_check(const Distribution& nu, double t,
                              double quad_tol = 1e-10);

// --- Monte Carlo couplings -------------------------------------------------

struct CouplingSample {
  State x_end = 0;
  State y_end = 0;
  std::uint64_t matched = 0;  // bit i set when coordinate i agrees at time t
};

// One draw of the coordinate coupling started from (x0, y0): each
// coordinate carries an independent rate-2 clock, and at each ring both
// chains set that coordinate to one shared uniform bit.
CouplingSample sample_hypercube_coupling(const StateSpace& space, State x0,
                                         State y0, double t,
                                         std::mt19937_64& rng);

struct CouplingStats {
  std::size_t samples = 0;
  std::vector<double> coalescence;  // per-coordinate agreement frequency
  std::vector<double> x_marginal;   // empirical law of X_t
  std::vector<double> y_marginal;   // empirical law of Y_t
  // Samples in which an initially matched coordinate disagreed at time t.
  std::size_t matched_violations = 0;
};

// Runs n_samples independent coupled pairs. Samples are grouped in fixed
// blocks, each with its own stream derived from (seed, block index), so the
// result is deterministic in (seed, n_samples) for any thread count.
CouplingStats simulate_hypercube_coupling(const StateSpace& space, State x0,
                                          State y0, double t,
                                          std::size_t n_samples,
                                          std::uint64_t seed, int threads = 1);

struct LiftStats {
  std::size_t samples = 0;
  int displacement = 0;
  long min_position = 0;
  std::vector<std::size_t> counts;  // counts[k] = #{X_t = min_position + k}
  std::size_t displacement_violations = 0;

  double frequency(long n) const;
};

// Synchronous pair of rate-1 simple random walks on Z started at 0 and d:
// jumps arrive at total rate 1 and are +-1 with probability 1/2, shared by
// both walks. The law of X_t is e^{-t} I_n(t).
LiftStats simulate_torus_lift(int d, double t, std::size_t n_samples,
                              std::uint64_t seed, int threads = 1);

}  // namespace hwi

#include "hwi/detail/adaptive_simpson.hpp"
