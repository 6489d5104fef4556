#pragma once

#include <vector>

namespace hwi::bessel {

// log I_|n|(t) for integer order. At t = 0: log I_0(0) = 0 and
// log I_n(0) = -inf for n != 0. Throws std::domain_error for t < 0.
//
// Small t relative to the order uses the ascending series; otherwise the
// ratio continued fraction normalized by sum_n I_n(t) = e^t.
double log_bessel_i(int n, double t);

// Ascending series sum_k (t/2)^(2k+n) / (k! (k+n)!), summed with running
// rescaling so it never overflows. Cost grows like t.
double log_bessel_i_series(int n, double t);

// log I_k(t) for k = 0..max_order from backward recurrence on the ratios
// I_k / I_{k-1} and the normalization identity. Requires t > 0.
std::vector<double> log_bessel_i_orders(int max_order, double t);

// Caches log I_k(t) for 0 <= k <= max_order at a fixed t > 0.
class BesselEvaluator {
 public:
  BesselEvaluator(int max_order, double t);

  double t() const { return t_; }
  int max_order() const { return max_order_; }
  // Uses I_n = I_{-n}; throws std::out_of_range beyond max_order.
  double log_i(int n) const;

 private:
  int max_order_;
  double t_;
  std::vector<double> log_values_;
};

// Symmetric integer law, non-increasing in |m|, stored on [-radius, radius].
class UnimodalSymmetricLaw {
 public:
  // pmf[i] is the probability of m = i - radius. Validates symmetry,
  // unimodality and total mass (1e-12); throws std::domain_error otherwise.
  explicit UnimodalSymmetricLaw(std::vector<double> pmf);

  static UnimodalSymmetricLaw point_mass();
  // Uniform on {-k, ..., k}.
  static UnimodalSymmetricLaw uniform_window(int k);
  // Binomial(2k, 1/2) - k.
  static UnimodalSymmetricLaw symmetric_binomial(int k);
  // Position at time t of the rate-1 walk on Z, e^{-t} I_m(t), truncated
  // once the retained mass reaches 1 - 1e-14.
  static UnimodalSymmetricLaw walk_law(double t);

  int radius() const { return radius_; }
  double pmf(int m) const;

 private:
  int radius_;
  std::vector<double> pmf_;
};

// log(I_n / I_{n-d}) - (1 + d)(d - 2n) / (2t); requires 2n >= d >= 0.
double check_ratio_bound(int n, int d, double t);
double check_ratio_bound(const BesselEvaluator& ev, int n, int d);

// log(I_{n+1}/I_n) - log(sqrt(1 + ((n+1)/t)^2) - (n+1)/t); requires n >= 0.
double check_amos_bound(int n, double t);
double check_amos_bound(const BesselEvaluator& ev, int n);

// h(n) = (1 + d)(d - 2n) / (2t) - log(I_n / I_{n-d}).
double h_function(const BesselEvaluator& ev, int n, int d);

// (d + d^2) / (2t) - E[log I_M(t) - log I_{M-d}(t)] for M ~ law.
double check_unimodal_expectation(const UnimodalSymmetricLaw& law, int d,
                                  double t);

// f(t, x) = log(sqrt(1 + ((x+1)/t)^2) - (x+1)/t)
//           - (x^2 / (t c(x)) - (x+1)^2 / (t c(x+1))),  c(x) = 2(1 - 1/(x+1)),
// with x^2 / c(x) written as x (x + 1) / 2 so x = 0 is regular.
double f_function(double t, double x);

struct FMonotonicityReport {
  std::size_t points = 0;
  std::size_t dx_violations = 0;   // d/dx f < -1e-8
  std::size_t dt_violations = 0;   // d/dt f(t, 0) > 1e-8
  std::size_t negative_values = 0; // f < -1e-8
  double min_dx = 0.0;
  double max_dt_at_zero = 0.0;
  double min_f = 0.0;
  double limit_value = 0.0;  // f(1e6, 0)

  bool ok() const {
    return dx_violations == 0 && dt_violations == 0 && negative_values == 0;
  }
};

FMonotonicityReport check_f_monotonicity(const std::vector<double>& t_grid,
                                         const std::vector<double>& x_grid);

}  // namespace hwi::bessel
