#include "hwi/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hwi/functionals.hpp"

namespace hwi::bessel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_t(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::domain_error("Bessel argument must be finite and >= 0, got " +
                            std::to_string(t));
  }
}

// Amos-type lower bound for I_{k}/I_{k-1}; accurate enough to seed the
// backward recurrence.
double ratio_seed(int k, double t) {
  const double kk = static_cast<double>(k);
  return t / (kk + std::hypot(kk, t));
}

}  // namespace

double log_bessel_i_series(int n, double t) {
  check_t(t);
  n = std::abs(n);
  if (t == 0.0) return n == 0 ? 0.0 : kNegInf;
  const double q = 0.25 * t * t;
  const double nn = static_cast<double>(n);
  constexpr double kRescale = 1e280;
  const double log_rescale = std::log(kRescale);
  double term = 1.0;
  double log_offset = 0.0;
  KahanSum sum;
  sum.add(1.0);
  for (long k = 0;; ++k) {
    const double kk = static_cast<double>(k + 1);
    const double denom = kk * (kk + nn);
    term *= q / denom;
    sum.add(term);
    if (sum.value() > kRescale) {
      const double s = sum.value() / kRescale;
      sum = KahanSum{};
      sum.add(s);
      term /= kRescale;
      log_offset += log_rescale;
    }
    // Terms shrink once denom exceeds q.
    if (denom > q && term < 1e-17 * sum.value()) break;
  }
  return nn * std::log(0.5 * t) - std::lgamma(nn + 1.0) +
         std::log(sum.value()) + log_offset;
}

std::vector<double> log_bessel_i_orders(int max_order, double t) {
  check_t(t);
  if (max_order < 0) throw std::domain_error("max_order must be >= 0");
  if (t == 0.0) {
    std::vector<double> out(static_cast<std::size_t>(max_order) + 1, kNegInf);
    out[0] = 0.0;
    return out;
  }
  // The normalization sum needs orders out to ~10 sqrt(t) past which
  // I_k / I_0 is negligible; the ratio recurrence is contracting beyond t.
  const double reach = std::max({static_cast<double>(max_order), std::ceil(t),
                                 std::ceil(10.0 * std::sqrt(t) + 40.0)});
  const int top = static_cast<int>(reach) + 64;

  // log_ratio[k] = log(I_k / I_{k-1}) for k = 1..top.
  std::vector<double> log_ratio(static_cast<std::size_t>(top) + 1, 0.0);
  double q = ratio_seed(top + 1, t);
  for (int k = top; k >= 1; --k) {
    q = 1.0 / (2.0 * static_cast<double>(k) / t + q);
    log_ratio[static_cast<std::size_t>(k)] = std::log(q);
  }

  // e^t = I_0 (1 + 2 sum_{k>=1} I_k / I_0)
  KahanSum tail;
  double log_rel = 0.0;
  for (int k = 1; k <= top; ++k) {
    log_rel += log_ratio[static_cast<std::size_t>(k)];
    const double r = std::exp(log_rel);
    tail.add(r);
    if (r < 1e-18 * tail.value() && k > max_order) break;
  }
  const double log_i0 = t - std::log1p(2.0 * tail.value());

  std::vector<double> out(static_cast<std::size_t>(max_order) + 1);
  out[0] = log_i0;
  KahanSum acc;
  acc.add(log_i0);
  for (int k = 1; k <= max_order; ++k) {
    acc.add(log_ratio[static_cast<std::size_t>(k)]);
    out[static_cast<std::size_t>(k)] = acc.value();
  }
  return out;
}

double log_bessel_i(int n, double t) {
  check_t(t);
  n = std::abs(n);
  if (t == 0.0) return n == 0 ? 0.0 : kNegInf;
  if (t * t <= 16.0 * (static_cast<double>(n) + 1.0)) {
    return log_bessel_i_series(n, t);
  }
  return log_bessel_i_orders(n, t)[static_cast<std::size_t>(n)];
}

BesselEvaluator::BesselEvaluator(int max_order, double t)
    : max_order_(max_order), t_(t) {
  if (!(t > 0.0)) throw std::domain_error("BesselEvaluator requires t > 0");
  log_values_ = log_bessel_i_orders(max_order, t);
}

double BesselEvaluator::log_i(int n) const {
  const int k = std::abs(n);
  if (k > max_order_) {
    throw std::out_of_range("Bessel order " + std::to_string(n) +
                            " exceeds evaluator max order " +
                            std::to_string(max_order_));
  }
  return log_values_[static_cast<std::size_t>(k)];
}

UnimodalSymmetricLaw::UnimodalSymmetricLaw(std::vector<double> pmf)
    : radius_(0), pmf_(std::move(pmf)) {
  if (pmf_.empty() || pmf_.size() % 2 == 0) {
    throw std::domain_error("symmetric law needs an odd-length pmf");
  }
  radius_ = static_cast<int>(pmf_.size() / 2);
  KahanSum total;
  for (double p : pmf_) {
    if (!(p >= 0.0)) throw std::domain_error("pmf entries must be >= 0");
    total.add(p);
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw std::domain_error("pmf sums to " + std::to_string(total.value()));
  }
  const auto r = static_cast<std::size_t>(radius_);
  for (std::size_t k = 1; k <= r; ++k) {
    const double left = pmf_[r - k];
    const double right = pmf_[r + k];
    if (std::abs(left - right) > 1e-15) {
      throw std::domain_error("pmf is not symmetric about 0");
    }
    if (right > pmf_[r + k - 1] + 1e-15) {
      throw std::domain_error("pmf is not non-increasing in |m|");
    }
  }
}

UnimodalSymmetricLaw UnimodalSymmetricLaw::point_mass() {
  return UnimodalSymmetricLaw({1.0});
}

UnimodalSymmetricLaw UnimodalSymmetricLaw::uniform_window(int k) {
  if (k < 0) throw std::domain_error("window half-width must be >= 0");
  const auto len = static_cast<std::size_t>(2 * k + 1);
  return UnimodalSymmetricLaw(
      std::vector<double>(len, 1.0 / static_cast<double>(len)));
}

UnimodalSymmetricLaw UnimodalSymmetricLaw::symmetric_binomial(int k) {
  if (k < 0) throw std::domain_error("binomial half-width must be >= 0");
  const int trials = 2 * k;
  std::vector<double> pmf(static_cast<std::size_t>(trials) + 1);
  for (int j = 0; j <= trials; ++j) {
    const double log_p = std::lgamma(trials + 1.0) - std::lgamma(j + 1.0) -
                         std::lgamma(trials - j + 1.0) -
                         trials * std::log(2.0);
    pmf[static_cast<std::size_t>(j)] = std::exp(log_p);
  }
  // Force exact symmetry and unit mass.
  for (int j = 0; j < k; ++j) {
    pmf[static_cast<std::size_t>(trials - j)] = pmf[static_cast<std::size_t>(j)];
  }
  KahanSum total;
  for (double p : pmf) total.add(p);
  for (double& p : pmf) p /= total.value();
  return UnimodalSymmetricLaw(std::move(pmf));
}

UnimodalSymmetricLaw UnimodalSymmetricLaw::walk_law(double t) {
  if (!(t > 0.0)) return point_mass();
  const int max_order = static_cast<int>(std::ceil(t + 20.0 * std::sqrt(t) + 40.0));
  const auto logs = log_bessel_i_orders(max_order, t);
  std::vector<double> half;  // m >= 0
  KahanSum mass;
  for (int m = 0; m <= max_order; ++m) {
    const double p = std::exp(logs[static_cast<std::size_t>(m)] - t);
    half.push_back(p);
    mass.add(m == 0 ? p : 2.0 * p);
    if (mass.value() >= 1.0 - 1e-14) break;
  }
  std::vector<double> pmf(2 * half.size() - 1);
  const std::size_t r = half.size() - 1;
  for (std::size_t k = 0; k <= r; ++k) {
    pmf[r + k] = half[k];
    pmf[r - k] = half[k];
  }
  return UnimodalSymmetricLaw(std::move(pmf));
}

double UnimodalSymmetricLaw::pmf(int m) const {
  if (std::abs(m) > radius_) return 0.0;
  return pmf_[static_cast<std::size_t>(m + radius_)];
}

namespace {

void check_ratio_args(int n, int d) {
  if (d < 0 || 2 * n < d) {
    throw std::domain_error("ratio bound requires n >= d/2 >= 0, got n=" +
                            std::to_string(n) + " d=" + std::to_string(d));
  }
}

double ratio_bound_rhs(int n, int d, double t) {
  return (1.0 + d) * (static_cast<double>(d) - 2.0 * n) / (2.0 * t);
}

double log_amos_bound(int n, double t) {
  const double a = (static_cast<double>(n) + 1.0) / t;
  // sqrt(1 + a^2) - a, rewritten to avoid cancellation for large a.
  return -std::log(std::hypot(1.0, a) + a);
}

}  // namespace

double check_ratio_bound(const BesselEvaluator& ev, int n, int d) {
  check_ratio_args(n, d);
  if (d == 0) return 0.0;
  return ev.log_i(n) - ev.log_i(n - d) - ratio_bound_rhs(n, d, ev.t());
}

double check_ratio_bound(int n, int d, double t) {
  check_ratio_args(n, d);
  if (!(t > 0.0)) throw std::domain_error("ratio bound requires t > 0");
  return check_ratio_bound(BesselEvaluator(n, t), n, d);
}

double check_amos_bound(const BesselEvaluator& ev, int n) {
  if (n < 0) throw std::domain_error("Amos bound requires n >= 0");
  return ev.log_i(n + 1) - ev.log_i(n) - log_amos_bound(n, ev.t());
}

double check_amos_bound(int n, double t) {
  if (!(t > 0.0)) throw std::domain_error("Amos bound requires t > 0");
  if (n < 0) throw std::domain_error("Amos bound requires n >= 0");
  return check_amos_bound(BesselEvaluator(n + 1, t), n);
}

double h_function(const BesselEvaluator& ev, int n, int d) {
  return ratio_bound_rhs(n, d, ev.t()) - (ev.log_i(n) - ev.log_i(n - d));
}

double check_unimodal_expectation(const UnimodalSymmetricLaw& law, int d,
                                  double t) {
  if (d < 0) throw std::domain_error("displacement must be >= 0");
  if (!(t > 0.0)) throw std::domain_error("lemma check requires t > 0");
  const BesselEvaluator ev(law.radius() + d, t);
  KahanSum expectation;
  for (int m = -law.radius(); m <= law.radius(); ++m) {
    const double p = law.pmf(m);
    if (p > 0.0) expectation.add(p * (ev.log_i(m) - ev.log_i(m - d)));
  }
  const double dd = static_cast<double>(d);
  return (dd + dd * dd) / (2.0 * t) - expectation.value();
}

double f_function(double t, double x) {
  if (!(t > 0.0) || !(x >= 0.0)) {
    throw std::domain_error("f(t, x) requires t > 0 and x >= 0");
  }
  const double a = (x + 1.0) / t;
  const double quad_x = x * (x + 1.0) / 2.0;            // x^2 / c(x)
  const double quad_x1 = (x + 1.0) * (x + 2.0) / 2.0;   // (x+1)^2 / c(x+1)
  return -std::log(std::hypot(1.0, a) + a) - (quad_x / t - quad_x1 / t);
}

namespace {

// Central difference with one Richardson step.
template <typename F>
double derivative(F&& f, double at, double h) {
  const double d1 = (f(at + h) - f(at - h)) / (2.0 * h);
  const double h2 = 0.5 * h;
  const double d2 = (f(at + h2) - f(at - h2)) / (2.0 * h2);
  return (4.0 * d2 - d1) / 3.0;
}

}  // namespace

FMonotonicityReport check_f_monotonicity(const std::vector<double>& t_grid,
                                         const std::vector<double>& x_grid) {
  constexpr double kTol = 1e-8;
  FMonotonicityReport rep;
  rep.min_dx = std::numeric_limits<double>::infinity();
  rep.max_dt_at_zero = -std::numeric_limits<double>::infinity();
  rep.min_f = std::numeric_limits<double>::infinity();
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::domain_error("t grid must be positive");
    for (double x : x_grid) {
      if (!(x > 0.0)) throw std::domain_error("x grid must be positive");
      const double hx = std::min(1e-4 * std::max(1.0, x), 0.25 * x);
      const double dx = derivative([t](double xx) { return f_function(t, xx); },
                                   x, hx);
      const double fv = f_function(t, x);
      ++rep.points;
      rep.min_dx = std::min(rep.min_dx, dx);
      rep.min_f = std::min(rep.min_f, fv);
      if (dx < -kTol) ++rep.dx_violations;
      if (fv < -kTol) ++rep.negative_values;
    }
    const double dt = derivative([](double tt) { return f_function(tt, 0.0); },
                                 t, 1e-4 * t);
    const double f0 = f_function(t, 0.0);
    rep.max_dt_at_zero = std::max(rep.max_dt_at_zero, dt);
    rep.min_f = std::min(rep.min_f, f0);
    if (dt > kTol) ++rep.dt_violations;
    if (f0 < -kTol) ++rep.negative_values;
  }
  rep.limit_value = f_function(1e6, 0.0);
  return rep;
}

}  // namespace hwi::bessel
