#include "hwi/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "hwi/dynamics.hpp"
#include "hwi/parallel.hpp"
#include "hwi/transport.hpp"

namespace hwi {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::VacuousPass: return "vacuous-pass";
    case Verdict::NotApplicable: return "not-applicable";
    case Verdict::Fail: return "FAIL";
  }
  return "unknown";
}

Verdict decide(bool applicable, bool vacuous, double margin, double tolerance) {
  if (vacuous) return Verdict::VacuousPass;
  if (!applicable) return Verdict::NotApplicable;
  return margin < -tolerance ? Verdict::Fail : Verdict::Pass;
}

double phi(double t) {
  if (!(t > 0.0)) throw std::domain_error("phi(t) requires t > 0");
  const double s = std::exp(-2.0 * t);
  const double one_minus_s = -std::expm1(-2.0 * t);
  return s * (std::log1p(s) - std::log(one_minus_s));
}

double phi_upper_bound(double t) {
  if (!(t > 0.0)) throw std::domain_error("phi bound requires t > 0");
  // 2s / (1 - s) with s = e^{-2t}, avoiding the cancellation for large t
  return 2.0 * std::exp(-2.0 * t) / -std::expm1(-2.0 * t);
}

double combined_bound(double w1, double fisher, double s) {
  if (!(s > 0.0) || s > 1.0) throw std::domain_error("s must lie in (0, 1]");
  return 2.0 * w1 / s - 2.0 * w1 + 0.5 * s * fisher;
}

double optimal_time(double w1, double fisher) {
  if (!(w1 > 0.0) || !(fisher >= 4.0 * w1) || !std::isfinite(fisher)) {
    throw std::domain_error(
        "optimal_time requires fisher >= 4 w1 > 0 (otherwise s* > 1)");
  }
  return 2.0 * std::sqrt(w1 / fisher);
}

namespace {

InequalityReport base_report(const Distribution& nu) {
  InequalityReport r;
  r.space = nu.space().kind_name();
  r.n = nu.space().n();
  return r;
}

void finish(InequalityReport& r, double tolerance) {
  r.margin = r.vacuous ? std::numeric_limits<double>::infinity() : r.rhs - r.lhs;
  if (r.vacuous) r.rhs = std::numeric_limits<double>::infinity();
  r.verdict = decide(r.applicable, r.vacuous, r.margin, tolerance);
}

void require_kind(const Distribution& nu, SpaceKind kind, const char* what) {
  if (nu.space().kind() != kind) {
    throw std::domain_error(std::string(what) + " does not apply to " +
                            nu.space().descriptor());
  }
}

}  // namespace

InequalityReport check_hypercube_hwi(const Distribution& nu, double tolerance) {
  require_kind(nu, SpaceKind::Hypercube, "hypercube HWI");
  InequalityReport r = base_report(nu);
  const FunctionalValue h = relative_entropy(nu);
  const FunctionalValue i = fisher_hypercube(nu);
  const double w = w1(nu, Distribution::uniform(nu.space()));
  r.H = h.value;
  r.I = i.value;
  r.W1 = w;
  r.lhs = h.value;
  r.vacuous = i.vacuous;
  r.applicable = i.vacuous || i.value >= 4.0 * w;
  if (!i.vacuous) r.rhs = 2.0 * std::sqrt(w * i.value) - 2.0 * w;
  finish(r, tolerance);
  return r;
}

InequalityReport check_torus_hwi(const Distribution& nu, double tolerance) {
  require_kind(nu, SpaceKind::Torus, "torus HWI");
  InequalityReport r = base_report(nu);
  const Distribution mu = Distribution::uniform(nu.space());
  const FunctionalValue h = relative_entropy(nu);
  const FunctionalValue i = fisher_torus(nu);
  const double c = wc(nu, mu);
  r.H = h.value;
  r.I = i.value;
  r.W1 = w1(nu, mu);
  r.W2 = w2(nu, mu);
  r.Wc = c;
  r.lhs = h.value;
  r.vacuous = i.vacuous;
  if (!i.vacuous) r.rhs = std::sqrt(2.0) * c * std::sqrt(i.value);
  finish(r, tolerance);
  return r;
}

InequalityReport check_mlsi(const Distribution& nu, double tolerance) {
  require_kind(nu, SpaceKind::Hypercube, "hypercube MLSI");
  InequalityReport r = base_report(nu);
  const FunctionalValue h = relative_entropy(nu);
  const FunctionalValue i = fisher_hypercube(nu);
  r.H = h.value;
  r.I = i.value;
  r.lhs = h.value;
  r.vacuous = i.vacuous;
  if (!i.vacuous) r.rhs = 0.5 * i.value;
  finish(r, tolerance);
  return r;
}

std::vector<InequalityReport> check_flow_bounds(
    const Distribution& nu, const std::vector<double>& t_grid,
    double tolerance) {
  const Distribution mu = Distribution::uniform(nu.space());
  const bool cube = nu.space().is_hypercube();
  std::optional<double> w1_value, wc_value;
  double transport_cost = 0.0;
  if (cube) {
    w1_value = w1(nu, mu);
    transport_cost = *w1_value;
  } else {
    wc_value = wc(nu, mu);
    transport_cost = *wc_value * *wc_value;
  }
  std::vector<InequalityReport> out;
  out.reserve(t_grid.size());
  for (double t : t_grid) {
    if (!(t > 0.0)) throw std::domain_error("flow bound times must be > 0");
    InequalityReport r = base_report(nu);
    const Distribution evolved = cube ? evolve_hypercube(nu, t)
                                      : evolve_torus(nu, 0.5 * t);
    r.family = "t=" + format_double(t);
    r.H = relative_entropy(evolved).value;
    r.W1 = w1_value;
    r.Wc = wc_value;
    r.lhs = *r.H;
    r.rhs = cube ? phi(t) * transport_cost : transport_cost / (2.0 * t);
    finish(r, tolerance);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

double parse_number(std::string_view text, std::string_view spec) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || text.empty()) {
    throw std::invalid_argument("malformed number '" + std::string(text) +
                                "' in family spec '" + std::string(spec) + "'");
  }
  return value;
}

}  // namespace

DistributionFamily DistributionFamily::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  const std::string_view head = spec.substr(0, colon);
  const std::string_view rest =
      colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
  const bool has_arg = colon != std::string_view::npos;
  DistributionFamily f;
  if (head == "dirichlet") {
    f.kind = Kind::Dirichlet;
    f.alpha = has_arg ? parse_number(rest, spec) : 1.0;
    if (!(f.alpha > 0.0)) throw std::invalid_argument("dirichlet alpha must be > 0");
  } else if (head == "bernoulli") {
    f.kind = Kind::ProductBernoulli;
    if (has_arg) {
      f.p = parse_number(rest, spec);
      if (!(*f.p >= 0.0 && *f.p <= 1.0)) {
        throw std::invalid_argument("bernoulli p must lie in [0, 1]");
      }
    }
  } else if (head == "sparse") {
    f.kind = Kind::SparseSupport;
    const double k = has_arg ? parse_number(rest, spec) : -1.0;
    if (!(k >= 1.0) || k != std::floor(k)) {
      throw std::invalid_argument("sparse needs an integer support size >= 1");
    }
    f.k = static_cast<int>(k);
  } else if (head == "point-mass") {
    f.kind = Kind::PointMass;
    if (has_arg) {
      const double x = parse_number(rest, spec);
      if (!(x >= 0.0) || x != std::floor(x)) {
        throw std::invalid_argument("point-mass location must be an integer >= 0");
      }
      f.location = static_cast<State>(x);
    }
  } else if (head == "pushforward") {
    f.kind = Kind::Pushforward;
    const auto second = rest.find(':');
    if (!has_arg || second == std::string_view::npos) {
      throw std::invalid_argument("pushforward spec is pushforward:<t>:<base>");
    }
    f.t = parse_number(rest.substr(0, second), spec);
    if (!(f.t >= 0.0)) throw std::invalid_argument("pushforward time must be >= 0");
    f.base = std::make_shared<const DistributionFamily>(parse(rest.substr(second + 1)));
  } else {
    throw std::invalid_argument("unknown distribution family '" +
                                std::string(spec) + "'");
  }
  return f;
}

std::string DistributionFamily::to_string() const {
  switch (kind) {
    case Kind::Dirichlet: return "dirichlet:" + format_double(alpha);
    case Kind::ProductBernoulli:
      return p ? "bernoulli:" + format_double(*p) : std::string("bernoulli");
    case Kind::SparseSupport: return "sparse:" + std::to_string(k);
    case Kind::PointMass:
      return location ? "point-mass:" + std::to_string(*location)
                      : std::string("point-mass");
    case Kind::Pushforward:
      return "pushforward:" + format_double(t) + ":" + base->to_string();
  }
  return "unknown";
}

namespace {

std::vector<double> gamma_weights(std::size_t count, double alpha,
                                  std::mt19937_64& rng) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> w(count);
  // Tiny alpha can underflow every draw; redraw in that case.
  for (int attempt = 0; attempt < 64; ++attempt) {
    double total = 0.0;
    for (double& x : w) {
      x = gamma(rng);
      total += x;
    }
    if (total > 0.0) return w;
  }
  throw std::domain_error("dirichlet sampling underflowed; alpha too small");
}

}  // namespace

Distribution sample(const DistributionFamily& family, const StateSpace& space,
                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const std::size_t size = space.size();
  using Kind = DistributionFamily::Kind;
  switch (family.kind) {
    case Kind::Dirichlet:
      if (!(family.alpha > 0.0)) throw std::domain_error("dirichlet alpha must be > 0");
      return Distribution::normalized(space, gamma_weights(size, family.alpha, rng));

    case Kind::ProductBernoulli: {
      if (!space.is_hypercube()) {
        throw std::domain_error("product-Bernoulli family needs a hypercube");
      }
      std::uniform_real_distribution<double> unif(0.0, 1.0);
      std::vector<double> p(static_cast<std::size_t>(space.n()));
      for (double& pi : p) pi = family.p ? *family.p : unif(rng);
      std::vector<double> w(size, 1.0);
      for (State x = 0; x < size; ++x) {
        for (int i = 0; i < space.n(); ++i) {
          const double pi = p[static_cast<std::size_t>(i)];
          w[x] *= (x >> i & 1U) ? pi : 1.0 - pi;
        }
      }
      return Distribution::normalized(space, std::move(w));
    }

    case Kind::SparseSupport: {
      if (family.k < 1 || static_cast<std::size_t>(family.k) > size) {
        throw std::domain_error("sparse support size must be in [1, " +
                                std::to_string(size) + "]");
      }
      std::vector<State> idx(size);
      std::iota(idx.begin(), idx.end(), State{0});
      std::shuffle(idx.begin(), idx.end(), rng);
      const auto k = static_cast<std::size_t>(family.k);
      const auto g = gamma_weights(k, 1.0, rng);
      std::vector<double> w(size, 0.0);
      for (std::size_t j = 0; j < k; ++j) w[idx[j]] = g[j];
      return Distribution::normalized(space, std::move(w));
    }

    case Kind::PointMass: {
      State x = 0;
      if (family.location) {
        x = *family.location;
        if (x >= size) throw std::domain_error("point-mass location out of range");
      } else {
        x = std::uniform_int_distribution<State>(0, size - 1)(rng);
      }
      return Distribution::point_mass(space, x);
    }

    case Kind::Pushforward: {
      if (!family.base) throw std::domain_error("pushforward family without base");
      const Distribution base = sample(*family.base, space, derive_seed(seed, 1));
      return evolve(base, family.t);
    }
  }
  throw std::domain_error("unknown distribution family");
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  if (ec != std::errc{}) throw std::runtime_error("format_double failed");
  return std::string(buf, ptr);
}

}  // namespace hwi
