#include "hwi/dynamics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>
#include <string>

#include "hwi/bessel.hpp"
#include "hwi/parallel.hpp"

namespace hwi {

namespace {

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::domain_error("evolution time must be finite and >= 0, got " +
                            std::to_string(t));
  }
}

constexpr std::size_t kMonteCarloBlock = 4096;

}  // namespace

Distribution evolve_hypercube(const Distribution& nu, double t) {
  const StateSpace& space = nu.space();
  if (!space.is_hypercube()) {
    throw std::domain_error("evolve_hypercube requires a hypercube space");
  }
  check_time(t);
  if (t == 0.0) return nu;
  const double move = -0.5 * std::expm1(-2.0 * t);  // (1 - e^{-2t}) / 2
  const double stay = 1.0 - move;                     // (1 + e^{-2t}) / 2
  std::vector<double> w(nu.weights().begin(), nu.weights().end());
  for (int i = 0; i < space.n(); ++i) {
    const State bit = State{1} << i;
    for (State x = 0; x < space.size(); ++x) {
      if (x & bit) continue;
      const double a = w[x];
      const double b = w[x | bit];
      w[x] = stay * a + move * b;
      w[x | bit] = move * a + stay * b;
    }
  }
  return Distribution::normalized(space, std::move(w));
}

std::vector<double> torus_kernel(int n, double t) {
  if (n < 1) throw std::domain_error("torus length must be >= 1");
  check_time(t);
  const auto size = static_cast<std::size_t>(n);
  std::vector<double> kernel(size, 0.0);
  if (t == 0.0) {
    kernel[0] = 1.0;
    return kernel;
  }
  const double x = 2.0 * t;
  // Orders beyond ~x + 20 sqrt(x) carry no mass at double precision; the
  // extra n keeps at least one full wrap in every residue class.
  const int reach = n + static_cast<int>(std::ceil(2.0 * x + 20.0 * std::sqrt(x) + 40.0));
  const auto logs = bessel::log_bessel_i_orders(reach, x);
  std::vector<KahanSum> acc(size);
  for (int m = -reach; m <= reach; ++m) {
    const double p = std::exp(logs[static_cast<std::size_t>(std::abs(m))] - x);
    if (p == 0.0) continue;
    const int j = ((m % n) + n) % n;
    acc[static_cast<std::size_t>(j)].add(p);
  }
  KahanSum total;
  for (std::size_t j = 0; j < size; ++j) {
    kernel[j] = acc[j].value();
    total.add(kernel[j]);
  }
  for (double& k : kernel) k /= total.value();
  return kernel;
}

Distribution evolve_torus(const Distribution& nu, double t) {
  const StateSpace& space = nu.space();
  if (!space.is_torus()) {
    throw std::domain_error("evolve_torus requires a torus space");
  }
  check_time(t);
  if (t == 0.0) return nu;
  const std::size_t n = space.size();
  const auto kernel = torus_kernel(space.n(), t);
  std::vector<double> out(n, 0.0);
  for (std::size_t y = 0; y < n; ++y) {
    KahanSum s;
    for (std::size_t x = 0; x < n; ++x) {
      const double w = nu[x];
      if (w != 0.0) s.add(w * kernel[(y + n - x) % n]);
    }
    out[y] = s.value();
  }
  return Distribution::normalized(space, std::move(out));
}

Distribution evolve(const Distribution& nu, double t) {
  return nu.space().is_hypercube() ? evolve_hypercube(nu, t)
                                   : evolve_torus(nu, t);
}

FlowTrace trace(const Distribution& nu, const std::vector<double>& time_grid) {
  FlowTrace out;
  double prev = 0.0;
  for (double t : time_grid) {
    check_time(t);
    if (t < prev) throw std::domain_error("time grid must be sorted");
    prev = t;
    Distribution state = evolve(nu, t);
    out.times.push_back(t);
    out.entropies.push_back(relative_entropy(state).value);
    out.fishers.push_back(fisher(state));
    out.states.push_back(std::move(state));
  }
  return out;
}

DeBruijnCheck de_bruijn_check(const Distribution& nu, double t,
                              double quad_tol) {
  check_time(t);
  auto integrand = [&nu](double s) {
    const FunctionalValue i = fisher(evolve(nu, s));
    if (i.vacuous) {
      throw std::domain_error("de Bruijn check needs finite Fisher information");
    }
    return i.value;
  };
  DeBruijnCheck out;
  const double h0 = relative_entropy(nu).value;
  out.entropy_drop = h0 - relative_entropy(evolve(nu, t)).value;
  out.fisher_integral = adaptive_simpson(integrand, 0.0, t, quad_tol);
  out.relative_residual = std::abs(out.entropy_drop - out.fisher_integral) /
                          std::max(h0, 1e-6);
  return out;
}

CouplingSample sample_hypercube_coupling(const StateSpace& space, State x0,
                                         State y0, double t,
                                         std::mt19937_64& rng) {
  std::exponential_distribution<double> clock(2.0);
  State x = x0;
  State y = y0;
  for (int i = 0; i < space.n(); ++i) {
    const State bit = State{1} << i;
    bool rang = false;
    State shared = 0;
    for (double when = clock(rng); when <= t; when += clock(rng)) {
      rang = true;
      shared = (rng() >> 63) ? bit : 0;
    }
    if (rang) {
      x = (x & ~bit) | shared;
      y = (y & ~bit) | shared;
    }
  }
  return {x, y, ~(x ^ y) & (space.size() - 1)};
}

CouplingStats simulate_hypercube_coupling(const StateSpace& space, State x0,
                                          State y0, double t,
                                          std::size_t n_samples,
                                          std::uint64_t seed, int threads) {
  if (!space.is_hypercube()) {
    throw std::domain_error("coordinate coupling requires a hypercube space");
  }
  check_time(t);
  if (n_samples == 0) throw std::domain_error("n_samples must be >= 1");
  if (x0 >= space.size() || y0 >= space.size()) {
    throw std::domain_error("coupling start state out of range");
  }
  const int dim = space.n();
  const std::size_t size = space.size();
  const std::uint64_t initially_matched = ~(x0 ^ y0) & (size - 1);

  struct Block {
    std::vector<std::size_t> agree;
    std::vector<std::size_t> x_counts, y_counts;
    std::size_t violations = 0;
  };
  const std::size_t blocks = (n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<Block> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    Block& blk = partial[b];
    blk.agree.assign(static_cast<std::size_t>(dim), 0);
    blk.x_counts.assign(size, 0);
    blk.y_counts.assign(size, 0);
    std::mt19937_64 rng(derive_seed(seed, b));
    const std::size_t begin = b * kMonteCarloBlock;
    const std::size_t end = std::min(n_samples, begin + kMonteCarloBlock);
    for (std::size_t s = begin; s < end; ++s) {
      const CouplingSample sample = sample_hypercube_coupling(space, x0, y0, t, rng);
      const State x = sample.x_end;
      const State y = sample.y_end;
      const std::uint64_t matched = sample.matched;
      for (int i = 0; i < dim; ++i) {
        if (matched >> i & 1U) ++blk.agree[static_cast<std::size_t>(i)];
      }
      if ((initially_matched & ~matched) != 0) ++blk.violations;
      ++blk.x_counts[x];
      ++blk.y_counts[y];
    }
  });

  CouplingStats stats;
  stats.samples = n_samples;
  std::vector<std::size_t> agree(static_cast<std::size_t>(dim), 0);
  std::vector<std::size_t> xc(size, 0), yc(size, 0);
  for (const Block& blk : partial) {
    for (std::size_t i = 0; i < agree.size(); ++i) agree[i] += blk.agree[i];
    for (std::size_t z = 0; z < size; ++z) {
      xc[z] += blk.x_counts[z];
      yc[z] += blk.y_counts[z];
    }
    stats.matched_violations += blk.violations;
  }
  const auto total = static_cast<double>(n_samples);
  for (std::size_t c : agree) stats.coalescence.push_back(static_cast<double>(c) / total);
  for (std::size_t z = 0; z < size; ++z) {
    stats.x_marginal.push_back(static_cast<double>(xc[z]) / total);
    stats.y_marginal.push_back(static_cast<double>(yc[z]) / total);
  }
  return stats;
}

double LiftStats::frequency(long n) const {
  const long k = n - min_position;
  if (k < 0 || k >= static_cast<long>(counts.size())) return 0.0;
  return static_cast<double>(counts[static_cast<std::size_t>(k)]) /
         static_cast<double>(samples);
}

LiftStats simulate_torus_lift(int d, double t, std::size_t n_samples,
                              std::uint64_t seed, int threads) {
  if (d < 0) throw std::domain_error("displacement must be >= 0");
  check_time(t);
  if (n_samples == 0) throw std::domain_error("n_samples must be >= 1");

  struct Block {
    std::map<long, std::size_t> counts;
    std::size_t violations = 0;
  };
  const std::size_t blocks = (n_samples + kMonteCarloBlock - 1) / kMonteCarloBlock;
  std::vector<Block> partial(blocks);

  parallel_for(blocks, threads, [&](std::size_t b) {
    Block& blk = partial[b];
    std::mt19937_64 rng(derive_seed(seed, b));
    std::exponential_distribution<double> clock(1.0);
    const std::size_t begin = b * kMonteCarloBlock;
    const std::size_t end = std::min(n_samples, begin + kMonteCarloBlock);
    for (std::size_t s = begin; s < end; ++s) {
      long x = 0;
      long y = d;
      for (double when = clock(rng); when <= t; when += clock(rng)) {
        const long step = (rng() >> 63) ? 1 : -1;
        x += step;
        y += step;
      }
      if (y - x != d) ++blk.violations;
      ++blk.counts[x];
    }
  });

  std::map<long, std::size_t> merged;
  LiftStats stats;
  stats.samples = n_samples;
  stats.displacement = d;
  for (const Block& blk : partial) {
    for (const auto& [pos, c] : blk.counts) merged[pos] += c;
    stats.displacement_violations += blk.violations;
  }
  stats.min_position = merged.begin()->first;
  const long max_position = merged.rbegin()->first;
  stats.counts.assign(static_cast<std::size_t>(max_position - stats.min_position + 1), 0);
  for (const auto& [pos, c] : merged) {
    stats.counts[static_cast<std::size_t>(pos - stats.min_position)] = c;
  }
  return stats;
}

}  // namespace hwi
