#pragma once

// Reference implementations used only by the tests. They follow the
// definitions directly (long double, no shared code with the library) so a
// bug in the library is unlikely to be reproduced here.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace oracle {

using ld = long double;

inline int hamming(std::size_t x, std::size_t y) {
  int d = 0;
  for (std::size_t z = x ^ y; z != 0; z >>= 1) d += static_cast<int>(z & 1U);
  return d;
}

inline int cycle_distance(long x, long y, long n) {
  const long a = ((x - y) % n + n) % n;
  return static_cast<int>(std::min(a, n - a));
}

inline double entropy(const std::vector<double>& w) {
  ld s = 0;
  const ld size = static_cast<ld>(w.size());
  for (double v : w) {
    if (v > 0) s += static_cast<ld>(v) * std::log(static_cast<ld>(v) * size);
  }
  return static_cast<double>(s);
}

// One term per ordered pair (x, x^i), halved: the definition as written.
inline double fisher_cube(int n, const std::vector<double>& w) {
  ld s = 0;
  for (std::size_t x = 0; x < w.size(); ++x) {
    for (int i = 0; i < n; ++i) {
      const std::size_t y = x ^ (std::size_t{1} << i);
      const ld a = w[y], b = w[x];
      if (a == 0 && b == 0) continue;
      if (a == 0 || b == 0) return std::numeric_limits<double>::infinity();
      s += (a - b) * (std::log(a) - std::log(b));
    }
  }
  return static_cast<double>(s / 2);
}

inline double fisher_cycle(const std::vector<double>& w) {
  ld s = 0;
  const std::size_t n = w.size();
  for (std::size_t x = 0; x < n; ++x) {
    const ld a = w[(x + 1) % n], b = w[x];
    if (a == 0 && b == 0) continue;
    if (a == 0 || b == 0) return std::numeric_limits<double>::infinity();
    s += (a - b) * (std::log(a) - std::log(b));
  }
  return static_cast<double>(s);
}

// Fourier evolution for Lf(x) = f(x+1) + f(x-1) - 2 f(x) on Z/NZ.
inline std::vector<double> evolve_cycle_spectral(const std::vector<double>& w,
                                                 double t) {
  const std::size_t n = w.size();
  const ld pi = std::acos(ld(-1));
  std::vector<std::complex<ld>> hat(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::complex<ld> s = 0;
    for (std::size_t x = 0; x < n; ++x) {
      s += static_cast<ld>(w[x]) * std::polar(ld(1), -2 * pi * ld(k * x % n) / ld(n));
    }
    const ld lambda = 2 * std::cos(2 * pi * ld(k) / ld(n)) - 2;
    hat[k] = s * std::exp(lambda * static_cast<ld>(t));
  }
  std::vector<double> out(n);
  for (std::size_t y = 0; y < n; ++y) {
    std::complex<ld> s = 0;
    for (std::size_t k = 0; k < n; ++k) {
      s += hat[k] * std::polar(ld(1), 2 * pi * ld(k * y % n) / ld(n));
    }
    out[y] = static_cast<double>(s.real() / ld(n));
  }
  return out;
}

// Full transition matrix of the hypercube walk applied by brute force.
inline std::vector<double> evolve_cube_dense(int n, const std::vector<double>& w,
                                             double t) {
  const ld move = (1 - std::exp(-2 * static_cast<ld>(t))) / 2;
  std::vector<double> out(w.size());
  for (std::size_t y = 0; y < w.size(); ++y) {
    ld s = 0;
    for (std::size_t x = 0; x < w.size(); ++x) {
      const int d = hamming(x, y);
      s += static_cast<ld>(w[x]) * std::pow(move, d) * std::pow(1 - move, n - d);
    }
    out[y] = static_cast<double>(s);
  }
  return out;
}

// log I_n(t) from the ascending series in long double with a log-sum-exp.
inline double log_bessel_series(int n, double t) {
  n = std::abs(n);
  if (t == 0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const ld lh = std::log(static_cast<ld>(t) / 2);
  std::vector<ld> logs;
  for (int k = 0; k < 100000; ++k) {
    const ld term = (2 * k + n) * lh - std::lgamma(ld(k + 1)) - std::lgamma(ld(k + n + 1));
    logs.push_back(term);
    if (k > t && term < logs.front() - 80 && term < *std::max_element(logs.begin(), logs.end()) - 80) break;
  }
  const ld m = *std::max_element(logs.begin(), logs.end());
  ld s = 0;
  for (ld v : logs) s += std::exp(v - m);
  return static_cast<double>(m + std::log(s));
}

inline double ground(int cost_kind, int d) {
  switch (cost_kind) {
    case 0: return d;
    case 1: return double(d) * d;
    default: return d + double(d) * d;
  }
}

// Exhaustive vertex enumeration for small transportation problems.
//
// Every vertex of the primal polytope and of the dual polyhedron
// {u + v <= c, u_0 = 0} comes from a spanning tree of K_{m,n}. Trees are
// enumerated once per shape; the dual vertices once per cost matrix.
class VertexEnumerator {
 public:
  VertexEnumerator(int m, int n, std::vector<double> cost) : m_(m), n_(n), c_(std::move(cost)) {
    enumerate_trees();
    for (const auto& tree : trees_) {
      std::vector<double> u(m_), v(n_);
      if (!tree_duals(tree, u, v)) continue;
      bool feasible = true;
      for (int i = 0; i < m_ && feasible; ++i) {
        for (int j = 0; j < n_; ++j) {
          if (u[i] + v[j] > c_[i * n_ + j] + 1e-12) {
            feasible = false;
            break;
          }
        }
      }
      if (feasible) dual_vertices_.push_back({u, v});
    }
  }

  // max over dual vertices of <a, u> + <b, v>.
  double dual_value(const std::vector<double>& a, const std::vector<double>& b) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& [u, v] : dual_vertices_) {
      ld s = 0;
      for (int i = 0; i < m_; ++i) s += ld(a[i]) * u[i];
      for (int j = 0; j < n_; ++j) s += ld(b[j]) * v[j];
      best = std::max(best, static_cast<double>(s));
    }
    return best;
  }

  // min over primal basic feasible solutions; integer supplies keep the
  // tree elimination exact.
  double primal_value(const std::vector<long>& a, const std::vector<long>& b, long q) const {
    ld best = std::numeric_limits<ld>::infinity();
    std::vector<long> flow;
    for (const auto& tree : trees_) {
      if (!tree_flows(tree, a, b, flow)) continue;
      ld s = 0;
      for (std::size_t e = 0; e < tree.size(); ++e) s += ld(flow[e]) * c_[tree[e]];
      best = std::min(best, s);
    }
    return static_cast<double>(best / q);
  }

  std::size_t tree_count() const { return trees_.size(); }
  std::size_t dual_vertex_count() const { return dual_vertices_.size(); }

 private:
  int m_, n_;
  std::vector<double> c_;
  std::vector<std::vector<int>> trees_;  // cell indices i * n + j
  std::vector<std::pair<std::vector<double>, std::vector<double>>> dual_vertices_;

  void enumerate_trees() {
    const int cells = m_ * n_;
    const int k = m_ + n_ - 1;
    std::vector<int> pick;
    std::function<void(int)> rec = [&](int start) {
      if (static_cast<int>(pick.size()) == k) {
        if (is_tree(pick)) trees_.push_back(pick);
        return;
      }
      for (int c = start; c <= cells - (k - static_cast<int>(pick.size())); ++c) {
        pick.push_back(c);
        rec(c + 1);
        pick.pop_back();
      }
    };
    rec(0);
  }

  bool is_tree(const std::vector<int>& cells) const {
    std::vector<int> parent(m_ + n_);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (int c : cells) {
      const int a = find(c / n_), b = find(m_ + c % n_);
      if (a == b) return false;
      parent[a] = b;
    }
    return true;
  }

  bool tree_duals(const std::vector<int>& tree, std::vector<double>& u, std::vector<double>& v) const {
    std::vector<char> ku(m_, 0), kv(n_, 0);
    u[0] = 0;
    ku[0] = 1;
    for (bool progress = true; progress;) {
      progress = false;
      for (int c : tree) {
        const int i = c / n_, j = c % n_;
        if (ku[i] && !kv[j]) {
          v[j] = c_[c] - u[i];
          kv[j] = 1;
          progress = true;
        } else if (kv[j] && !ku[i]) {
          u[i] = c_[c] - v[j];
          ku[i] = 1;
          progress = true;
        }
      }
    }
    return true;
  }

  bool tree_flows(const std::vector<int>& tree, const std::vector<long>& a,
                  const std::vector<long>& b, std::vector<long>& flow) const {
    std::vector<long> supply(m_ + n_);
    for (int i = 0; i < m_; ++i) supply[i] = a[i];
    for (int j = 0; j < n_; ++j) supply[m_ + j] = b[j];
    std::vector<int> degree(m_ + n_, 0);
    for (int c : tree) {
      ++degree[c / n_];
      ++degree[m_ + c % n_];
    }
    flow.assign(tree.size(), -1);
    std::vector<char> done(tree.size(), 0);
    for (std::size_t round = 0; round < tree.size(); ++round) {
      bool found = false;
      for (std::size_t e = 0; e < tree.size() && !found; ++e) {
        if (done[e]) continue;
        const int r = tree[e] / n_, s = m_ + tree[e] % n_;
        int leaf = -1, other = -1;
        if (degree[r] == 1) { leaf = r; other = s; }
        else if (degree[s] == 1) { leaf = s; other = r; }
        if (leaf < 0) continue;
        const long f = supply[leaf];
        if (f < 0) return false;
        flow[e] = f;
        supply[leaf] = 0;
        supply[other] -= f;
        --degree[r];
        --degree[s];
        done[e] = 1;
        found = true;
      }
      if (!found) return false;
    }
    return true;
  }
};

}  // namespace oracle
