#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace hwi {

using State = std::size_t;

enum class SpaceKind { Hypercube, Torus };

// Finite metric state space: the hypercube {0,1}^N with Hamming distance, or
// the cycle Z/NZ with graph distance.
//
// Hypercube states are the integers 0..2^N-1 in binary; coordinate i is bit i
// (LSB = coordinate 0), so flipping coordinate i is `x ^ (1 << i)`.
class StateSpace {
 public:
  static constexpr int kMaxHypercubeDim = 20;
  static constexpr int kMaxTorusLength = 4096;

  static StateSpace hypercube(int n);
  static StateSpace torus(int n);

  SpaceKind kind() const { return kind_; }
  bool is_hypercube() const { return kind_ == SpaceKind::Hypercube; }
  bool is_torus() const { return kind_ == SpaceKind::Torus; }
  int n() const { return n_; }
  std::size_t size() const { return size_; }

  // Largest pairwise distance: N on the hypercube, floor(N/2) on the torus.
  int diameter() const;

  int distance(State x, State y) const;
  State flip(State x, int coordinate) const;

  // Distinct neighbours at distance 1. On the torus with N = 2 both
  // directions land on the same state, which is listed once.
  std::vector<State> neighbors(State x) const;

  // "hypercube" or "torus"
  std::string kind_name() const;
  // e.g. "hypercube:3"
  std::string descriptor() const;

  friend bool operator==(const StateSpace&, const StateSpace&) = default;

 private:
  StateSpace(SpaceKind kind, int n, std::size_t size)
      : kind_(kind), n_(n), size_(size) {}

  void check_index(State x) const;

  SpaceKind kind_;
  int n_;
  std::size_t size_;
};

}  // namespace hwi
