#include "hwi/state_space.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace hwi {

StateSpace StateSpace::hypercube(int n) {
  if (n < 1 || n > kMaxHypercubeDim) {
    throw std::domain_error("hypercube dimension must be in [1, " +
                            std::to_string(kMaxHypercubeDim) + "], got " +
                            std::to_string(n));
  }
  return StateSpace(SpaceKind::Hypercube, n, std::size_t{1} << n);
}

StateSpace StateSpace::torus(int n) {
  if (n < 2 || n > kMaxTorusLength) {
    throw std::domain_error("torus length must be in [2, " +
                            std::to_string(kMaxTorusLength) + "], got " +
                            std::to_string(n));
  }
  return StateSpace(SpaceKind::Torus, n, static_cast<std::size_t>(n));
}

int StateSpace::diameter() const { return is_hypercube() ? n_ : n_ / 2; }

void StateSpace::check_index(State x) const {
  if (x >= size_) {
    throw std::domain_error("state index " + std::to_string(x) +
                            " out of range for " + descriptor());
  }
}

int StateSpace::distance(State x, State y) const {
  check_index(x);
  check_index(y);
  if (is_hypercube()) {
    return std::popcount(static_cast<std::uint64_t>(x ^ y));
  }
  const std::size_t gap = x > y ? x - y : y - x;
  return static_cast<int>(std::min(gap, size_ - gap));
}

State StateSpace::flip(State x, int coordinate) const {
  if (!is_hypercube()) {
    throw std::domain_error("flip is only defined on the hypercube");
  }
  check_index(x);
  if (coordinate < 0 || coordinate >= n_) {
    throw std::domain_error("coordinate " + std::to_string(coordinate) +
                            " out of range for " + descriptor());
  }
  return x ^ (State{1} << coordinate);
}

std::vector<State> StateSpace::neighbors(State x) const {
  check_index(x);
  std::vector<State> out;
  if (is_hypercube()) {
    out.reserve(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) out.push_back(x ^ (State{1} << i));
    return out;
  }
  const State up = (x + 1) % size_;
  const State down = (x + size_ - 1) % size_;
  out.push_back(up);
  if (down != up) out.push_back(down);
  return out;
}

std::string StateSpace::kind_name() const {
  return is_hypercube() ? "hypercube" : "torus";
}

std::string StateSpace::descriptor() const {
  return kind_name() + ":" + std::to_string(n_);
}

}  // namespace hwi
