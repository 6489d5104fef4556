#include <doctest.h>

#include <stdexcept>

#include "hwi/state_space.hpp"
#include "oracles.hpp"

using hwi::StateSpace;

TEST_CASE("distance examples") {
  const auto cube = StateSpace::hypercube(3);
  CHECK(cube.distance(0b000, 0b000) == 0);
  CHECK(cube.distance(0b000, 0b111) == 3);
  CHECK(StateSpace::torus(5).distance(0, 4) == 1);
}

TEST_CASE("flip toggles bit i") {
  const auto cube = StateSpace::hypercube(2);
  CHECK(cube.flip(0b00, 0) == 0b01);
  CHECK(cube.flip(0b00, 1) == 0b10);
  for (int n = 1; n <= 6; ++n) {
    const auto s = StateSpace::hypercube(n);
    for (hwi::State x = 0; x < s.size(); ++x) {
      for (int i = 0; i < n; ++i) {
        CHECK(s.flip(s.flip(x, i), i) == x);
        CHECK(s.distance(x, s.flip(x, i)) == 1);
      }
    }
  }
}

TEST_CASE("neighbors") {
  CHECK(StateSpace::hypercube(3).neighbors(0) == std::vector<hwi::State>{1, 2, 4});
  CHECK(StateSpace::torus(5).neighbors(0) == std::vector<hwi::State>{1, 4});
  CHECK(StateSpace::torus(2).neighbors(0) == std::vector<hwi::State>{1});
  for (int n : {2, 3, 7, 16}) {
    const auto s = StateSpace::torus(n);
    for (hwi::State x = 0; x < s.size(); ++x) {
      for (auto y : s.neighbors(x)) CHECK(s.distance(x, y) == 1);
    }
  }
}

TEST_CASE("hypercube distance is popcount, exhaustive to N=8") {
  for (int n = 1; n <= 8; ++n) {
    const auto s = StateSpace::hypercube(n);
    CHECK(s.size() == (std::size_t{1} << n));
    CHECK(s.diameter() == n);
    for (hwi::State x = 0; x < s.size(); ++x) {
      for (hwi::State y = 0; y < s.size(); ++y) {
        REQUIRE(s.distance(x, y) == oracle::hamming(x, y));
      }
    }
  }
}

TEST_CASE("torus distance bounded by floor(N/2), exhaustive to N=64") {
  for (int n = 2; n <= 64; ++n) {
    const auto s = StateSpace::torus(n);
    CHECK(s.size() == static_cast<std::size_t>(n));
    CHECK(s.diameter() == n / 2);
    for (hwi::State x = 0; x < s.size(); ++x) {
      for (hwi::State y = 0; y < s.size(); ++y) {
        const int d = s.distance(x, y);
        REQUIRE(d == oracle::cycle_distance(long(x), long(y), n));
        REQUIRE(d <= n / 2);
      }
    }
  }
}

TEST_CASE("metric axioms on small spaces") {
  for (const auto& s : {StateSpace::hypercube(4), StateSpace::torus(9), StateSpace::torus(2)}) {
    for (hwi::State x = 0; x < s.size(); ++x) {
      for (hwi::State y = 0; y < s.size(); ++y) {
        CHECK(s.distance(x, y) == s.distance(y, x));
        CHECK((s.distance(x, y) == 0) == (x == y));
        for (hwi::State z = 0; z < s.size(); ++z) {
          CHECK(s.distance(x, z) <= s.distance(x, y) + s.distance(y, z));
        }
      }
    }
  }
}

TEST_CASE("size limits and descriptors") {
  CHECK_THROWS_AS(StateSpace::hypercube(0), std::domain_error);
  CHECK_THROWS_AS(StateSpace::hypercube(21), std::domain_error);
  CHECK_THROWS_AS(StateSpace::torus(1), std::domain_error);
  CHECK_THROWS_AS(StateSpace::torus(4097), std::domain_error);
  CHECK_NOTHROW(StateSpace::hypercube(20));
  CHECK_NOTHROW(StateSpace::torus(4096));
  CHECK(StateSpace::hypercube(3).descriptor() == "hypercube:3");
  CHECK(StateSpace::torus(5).descriptor() == "torus:5");
  CHECK(StateSpace::torus(5) == StateSpace::torus(5));
  CHECK_FALSE(StateSpace::torus(4) == StateSpace::hypercube(2));
}
