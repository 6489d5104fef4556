#include <doctest.h>

#include <cmath>

#include "hwi/dynamics.hpp"
#include "hwi/harness.hpp"
#include "hwi/transport.hpp"
#include "oracles.hpp"

using namespace hwi;

TEST_CASE("phi") {
  const double t = std::log(3.0) / 2;  // e^{-2t} = 1/3
  CHECK(std::abs(phi(t) - std::log(2.0) / 3) < 1e-15);
  CHECK(phi(t) == doctest::Approx(0.231049).epsilon(1e-6));
  CHECK(phi(20.0) < 1e-15);
  CHECK_THROWS_AS(phi(0.0), std::domain_error);
  CHECK_THROWS_AS(phi(-1.0), std::domain_error);
  for (double s = 0.01; s <= 20.0; s *= 1.05) CHECK(phi_upper_bound(s) - phi(s) >= 0.0);
}

TEST_CASE("verdict rules") {
  CHECK(decide(true, false, -2e-9) == Verdict::Fail);
  CHECK(decide(true, false, -5e-10) == Verdict::Pass);
  CHECK(decide(false, false, -1.0) == Verdict::NotApplicable);
  CHECK(decide(true, true, -1.0) == Verdict::VacuousPass);
  CHECK(to_string(Verdict::VacuousPass) == "vacuous-pass");
  CHECK(to_string(Verdict::Fail) == "FAIL");
}

TEST_CASE("optimal time") {
  CHECK(optimal_time(1.0, 4.0) == 1.0);
  CHECK(combined_bound(1.0, 4.0, 1.0) == 2.0);
  CHECK(optimal_time(1.0, 16.0) == 0.5);
  CHECK(combined_bound(1.0, 16.0, 0.5) == 6.0);
  for (auto [w, i] : {std::pair{1.0, 4.0}, std::pair{1.0, 16.0}, std::pair{0.3, 7.1}}) {
    const double s = optimal_time(w, i);
    const double best = combined_bound(w, i, s);
    CHECK(std::abs(best - (2 * std::sqrt(w * i) - 2 * w)) < 1e-12);
    if (s * 1.01 <= 1.0) CHECK(combined_bound(w, i, s * 1.01) > best);
    CHECK(combined_bound(w, i, s * 0.99) > best);
  }
  CHECK_THROWS_AS(optimal_time(1.0, 3.9), std::domain_error);
  CHECK_THROWS_AS(optimal_time(0.0, 1.0), std::domain_error);
}

TEST_CASE("uniform passes every check with zeros") {
  const auto cube = Distribution::uniform(StateSpace::hypercube(4));
  const auto r = check_hypercube_hwi(cube);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.applicable);
  CHECK(std::abs(*r.H) < 1e-15);
  CHECK(*r.I == 0.0);
  CHECK(*r.W1 < 1e-15);
  CHECK(check_mlsi(cube).verdict == Verdict::Pass);
  const auto ring = Distribution::uniform(StateSpace::torus(5));
  CHECK(check_torus_hwi(ring).verdict == Verdict::Pass);
  for (const auto& f : check_flow_bounds(ring, {0.1, 1.0})) CHECK(f.verdict == Verdict::Pass);
}

TEST_CASE("checks reject the wrong space") {
  const auto ring = Distribution::uniform(StateSpace::torus(4));
  const auto cube = Distribution::uniform(StateSpace::hypercube(2));
  CHECK_THROWS_AS(check_hypercube_hwi(ring), std::domain_error);
  CHECK_THROWS_AS(check_mlsi(ring), std::domain_error);
  CHECK_THROWS_AS(check_torus_hwi(cube), std::domain_error);
}

TEST_CASE("product Bernoulli p = 0.3, N = 4 against independent evaluation") {
  const auto s = StateSpace::hypercube(4);
  std::vector<double> w(16, 1.0);
  for (State x = 0; x < 16; ++x) {
    for (int i = 0; i < 4; ++i) w[x] *= (x >> i & 1) ? 0.3 : 0.7;
  }
  const auto nu = Distribution::normalized(s, w);
  const auto r = check_hypercube_hwi(nu);
  // H = 4 (0.3 log 0.6 + 0.7 log 1.4); I = 4 (0.4 log(7/3));
  // W1 = 4 (0.7 - 0.5) since coordinates decouple under the product cost.
  CHECK(std::abs(*r.H - 4 * (0.3 * std::log(0.6) + 0.7 * std::log(1.4))) < 1e-14);
  CHECK(std::abs(*r.H - oracle::entropy(w)) < 1e-14);
  CHECK(std::abs(*r.I - 4 * 0.4 * std::log(7.0 / 3)) < 1e-13);
  CHECK(std::abs(*r.I - oracle::fisher_cube(4, w)) < 1e-13);
  CHECK(std::abs(*r.W1 - 0.8) < 1e-13);
  // I = 1.356 < 4 W1 = 3.2
  CHECK_FALSE(r.applicable);
  CHECK(r.verdict == Verdict::NotApplicable);
  CHECK(r.rhs == doctest::Approx(2 * std::sqrt(0.8 * *r.I) - 1.6).epsilon(1e-14));
  CHECK(r.margin == r.rhs - r.lhs);
}

TEST_CASE("torus N = 4 report against independent evaluation") {
  const std::vector<double> w = {0.5, 0.25, 0.125, 0.125};
  const auto r = check_torus_hwi(Distribution(StateSpace::torus(4), w));
  CHECK(std::abs(*r.H - oracle::entropy(w)) < 1e-15);
  CHECK(std::abs(*r.I - oracle::fisher_cycle(w)) < 1e-14);
  // W1: 1/8 moves 0 -> 3 and 1/8 moves 0 -> 2.
  CHECK(*r.W1 == doctest::Approx(0.375).epsilon(1e-14));
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.rhs == doctest::Approx(std::sqrt(2.0) * *r.Wc * std::sqrt(*r.I)).epsilon(1e-15));
}

TEST_CASE("support mismatch gives vacuous pass") {
  const auto s = StateSpace::hypercube(3);
  std::vector<double> far(8, 0.0);
  far[0] = 0.5;
  far[3] = 0.5;
  const auto r = check_hypercube_hwi(Distribution(s, far));
  CHECK(r.vacuous);
  CHECK(r.verdict == Verdict::VacuousPass);
  CHECK(std::isinf(*r.I));
  CHECK(check_mlsi(Distribution(s, far)).verdict == Verdict::VacuousPass);
  CHECK(check_torus_hwi(Distribution::point_mass(StateSpace::torus(5), 2)).verdict ==
        Verdict::VacuousPass);
}

TEST_CASE("smooth laws can be not applicable, never FAIL") {
  const auto s = StateSpace::hypercube(6);
  const auto nu = evolve(sample(DistributionFamily::parse("dirichlet:1"), s, 3), 1.0);
  const auto r = check_hypercube_hwi(nu);
  CHECK_FALSE(r.applicable);
  CHECK(r.verdict == Verdict::NotApplicable);
}

TEST_CASE("flow bounds examples") {
  const auto d = Distribution::point_mass(StateSpace::hypercube(3), 5);
  const auto reps = check_flow_bounds(d, {0.1, 0.5, 1.0, 2.0});
  REQUIRE(reps.size() == 4);
  for (const auto& r : reps) {
    CHECK(r.verdict == Verdict::Pass);
    CHECK(*r.W1 == doctest::Approx(1.5));
  }
  CHECK(reps[2].family == "t=1");
  const auto torus = check_flow_bounds(Distribution::point_mass(StateSpace::torus(6), 0), {1.0});
  CHECK(torus[0].verdict == Verdict::Pass);
  CHECK(torus[0].margin > 0);
  // lemma time 1 is evolve_torus time 1/2
  const double h = relative_entropy(evolve_torus(Distribution::point_mass(StateSpace::torus(6), 0), 0.5)).value;
  CHECK(torus[0].lhs == h);
  CHECK_THROWS_AS(check_flow_bounds(d, {0.0}), std::domain_error);
}

TEST_CASE("family specs parse and print") {
  for (const char* spec : {"dirichlet:0.5", "bernoulli", "bernoulli:0.3", "sparse:2",
                           "point-mass", "point-mass:3", "pushforward:0.5:dirichlet:1"}) {
    CHECK(DistributionFamily::parse(spec).to_string() == spec);
  }
  for (const char* bad : {"", "gauss", "dirichlet:0", "dirichlet:x", "bernoulli:1.5", "sparse:0",
                          "sparse:1.5", "point-mass:-1", "pushforward:1", "pushforward:-1:sparse:2"}) {
    CHECK_THROWS_AS(DistributionFamily::parse(bad), std::invalid_argument);
  }
}

TEST_CASE("sampling contract") {
  const auto ring = StateSpace::torus(7);
  const auto cube = StateSpace::hypercube(3);
  const auto dir = DistributionFamily::parse("dirichlet:1");
  const auto a = sample(dir, ring, 42), b = sample(dir, ring, 42);
  CHECK(std::equal(a.weights().begin(), a.weights().end(), b.weights().begin()));
  CHECK(relative_entropy(sample(DistributionFamily::parse("point-mass"), ring, 1)).value ==
        doctest::Approx(std::log(7.0)));
  CHECK_THROWS_AS(sample(DistributionFamily::parse("bernoulli"), ring, 1), std::domain_error);
  CHECK_THROWS_AS(sample(DistributionFamily::parse("sparse:9"), cube, 1), std::domain_error);
  CHECK_THROWS_AS(sample(DistributionFamily::parse("point-mass:8"), cube, 1), std::domain_error);
  // Two support points on N = 3 always leave an occupied state with an
  // empty neighbour, adjacent or not; on N = 1 they fill the space.
  const auto sparse = DistributionFamily::parse("sparse:2");
  int adjacent = 0;
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto nu = sample(sparse, cube, seed);
    std::vector<State> support;
    for (State x = 0; x < 8; ++x) {
      if (nu[x] > 0) support.push_back(x);
    }
    REQUIRE(support.size() == 2);
    adjacent += cube.distance(support[0], support[1]) == 1;
    CHECK(fisher_hypercube(nu).vacuous);
  }
  CHECK(adjacent > 0);
  CHECK_FALSE(fisher_hypercube(sample(sparse, StateSpace::hypercube(1), 3)).vacuous);
  CHECK_FALSE(fisher_hypercube(sample(DistributionFamily::parse("sparse:8"), cube, 3)).vacuous);
  const auto push = sample(DistributionFamily::parse("pushforward:0.7:point-mass:0"), cube, 5);
  CHECK(push[0] == doctest::Approx(std::pow((1 + std::exp(-1.4)) / 2, 3)).epsilon(1e-14));
}

TEST_CASE("format_double") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(std::stod(format_double(M_PI)) == M_PI);
}
