#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "koenigs/errors.hpp"
#include "koenigs/oracle.hpp"

using namespace koenigs;
using namespace koenigs::oracle;

namespace {

RadialPotential osc(double lambda, double w = 1.0) {
  RadialPotential p;
  p.kind = PotentialKind::oscillator;
  p.lambda = lambda;
  p.omega_eff = w;
  return p;
}

SpaceSpec ki(double alpha, double delta, double omega, double k = 0.0) {
  SpaceSpec s;
  s.alpha = alpha;
  s.delta = delta;
  s.omega = omega;
  s.k_x = s.k_y = s.k_z = k;
  return s;
}

SpaceSpec coulomb() {
  SpaceSpec s;
  s.kind = SpaceKind::KIII;
  s.alpha2 = 1.0;
  s.delta = 1.0;
  return s;
}

EnergyLevel level(double e) {
  EnergyLevel l;
  l.energy = e;
  return l;
}

}  // namespace

TEST_CASE("fd_radial_eigen: oscillator and Coulomb textbook spectra") {
  const UnitScalars u;
  const FdGrid g{1e-4, 12.0, 4000};
  const auto e1 = fd_radial_eigen(osc(1.0), g, 3, u);
  REQUIRE(e1.size() == 3);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(e1[n] - (2.0 * n + 2.0)) < 2e-4);

  const auto e2 = fd_radial_eigen(osc(0.5), g, 3, u);
  for (int n = 0; n < 3; ++n) CHECK(std::abs(e2[n] - (2.0 * n + 1.5)) < 2e-4);

  RadialPotential c;
  c.kind = PotentialKind::coulomb;
  c.lambda = 0.5;
  c.alpha_eff = 1.0;
  const auto ec = fd_radial_eigen(c, {1e-10, 30.0, 8000}, 2, u);
  CHECK(std::abs(ec[0] + 0.5) < 1e-4);
  CHECK(std::abs(ec[1] + 0.125) < 1e-4);

  RadialPotential line;
  line.kind = PotentialKind::line_oscillator;
  line.omega_eff = 2.0;
  const auto el = fd_radial_eigen(line, {-8.0, 8.0, 4000}, 2, u);
  CHECK(std::abs(el[0] - 1.0) < 2e-4);
  CHECK(std::abs(el[1] - 3.0) < 2e-4);
}

TEST_CASE("fd grid validation") {
  CHECK_THROWS_AS(validate(FdGrid{1e-3, 10.0, 199}, PotentialKind::oscillator), ParameterError);
  CHECK_THROWS_AS(validate(FdGrid{0.0, 10.0, 400}, PotentialKind::oscillator), ParameterError);
  CHECK_THROWS_AS(validate(FdGrid{5.0, 1.0, 400}, PotentialKind::coulomb), ParameterError);
  CHECK_NOTHROW(validate(FdGrid{-5.0, 5.0, 400}, PotentialKind::line_oscillator));
}

TEST_CASE("fd_radial_eigen: second-order convergence under grid halving") {
  const UnitScalars u;
  const RadialPotential p = osc(1.5);
  auto e = [&](int n) { return fd_radial_eigen(p, {1e-4, 10.0, n}, 1, u)[0]; };
  // h halves when n -> 2n + 1 on a fixed interval
  const double a = e(399), b = e(799), c = e(1599);
  const double ratio = (a - b) / (b - c);
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.05));
  CHECK(std::abs(c + (c - b) / 3.0 - 2.5) < 1e-7);  // Richardson limit
}

TEST_CASE("auto_grid: tails are resolved, r_min is small") {
  const UnitScalars u;
  for (int n : {0, 2, 5}) {
    const RadialPotential p = osc(0.7, 1.3);
    const FdGrid g = auto_grid(p, n, 2000, u);
    CAPTURE(n);
    CHECK(g.r_min > 0.0);
    CHECK(g.r_min < 1e-3);
    CHECK(tail_ratio(p, g, n, u) < 1e-8);
  }
  // shrinking r_min further leaves the eigenvalue in place, also for the
  // lambda = 1/2 Coulomb problem whose wave-function is linear at the origin
  const RadialPotential p = osc(1.0);
  FdGrid g = auto_grid(p, 0, 4000, u);
  const double e0 = fd_radial_eigen(p, g, 1, u)[0];
  g.r_min *= 0.5;
  CHECK(std::abs(fd_radial_eigen(p, g, 1, u)[0] - e0) < 1e-6);

  RadialPotential c;
  c.kind = PotentialKind::coulomb;
  c.lambda = 0.5;
  FdGrid gc = auto_grid(c, 0, 4000, u);
  const double c0 = fd_radial_eigen(c, gc, 1, u)[0];
  gc.r_min *= 0.5;
  CHECK(std::abs(fd_radial_eigen(c, gc, 1, u)[0] - c0) < 1e-9);
}

TEST_CASE("self_consistent_level: known spectra") {
  auto one = [](const SpaceSpec& s, const QuantumNumbers& q) {
    const OracleResult r = self_consistent_level(s, q);
    REQUIRE(r.found);
    REQUIRE_FALSE(r.levels.empty());
    CHECK(r.levels.front().provenance == Provenance::oracle);
    CHECK(r.grids.size() == r.levels.size());
    return r.levels.front().energy;
  };
  CHECK(std::abs(one(ki(0, 1, 1), labels_for_n(SpaceKind::KI, 0)) / 3.0 - 1.0) < 1e-5);
  CHECK(std::abs(one(ki(-1, 1, 0), labels_for_n(SpaceKind::KI, 0)) / 18.0 - 1.0) < 1e-4);
  CHECK(std::abs(one(coulomb(), labels_for_n(SpaceKind::KIII, 2)) / -0.125 - 1.0) < 1e-5);

  SpaceSpec four;
  four.kind = SpaceKind::KIV;
  four.delta = 1.0;
  CHECK_THROWS_AS(self_consistent_level(four, labels_for_n(SpaceKind::KIV, 0)), KindError);

  SpaceSpec none = ki(-0.3, 1, 1, 0.5);
  none.beta_x = 0.1;
  const OracleResult r = self_consistent_level(none, labels_for_n(SpaceKind::KI, 0));
  CHECK_FALSE(r.found);
  CHECK_FALSE(r.message.empty());
}

TEST_CASE("self_consistent_level agrees with the solver on a curved K_I") {
  SpaceSpec s = ki(-0.3, 1, 1, 0.5);
  s.beta_x = -0.1;
  for (int n = 0; n <= 2; ++n) {
    const auto q = labels_for_n(SpaceKind::KI, n);
    const auto sol = solve_levels(s, q);
    const auto orc = self_consistent_level(s, q);
    REQUIRE(orc.found);
    const CompareReport rep = compare(sol.levels, orc.levels, 1e-4);
    CAPTURE(n);
    CHECK(rep.all_matched());
    CHECK(rep.max_deviation < 1e-4);
  }
}

TEST_CASE("compare: nearest matching within tolerance") {
  const std::vector<EnergyLevel> a{level(1.0), level(2.0), level(3.0)};
  auto same = compare(a, a, 1e-12);
  CHECK(same.all_matched());
  CHECK(same.max_deviation == 0.0);

  const std::vector<EnergyLevel> b{level(1.001), level(2.002), level(3.003)};
  auto shifted = compare(a, b, 1e-2);
  CHECK(shifted.all_matched());
  CHECK(shifted.max_deviation == doctest::Approx(1e-3 / 1.001).epsilon(1e-9));
  auto strict = compare(a, b, 1e-4);
  CHECK(strict.unmatched_a.size() == 3);
  CHECK(strict.unmatched_b.size() == 3);

  const std::vector<EnergyLevel> extra{level(1.0), level(2.0), level(3.0), level(7.0)};
  auto partial = compare(a, extra, 1e-9);
  CHECK(partial.matched.size() == 3);
  REQUIRE(partial.unmatched_b.size() == 1);
  CHECK(partial.unmatched_b[0] == 3);
  CHECK(partial.unmatched_a.empty());
}

TEST_CASE("compare: closed-form flat oscillator against the oracle") {
  const SpaceSpec flat = ki(0, 1, 1);
  std::vector<EnergyLevel> closed, orc;
  for (int n = 0; n <= 4; ++n) {
    closed.push_back(level(2.0 * n + 3.0));
    const auto r = self_consistent_level(flat, labels_for_n(SpaceKind::KI, n));
    REQUIRE(r.found);
    orc.push_back(r.levels.front());
  }
  const CompareReport rep = compare(closed, orc, 1e-4);
  CHECK(rep.all_matched());
  CHECK(rep.matched.size() == 5);
}
