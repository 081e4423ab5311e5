#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ddmcorr/error.hpp"
#include "ddmcorr/measures.hpp"
#include "ddmcorr/scenarios.hpp"

using namespace ddmcorr;

TEST_CASE("default parameters") {
  const PhysicalParams p = default_params();
  const double two_pi = 2 * std::numbers::pi;
  CHECK(p.g == doctest::Approx(two_pi * 0.1));
  CHECK(p.kappa == doctest::Approx(two_pi * 1e-3));
  CHECK(p.gamma == doctest::Approx(two_pi * 1.6e-4));
  CHECK(p.gamma_phi == doctest::Approx(two_pi * 1.58e-2));
  CHECK(p.n_max == 5);
  const TimeGrid g = default_grid();
  CHECK(g.t_end == 200.0);
  CHECK(g.dt == 0.002);
}

TEST_CASE("family names round-trip") {
  for (Family f : {Family::BellPsi, Family::BellPhi, Family::Separable}) CHECK(parse_family(family_name(f)) == f);
  CHECK_FALSE(parse_family("werner").has_value());
}

TEST_CASE("initial states") {
  const SpaceLayout l(5);
  const CMatrix psi = initial_bell_psi(std::sqrt(0.1), 2, l);
  CHECK(psi(l.index(0, 1, 2), l.index(0, 1, 2)).real() == doctest::Approx(0.1));
  CHECK(psi(l.index(1, 0, 2), l.index(1, 0, 2)).real() == doctest::Approx(0.9));
  CHECK(psi(l.index(0, 1, 2), l.index(1, 0, 2)).real() == doctest::Approx(std::sqrt(0.09)));
  CHECK_THROWS_AS(initial_bell_psi(0.5, 0, l), InvalidArgument);
  CHECK_NOTHROW(initial_bell_psi(0.5, 0, l, true));
  CHECK_THROWS_AS(initial_bell_psi(1.5, 1, l), InvalidArgument);
  CHECK_THROWS_AS(initial_bell_psi(0.5, 6, l), InvalidArgument);

  const CMatrix phi = initial_bell_phi(std::sqrt(0.5), l);
  CHECK(phi(l.index(0, 0, 0), l.index(1, 1, 0)).real() == doctest::Approx(0.5));

  const CMatrix sep = initial_separable(l, 0);
  const CMatrix q = reduce_to_qubits(sep, l);
  CHECK(concurrence(q) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(l1_coherence(q) == doctest::Approx(3.0));
  CHECK(sep.trace().real() == doctest::Approx(1.0));
}

TEST_CASE("scenario validation") {
  ScenarioSpec sc;
  CHECK_NOTHROW(sc.validate());
  sc.family = Family::BellPhi;
  CHECK_THROWS_AS(sc.validate(), InvalidArgument);  // bell_phi needs an empty resonator
  sc.resonator_fock = 0;
  CHECK_NOTHROW(sc.validate());
  sc.family = Family::BellPsi;
  CHECK_THROWS_AS(sc.validate(), InvalidArgument);
  sc.allow_vacuum = true;
  CHECK_NOTHROW(sc.validate());
  sc.amplitude_sq = -0.1;
  CHECK_THROWS_AS(sc.validate(), InvalidArgument);
}
