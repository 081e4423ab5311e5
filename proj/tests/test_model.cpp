#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ddmcorr/error.hpp"
#include "ddmcorr/model.hpp"

using namespace ddmcorr;

TEST_CASE("layout indexing") {
  const SpaceLayout l(5);
  CHECK(l.dim() == 24);
  CHECK(l.resonator_dim() == 6);
  CHECK(l.index(0, 0, 0) == 0);
  CHECK(l.index(0, 1, 0) == 6);
  CHECK(l.index(1, 0, 0) == 12);
  CHECK(l.index(1, 1, 5) == 23);
  CHECK_THROWS_AS(l.index(2, 0, 0), InvalidArgument);
  CHECK_THROWS_AS(l.index(0, 0, 6), InvalidArgument);
  const auto ket = l.basis_ket(0, 1, 1);
  CHECK(ket[7] == cplx(1.0));
}

TEST_CASE("local operators") {
  // sigma_z is +1 on |1>, sigma = |0><1|
  CHECK(sigma_z()(1, 1) == cplx(1.0));
  CHECK(sigma_z()(0, 0) == cplx(-1.0));
  CHECK(sigma_minus()(0, 1) == cplx(1.0));
  CHECK(max_abs_diff(sigma_plus(), sigma_minus().adjoint()) == 0.0);
  CHECK(max_abs_diff(commutator(sigma_plus(), sigma_minus()), sigma_z()) < 1e-15);

  const CMatrix a = annihilation(3);
  CHECK(a(0, 1) == cplx(1.0));
  CHECK(std::abs(a(2, 3) - std::sqrt(3.0)) < 1e-15);
  CHECK(max_abs_diff(a.adjoint() * a, number_op(3)) < 1e-14);
}

TEST_CASE("embedding places operators on the right factor") {
  const SpaceLayout l(2);
  const CMatrix sa = embed_op(l, Site::A, sigma_minus());
  // sigma_A |1,0,n> = |0,0,n>
  CHECK(sa(l.index(0, 0, 1), l.index(1, 0, 1)) == cplx(1.0));
  const CMatrix ar = embed_op(l, Site::Resonator, annihilation(2));
  CHECK(std::abs(ar(l.index(1, 1, 1), l.index(1, 1, 2)) - std::sqrt(2.0)) < 1e-15);
  CHECK_THROWS_AS(embed_op(l, Site::B, annihilation(2)), InvalidArgument);
}

TEST_CASE("interaction conserves excitation number") {
  const SpaceLayout l(5);
  const CMatrix v = build_interaction(l, 0.7);
  CHECK(v.hermiticity_error() == 0.0);
  CHECK(max_abs_diff(commutator(v, excitation_number(l)), CMatrix::zeros(24, 24)) < 1e-14);
  // <1,0,0|V|0,0,1> = g
  CHECK(std::abs(v(l.index(1, 0, 0), l.index(0, 0, 1)) - 0.7) < 1e-15);
}

TEST_CASE("generator channel list") {
  PhysicalParams p;
  p.g = 1.0;
  p.kappa = 0.1;
  p.gamma = 0.0;
  p.gamma_phi = 0.3;
  const LindbladGenerator gen = build_generator(p);
  REQUIRE(gen.channels.size() == 5);
  CHECK(gen.channels[0].form == ChannelForm::Dephasing);
  CHECK(gen.channels[1].form == ChannelForm::Dephasing);
  CHECK(gen.channels[0].rate == doctest::Approx(0.3));
  CHECK(gen.channels[2].rate == 0.0);
  CHECK(gen.channels[4].rate == doctest::Approx(0.1));
  CHECK(gen.dim() == 24);
}

TEST_CASE("parameter validation") {
  PhysicalParams p;
  CHECK_NOTHROW(p.validate());
  p.kappa = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.kappa = 0.0;
  p.g = std::nan("");
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
  p.g = 0.0;
  p.n_max = 0;
  CHECK_THROWS_AS(p.validate(), InvalidArgument);
}

TEST_CASE("qubit gap and coupling coefficient") {
  CHECK(qubit_gap(0.0, 1.5) == doctest::Approx(3.0));
  CHECK(qubit_gap(3.0, 2.0) == doctest::Approx(5.0));
  // (1 * 2 / (2 * 4)) * sqrt(9 / (1 * 1)) = 0.75
  CHECK(coupling_coefficient(1.0, 2.0, 4.0, 9.0, 1.0, 1.0) == doctest::Approx(0.75));
  CHECK_THROWS_AS(coupling_coefficient(1.0, 0.0, 4.0, 9.0, 1.0, 1.0), InvalidArgument);
}
