#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <random>

#include "ddmcorr/error.hpp"
#include "ddmcorr/oracles.hpp"
#include "ddmcorr/qlinalg.hpp"

using namespace ddmcorr;

namespace {

Eigen::MatrixXcd to_eigen(const CMatrix& m) {
  Eigen::MatrixXcd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

}  // namespace

TEST_CASE("identity, projector and arithmetic") {
  const CMatrix id = CMatrix::identity(3);
  CHECK(id.trace() == cplx(3.0, 0.0));
  const std::array<cplx, 2> v{cplx(0.6, 0.0), cplx(0.0, 0.8)};
  const CMatrix p = CMatrix::projector(v);
  CHECK(std::abs(p(0, 1) - cplx(0.0, -0.48)) < 1e-15);
  CHECK(max_abs_diff(p * p, p) < 1e-15);
  CHECK(p.hermiticity_error() == 0.0);

  const CMatrix a{{1.0, cplx(0, 2)}, {3.0, 4.0}};
  const CMatrix b{{0.0, 1.0}, {1.0, 0.0}};
  const CMatrix ab = a * b;
  CHECK(ab(0, 0) == cplx(0, 2));
  CHECK(ab(1, 1) == cplx(3, 0));
  CHECK(max_abs_diff(commutator(a, a), CMatrix::zeros(2, 2)) == 0.0);
  CHECK(a.adjoint()(1, 0) == cplx(0, -2));
  CHECK_THROWS_AS(a * CMatrix::identity(3), InvalidArgument);
}

TEST_CASE("kron matches the index formula") {
  oracles::Rng rng(7);
  const CMatrix a = oracles::random_hermitian(2, rng);
  const CMatrix b = oracles::random_hermitian(3, rng);
  const CMatrix k = kron(a, b);
  REQUIRE(k.rows() == 6);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t s = 0; s < 3; ++s) CHECK(k(3 * i + r, 3 * j + s) == a(i, j) * b(r, s));
}

TEST_CASE("partial trace matches explicit index sums") {
  oracles::Rng rng(11);
  const std::array<std::size_t, 3> dims{2, 2, 3};
  const CMatrix rho = oracles::random_hermitian(12, rng);

  const std::array<std::size_t, 2> keep_ab{0, 1};
  const CMatrix ab = partial_trace(rho, dims, keep_ab);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (std::size_t n = 0; n < 3; ++n) s += rho(3 * i + n, 3 * j + n);
      CHECK(std::abs(ab(i, j) - s) < 1e-13);
    }

  const std::array<std::size_t, 1> keep_b{1};
  const CMatrix b = partial_trace(rho, dims, keep_b);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t n = 0; n < 3; ++n) s += rho(6 * a + 3 * i + n, 6 * a + 3 * j + n);
      CHECK(std::abs(b(i, j) - s) < 1e-13);
    }

  const std::array<std::size_t, 1> bad{3};
  CHECK_THROWS_AS(partial_trace(rho, dims, bad), InvalidArgument);
}

TEST_CASE("Hermitian eigensolver agrees with Eigen") {
  oracles::Rng rng(20101109);
  for (std::size_t n : {1u, 2u, 4u, 7u, 24u}) {
    for (int rep = 0; rep < 5; ++rep) {
      const CMatrix h = oracles::random_hermitian(n, rng);
      const HermEigResult got = herm_eig(h);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(to_eigen(h));
      std::vector<double> want(ref.eigenvalues().data(), ref.eigenvalues().data() + n);
      std::sort(want.rbegin(), want.rend());
      REQUIRE(got.eigenvalues.size() == n);
      for (std::size_t i = 0; i < n; ++i) CHECK(got.eigenvalues[i] == doctest::Approx(want[i]).epsilon(1e-11));
      CHECK(std::is_sorted(got.eigenvalues.rbegin(), got.eigenvalues.rend()));

      // columns are orthonormal eigenvectors
      const CMatrix& v = got.eigenvectors;
      CHECK(max_abs_diff(v.adjoint() * v, CMatrix::identity(n)) < 1e-11);
      CMatrix d(n, n);
      for (std::size_t i = 0; i < n; ++i) d(i, i) = got.eigenvalues[i];
      CHECK(max_abs_diff(v * d * v.adjoint(), h) < 1e-10 * std::max(1.0, h.max_abs()));
    }
  }
}

TEST_CASE("degenerate and diagonal spectra") {
  const CMatrix id = CMatrix::identity(4);
  for (double e : herm_eigenvalues(id)) CHECK(e == doctest::Approx(1.0));
  const std::array<double, 3> d{0.1, -2.0, 5.0};
  const auto ev = herm_eigenvalues(CMatrix::diagonal(d));
  CHECK(ev[0] == 5.0);
  CHECK(ev[2] == -2.0);
  CHECK(herm_eigenvalues(CMatrix{{0.0, 1.0}, {1.0, 0.0}})[1] == doctest::Approx(-1.0));
}

TEST_CASE("eigensolver rejects non-Hermitian input") {
  const CMatrix a{{1.0, 2.0}, {0.0, 1.0}};
  CHECK_THROWS_AS(herm_eig(a), InvalidArgument);
}

TEST_CASE("PSD square root") {
  oracles::Rng rng(3);
  const CMatrix rho = oracles::random_mixed_two_qubit(rng);
  const CMatrix s = matrix_sqrt_psd(rho);
  CHECK(max_abs_diff(s * s, rho) < 1e-12);
  CHECK(s.hermiticity_error() < 1e-14);
  const std::array<double, 2> neg{1.0, -0.5};
  CHECK_THROWS_AS(matrix_sqrt_psd(CMatrix::diagonal(neg)), NumericalError);
}
