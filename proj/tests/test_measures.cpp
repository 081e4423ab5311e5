#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "ddmcorr/error.hpp"
#include "ddmcorr/measures.hpp"
#include "ddmcorr/oracles.hpp"
#include "ddmcorr/scenarios.hpp"

using namespace ddmcorr;

namespace {

double h2(double p) { return -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

// Wootters concurrence from the non-Hermitian product rho (sy x sy) rho* (sy x sy),
// eigenvalues taken with Eigen's general complex solver.
double concurrence_reference(const CMatrix& rho) {
  Eigen::Matrix4cd r, yy;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = rho(i, j);
  yy.setZero();
  yy(0, 3) = -1.0;
  yy(3, 0) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  const Eigen::Matrix4cd m = r * yy * r.conjugate() * yy;
  Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(m);
  std::array<double, 4> lam;
  for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::abs(es.eigenvalues()(i).real()));
  std::sort(lam.rbegin(), lam.rend());
  return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

CMatrix local_unitary(double a, double b, double c) {
  const cplx i(0, 1);
  return CMatrix{{std::exp(i * a) * std::cos(b), -std::exp(i * c) * std::sin(b)},
                 {std::exp(-i * c) * std::sin(b), std::exp(-i * a) * std::cos(b)}};
}

}  // namespace

TEST_CASE("von Neumann entropy") {
  const std::array<double, 2> d{0.25, 0.75};
  CHECK(entropy_vn(CMatrix::diagonal(d)) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
  CMatrix mixed = CMatrix::identity(4);
  mixed *= 0.25;
  CHECK(entropy_vn(mixed) == doctest::Approx(2.0));
  CHECK(entropy_vn(oracles::bell_phi_plus()) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK_THROWS_AS(entropy_vn(CMatrix::identity(2)), InvalidArgument);
}

TEST_CASE("measurement projectors") {
  const MeasurementProjectorPair m{0.3, 1.1};
  const CMatrix p1 = m.projector(1);
  const CMatrix p2 = m.projector(2);
  CHECK(max_abs_diff(p1 + p2, CMatrix::identity(2)) < 1e-15);
  CHECK(max_abs_diff(p1 * p2, CMatrix::zeros(2, 2)) < 1e-15);
  CHECK_THROWS_AS(m.projector(3), InvalidArgument);

  const MeasurementProjectorPair c = MeasurementProjectorPair{2.0, -0.5}.canonical();
  CHECK(c.theta >= 0.0);
  CHECK(c.theta < std::numbers::pi / 2);
  CHECK(c.phi >= 0.0);
  CHECK(c.phi < 2 * std::numbers::pi);
  const MeasurementProjectorPair o{2.0, -0.5};
  // same pair of projectors, possibly with outcomes swapped
  const double d11 = max_abs_diff(c.projector(1), o.projector(1));
  const double d12 = max_abs_diff(c.projector(1), o.projector(2));
  CHECK(std::min(d11, d12) < 1e-12);
}

TEST_CASE("conditional states") {
  // |Phi+>: measuring B in the computational basis leaves A in |0> or |1>
  const CMatrix bell = oracles::bell_phi_plus();
  const ConditionalState s = conditional_state(bell, MeasurementProjectorPair{0.0, 0.0}, 1);
  CHECK(s.defined);
  CHECK(s.probability == doctest::Approx(0.5));
  CHECK(s.state(0, 0).real() == doctest::Approx(1.0));
  CHECK(conditional_entropy(bell, MeasurementProjectorPair{0.4, 2.0}) == doctest::Approx(0.0).epsilon(1e-12));

  // product |00>: outcome 2 (B in |1>) never happens
  const std::array<cplx, 4> zz{1.0, 0.0, 0.0, 0.0};
  const ConditionalState u = conditional_state(CMatrix::projector(zz), MeasurementProjectorPair{0.0, 0.0}, 2);
  CHECK_FALSE(u.defined);
  CHECK(u.probability == 0.0);
}

TEST_CASE("Werner state frozen values") {
  // Independent reference: numpy entropies plus Nelder-Mead over the measurement angles.
  const CMatrix w = oracles::werner_state(0.5);
  const DiscordResult r = discord_analysis(w);
  CHECK(r.mutual_information == doctest::Approx(0.4512050593046013).epsilon(1e-12));
  CHECK(r.classical_correlation == doctest::Approx(0.18872187554086772).epsilon(1e-9));
  CHECK(r.discord == doctest::Approx(0.2624831837637336).epsilon(1e-9));
  CHECK(concurrence(w) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(eof(w) == doctest::Approx(0.11761887377091781).epsilon(1e-10));
  CHECK(l1_coherence(w) == doctest::Approx(0.5));
  CHECK(purity(w) == doctest::Approx(0.4375));
  // Werner classical correlation is known in closed form
  CHECK(r.classical_correlation == doctest::Approx(0.25 * std::log2(0.5) + 0.75 * std::log2(1.5)).epsilon(1e-9));
}

TEST_CASE("Bell-like pure state alpha^2 = 1/5") {
  const SpaceLayout l(5);
  const CMatrix rho = reduce_to_qubits(initial_bell_psi(std::sqrt(0.2), 1, l), l);
  CHECK(concurrence(rho) == doctest::Approx(0.8).epsilon(1e-12));
  CHECK(eof(rho) == doctest::Approx(h2(0.2)).epsilon(1e-10));
  CHECK(quantum_discord(rho) == doctest::Approx(h2(0.2)).epsilon(1e-8));
  CHECK(mutual_information(rho) == doctest::Approx(2 * h2(0.2)).epsilon(1e-10));
  CHECK(l1_coherence(rho) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("concurrence agrees with the characteristic-polynomial route") {
  oracles::Rng rng(42);
  for (int i = 0; i < 30; ++i) {
    const CMatrix rho = i % 2 ? oracles::random_mixed_two_qubit(rng) : oracles::random_pure_two_qubit(rng);
    CHECK(concurrence(rho) == doctest::Approx(concurrence_reference(rho)).epsilon(1e-7));
  }
  for (double z : {0.0, 0.2, 1.0 / 3.0, 0.5, 1.0}) {
    const CMatrix w = oracles::werner_state(z);
    CHECK(concurrence(w) == doctest::Approx(std::max(0.0, (3 * z - 1) / 2)).epsilon(1e-7));
  }
}

TEST_CASE("EoF mapping") {
  CHECK(eof_from_concurrence(0.0) == 0.0);
  CHECK(eof_from_concurrence(1.0) == doctest::Approx(1.0));
  CHECK(eof_from_concurrence(0.8) == doctest::Approx(h2(0.2)));
}

TEST_CASE("measures are invariant under local unitaries") {
  oracles::Rng rng(9);
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix rho = oracles::random_mixed_two_qubit(rng);
    const CMatrix u = kron(local_unitary(0.3 * rep, 1.1, -0.4), local_unitary(-0.7, 0.2 * rep + 0.1, 2.0));
    const CMatrix rot = u * rho * u.adjoint();
    CHECK(quantum_discord(rot) == doctest::Approx(quantum_discord(rho)).epsilon(1e-7));
    CHECK(concurrence(rot) == doctest::Approx(concurrence(rho)).epsilon(1e-9));
    CHECK(mutual_information(rot) == doctest::Approx(mutual_information(rho)).epsilon(1e-10));
  }
}

TEST_CASE("discord bookkeeping") {
  oracles::Rng rng(2024);
  for (int rep = 0; rep < 10; ++rep) {
    const CMatrix rho = oracles::random_mixed_two_qubit(rng);
    const DiscordResult r = discord_analysis(rho);
    CHECK(r.discord >= 0.0);
    CHECK(r.discord <= r.mutual_information);
    CHECK(r.mutual_information == doctest::Approx(r.classical_correlation + r.discord).epsilon(1e-15));
    CHECK(r.argmax.theta < std::numbers::pi / 2);
  }
  // classical states have zero discord for measurement on either side
  const std::array<double, 4> diag{0.1, 0.2, 0.3, 0.4};
  CHECK(quantum_discord(CMatrix::diagonal(diag)) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(quantum_discord(CMatrix::diagonal(diag), MeasuredQubit::A) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("optimizer tracks the brute-force grid") {
  oracles::Rng rng(77);
  for (int rep = 0; rep < 3; ++rep) {
    const CMatrix rho = oracles::random_mixed_two_qubit(rng);
    const double grid = oracles::grid_classical_correlation(rho, 128, 128).classical_correlation;
    CHECK(classical_correlation(rho).value >= grid - 1e-12);
    CHECK(classical_correlation(rho).value - grid < 1e-3);
  }
}

TEST_CASE("sample_all on the Bell-like initial state") {
  ScenarioSpec sc;
  const SpaceLayout l(sc.params.n_max);
  const CorrelationSample s = sample_all(initial_state(sc), l, 0.0);
  CHECK(s.coherence_D == doctest::Approx(1.0));
  CHECK(s.discord_Q == doctest::Approx(1.0));
  CHECK(s.mutual_I == doctest::Approx(2.0));
  CHECK(s.classical_C == doctest::Approx(1.0));
  CHECK(s.eof == doctest::Approx(1.0));
  CHECK(s.purity == doctest::Approx(1.0));
  CHECK(s.coh_A == doctest::Approx(0.0));
  CHECK(s.trace_err < 1e-15);
}
