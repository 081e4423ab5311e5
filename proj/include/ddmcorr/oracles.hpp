#pragma once

// Reference computations used only by the validation suite and the tests.
// They deliberately avoid the production code paths they check.

#include <cstdint>
#include <random>

#include "ddmcorr/measures.hpp"
#include "ddmcorr/qlinalg.hpp"

namespace ddmcorr::oracles {

using Rng = std::mt19937_64;

/// Haar-random pure two-qubit state as a 4x4 projector.
CMatrix random_pure_two_qubit(Rng& rng);

/// A^dag A / Tr(A^dag A) with A a 4x4 complex Gaussian matrix (full rank).
CMatrix random_mixed_two_qubit(Rng& rng);

/// Random Hermitian n x n matrix with Gaussian entries.
CMatrix random_hermitian(std::size_t n, Rng& rng);

/// z |Phi+><Phi+| + (1 - z) I/4.
CMatrix werner_state(double z);

/// |Phi+> = (|00> + |11>)/sqrt(2) as a projector.
CMatrix bell_phi_plus();

struct GridOptimum {
  double classical_correlation = 0.0;
  double min_conditional_entropy = 0.0;
  double theta = 0.0;
  double phi = 0.0;
};

/// Classical correlation (measurement on B) by exhaustive search over an
/// n_theta x n_phi grid covering theta in [0, pi), phi in [0, 2 pi). Each
/// point forms (I (x) M_k) rho (I (x) M_k) explicitly, traces out B and takes
/// the entropy from a full eigendecomposition.
GridOptimum grid_classical_correlation(const CMatrix& rho_ab, std::size_t n_theta = 512, std::size_t n_phi = 512);

}  // namespace ddmcorr::oracles
