#pragma once

// Correlation, coherence and entanglement measures of a two-qubit state.
//
// Two-qubit matrices are 4x4 in the product basis |ab>, index 2a + b, with
// qubit level 1 the excited state. Entropies are in bits.

#include <array>
#include <cstddef>

#include "ddmcorr/model.hpp"
#include "ddmcorr/qlinalg.hpp"

namespace ddmcorr {

enum class MeasuredQubit { A, B };

/// Projective measurement {|psi1><psi1|, |psi2><psi2|} with
///   |psi1> = cos(theta)|0> + e^{i phi} sin(theta)|1>
///   |psi2> = sin(theta)|0> - e^{i phi} cos(theta)|1>
struct MeasurementProjectorPair {
  double theta = 0.0;
  double phi = 0.0;

  /// outcome is 1 or 2
  std::array<cplx, 2> ket(int outcome) const;
  CMatrix projector(int outcome) const;
  /// Equivalent pair with theta in [0, pi/2) and phi in [0, 2 pi).
  MeasurementProjectorPair canonical() const;
};

/// Entropy eigenvalues in [kEntropyClampTol, 0) count as zero.
inline constexpr double kEntropyClampTol = -1e-9;

/// -Tr(rho log2 rho). Requires a Hermitian, unit-trace (1e-8) matrix.
double entropy_vn(const CMatrix& rho);

/// S(rho_A) + S(rho_B) - S(rho_AB), unclamped.
double mutual_information(const CMatrix& rho_ab);

/// Reduced state of one qubit: `which` = A keeps qubit A.
CMatrix qubit_marginal(const CMatrix& rho_ab, MeasuredQubit which);

/// Probabilities below this leave the conditional state undefined; such
/// branches contribute nothing to conditional entropies.
inline constexpr double kMinBranchProbability = 1e-12;

struct ConditionalState {
  double probability = 0.0;
  CMatrix state;  ///< normalized 2x2 state of the unmeasured qubit; empty if undefined
  bool defined = false;
};

/// State of the unmeasured qubit after outcome `outcome` (1 or 2) of `proj`
/// on `side` (B by default).
ConditionalState conditional_state(const CMatrix& rho_ab, const MeasurementProjectorPair& proj, int outcome,
                                   MeasuredQubit side = MeasuredQubit::B);

/// sum_k p_k S(rho_{.|k}) for one measurement.
double conditional_entropy(const CMatrix& rho_ab, const MeasurementProjectorPair& proj,
                           MeasuredQubit side = MeasuredQubit::B);

struct OptimizerSettings {
  std::size_t theta_points = 48;  ///< over [0, pi/2)
  std::size_t phi_points = 96;    ///< over [0, 2 pi)
  std::size_t starts = 3;         ///< best grid points refined
  double objective_tol = 1e-8;
  std::size_t max_rounds = 200;
};

struct ClassicalCorrelation {
  double value = 0.0;
  MeasurementProjectorPair argmax;  ///< canonical form
  double min_conditional_entropy = 0.0;
  bool converged = true;
};

/// S(rho_unmeasured) - min over projective measurements of the conditional
/// entropy, minimized by a coarse (theta, phi) grid followed by alternating
/// golden-section refinement.
ClassicalCorrelation classical_correlation(const CMatrix& rho_ab, MeasuredQubit side = MeasuredQubit::B,
                                           const OptimizerSettings& settings = {});

struct DiscordResult {
  double mutual_information = 0.0;
  double classical_correlation = 0.0;  ///< adjusted so mutual = classical + discord exactly
  double discord = 0.0;                ///< clamped to [0, mutual_information]
  double discord_raw = 0.0;            ///< mutual information minus optimizer value
  MeasurementProjectorPair argmax;
  bool converged = true;
};

DiscordResult discord_analysis(const CMatrix& rho_ab, MeasuredQubit side = MeasuredQubit::B,
                               const OptimizerSettings& settings = {});

/// Clamped quantum discord.
double quantum_discord(const CMatrix& rho_ab, MeasuredQubit side = MeasuredQubit::B);

/// Sum of moduli of off-diagonal entries (any square matrix).
double l1_coherence(const CMatrix& rho);

/// Wootters concurrence via the eigenvalues of sqrt(rho) rho~ sqrt(rho).
double concurrence(const CMatrix& rho_ab);

/// Binary-entropy map from concurrence to entanglement of formation.
double eof_from_concurrence(double c);
double eof(const CMatrix& rho_ab);

struct CorrelationSample {
  double t = 0.0;
  double coherence_D = 0.0;
  double discord_Q = 0.0;
  double discord_raw = 0.0;
  double classical_C = 0.0;
  double mutual_I = 0.0;
  double concurrence = 0.0;
  double eof = 0.0;
  double purity = 0.0;     ///< Tr rho^2 of the full state
  double trace_err = 0.0;  ///< |Tr rho - 1| of the full state
  double argmax_theta = 0.0;
  double argmax_phi = 0.0;
  double coh_A = 0.0;  ///< l1 coherence of the qubit-A marginal
  double coh_B = 0.0;
  bool optimizer_converged = true;
};

/// Traces out the resonator and evaluates every measure.
CorrelationSample sample_all(const CMatrix& rho_full, const SpaceLayout& layout, double t,
                             MeasuredQubit side = MeasuredQubit::B);

/// Two-qubit state Tr_resonator(rho_full).
CMatrix reduce_to_qubits(const CMatrix& rho_full, const SpaceLayout& layout);

/// Tr(rho^2) for Hermitian rho.
double purity(const CMatrix& rho);

}  // namespace ddmcorr
