#pragma once

// Two resonant qubits coupled through one truncated resonator mode:
// Hilbert-space layout, embedded operators, the interaction-picture
// Hamiltonian and the Lindblad dissipation channels.
//
// Units: time in ns, every rate and frequency in rad/ns.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "ddmcorr/qlinalg.hpp"

namespace ddmcorr {

enum class Site { A = 0, B = 1, Resonator = 2 };

/// Qubit A (x) qubit B (x) resonator truncated at `n_max` photons.
/// Composite index of |a, b, n> is a*2*(n_max+1) + b*(n_max+1) + n.
class SpaceLayout {
public:
  explicit SpaceLayout(std::size_t n_max);

  std::size_t n_max() const noexcept { return n_max_; }
  std::size_t resonator_dim() const noexcept { return n_max_ + 1; }
  std::size_t dim() const noexcept { return 4 * (n_max_ + 1); }
  std::size_t site_dim(Site s) const noexcept { return s == Site::Resonator ? resonator_dim() : 2; }
  /// {2, 2, n_max + 1}, usable with partial_trace.
  std::array<std::size_t, 3> dims() const noexcept { return {2, 2, n_max_ + 1}; }

  std::size_t index(std::size_t a, std::size_t b, std::size_t n) const;

  /// Basis ket |a, b, n> as a column of length dim().
  std::vector<cplx> basis_ket(std::size_t a, std::size_t b, std::size_t n) const;

private:
  std::size_t n_max_;
};

// Local operators. Qubit basis: index 0 = |0>, index 1 = |1> (excited).
CMatrix sigma_minus();  ///< |0><1|
CMatrix sigma_plus();   ///< |1><0|
CMatrix sigma_z();      ///< +1 on |1>, -1 on |0>
CMatrix sigma_y();
CMatrix annihilation(std::size_t n_max);  ///< a|n> = sqrt(n)|n-1>, truncated
CMatrix number_op(std::size_t n_max);

/// I (x) ... (x) local (x) ... (x) I in layout order.
CMatrix embed_op(const SpaceLayout& layout, Site site, const CMatrix& local);

/// a^dagger a + sum_i sigma_i^dagger sigma_i on the composite space.
CMatrix excitation_number(const SpaceLayout& layout);

struct PhysicalParams {
  double g = 0.0;          ///< qubit-resonator coupling
  double kappa = 0.0;      ///< photon leakage
  double gamma = 0.0;      ///< qubit relaxation
  double gamma_phi = 0.0;  ///< qubit pure dephasing
  std::size_t n_max = 5;   ///< Fock cutoff

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
};

enum class ChannelForm {
  Standard,   ///< (rate/2)(2 L rho L^dag - L^dag L rho - rho L^dag L)
  Dephasing,  ///< (rate/2)(L rho L - rho)
};

struct Channel {
  double rate = 0.0;
  CMatrix jump;  ///< embedded in the composite space
  ChannelForm form = ChannelForm::Standard;
  std::string label;
};

struct LindbladGenerator {
  SpaceLayout layout{5};
  CMatrix hamiltonian;
  std::vector<Channel> channels;

  std::size_t dim() const noexcept { return hamiltonian.rows(); }
};

/// V = g * sum_{i=A,B} (a sigma_i^dag + a^dag sigma_i).
CMatrix build_interaction(const SpaceLayout& layout, double g);

/// Generator for the two-qubit / resonator master equation. The channel list
/// is always: dephasing A, dephasing B, relaxation A, relaxation B, leakage,
/// including zero-rate entries.
LindbladGenerator build_generator(const PhysicalParams& params);

/// Level splitting sqrt(4 T^2 + delta^2) of a double-dot charge qubit.
double qubit_gap(double delta, double t_tunnel);

/// Capacitive dot-resonator coupling (e C_c / 2 C_tot) sqrt(omega0 / (L C0)),
/// with hbar = 1 in the caller's units. All arguments must be positive.
double coupling_coefficient(double e_charge, double c_c, double c_tot, double omega0,
                            double l_length, double c0_per_len);

}  // namespace ddmcorr
