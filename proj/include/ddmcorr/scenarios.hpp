#pragma once

// Initial states and default parameters for the three qubit-state families.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "ddmcorr/dynamics.hpp"
#include "ddmcorr/model.hpp"
#include "ddmcorr/qlinalg.hpp"

namespace ddmcorr {

enum class Family {
  BellPsi,    ///< alpha|01> + sqrt(1 - alpha^2)|10>, resonator in |n>, n >= 1
  BellPhi,    ///< beta|00> + sqrt(1 - beta^2)|11>, resonator empty
  Separable,  ///< (|0> + |1>)(|0> + |1>)/2, resonator in |n>
};

std::string_view family_name(Family f);
std::optional<Family> parse_family(std::string_view name);

/// 2 pi * {100, 1, 0.16, 15.8} MHz expressed in rad/ns, n_max = 5.
PhysicalParams default_params();

/// 0-200 ns, dt = 0.002 ns, sampled every 0.2 ns.
TimeGrid default_grid();

struct ScenarioSpec {
  Family family = Family::BellPsi;
  double amplitude_sq = 0.5;  ///< alpha^2 or beta^2; ignored for Separable
  std::size_t resonator_fock = 1;  ///< must be 0 for BellPhi
  bool allow_vacuum = false;  ///< permit resonator_fock = 0 for BellPsi
  PhysicalParams params = default_params();
  TimeGrid grid = default_grid();

  void validate() const;
};

CMatrix initial_bell_psi(double alpha, std::size_t n, const SpaceLayout& layout, bool allow_vacuum = false);
CMatrix initial_bell_phi(double beta, const SpaceLayout& layout);
CMatrix initial_separable(const SpaceLayout& layout, std::size_t n);

/// Initial full-space density matrix for `spec`.
CMatrix initial_state(const ScenarioSpec& spec);

}  // namespace ddmcorr
