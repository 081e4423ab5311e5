#include "ddmcorr/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "ddmcorr/error.hpp"

namespace ddmcorr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_amplitude(double x, const char* name) {
  if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
    throw InvalidArgument(std::string(name) + " must lie in [0, 1] (got " + std::to_string(x) + ")");
  }
}

void require_fock(std::size_t n, const SpaceLayout& layout) {
  if (n > layout.n_max()) {
    throw InvalidArgument("resonator Fock index " + std::to_string(n) + " exceeds n_max " +
                          std::to_string(layout.n_max()));
  }
}

// |q> (x) |n> for a two-qubit amplitude vector q indexed 2a + b.
CMatrix pure_state(const std::array<double, 4>& q, std::size_t n, const SpaceLayout& layout) {
  std::vector<cplx> psi(layout.dim(), 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) psi[layout.index(a, b, n)] = q[2 * a + b];
  return CMatrix::projector(psi);
}

}  // namespace

std::string_view family_name(Family f) {
  switch (f) {
    case Family::BellPsi: return "bell_psi";
    case Family::BellPhi: return "bell_phi";
    case Family::Separable: return "separable";
  }
  return "unknown";
}

std::optional<Family> parse_family(std::string_view name) {
  for (Family f : {Family::BellPsi, Family::BellPhi, Family::Separable})
    if (family_name(f) == name) return f;
  return std::nullopt;
}

PhysicalParams default_params() {
  PhysicalParams p;
  p.g = kTwoPi * 0.1;
  p.kappa = kTwoPi * 1e-3;
  p.gamma = kTwoPi * 1.6e-4;
  p.gamma_phi = kTwoPi * 1.58e-2;
  p.n_max = 5;
  return p;
}

TimeGrid default_grid() { return TimeGrid{0.0, 200.0, 0.002, 100}; }

void ScenarioSpec::validate() const {
  params.validate();
  grid.validate();
  require_amplitude(amplitude_sq, "amplitude_sq");
  const SpaceLayout layout(params.n_max);
  require_fock(resonator_fock, layout);
  if (family == Family::BellPsi && resonator_fock == 0 && !allow_vacuum) {
    throw InvalidArgument("resonator_fock = 0 is not allowed for bell_psi (set allow_vacuum to override)");
  }
  if (family == Family::BellPhi && resonator_fock != 0) {
    throw InvalidArgument("bell_phi starts with an empty resonator; resonator_fock must be 0");
  }
}

CMatrix initial_bell_psi(double alpha, std::size_t n, const SpaceLayout& layout, bool allow_vacuum) {
  require_amplitude(alpha, "alpha");
  require_fock(n, layout);
  if (n == 0 && !allow_vacuum) {
    throw InvalidArgument("bell_psi requires a nonempty resonator (n >= 1) unless allow_vacuum is set");
  }
  return pure_state({0.0, alpha, std::sqrt(1.0 - alpha * alpha), 0.0}, n, layout);
}

CMatrix initial_bell_phi(double beta, const SpaceLayout& layout) {
  require_amplitude(beta, "beta");
  return pure_state({beta, 0.0, 0.0, std::sqrt(1.0 - beta * beta)}, 0, layout);
}

CMatrix initial_separable(const SpaceLayout& layout, std::size_t n) {
  require_fock(n, layout);
  return pure_state({0.5, 0.5, 0.5, 0.5}, n, layout);
}

CMatrix initial_state(const ScenarioSpec& spec) {
  spec.validate();
  const SpaceLayout layout(spec.params.n_max);
  const double amp = std::sqrt(spec.amplitude_sq);
  switch (spec.family) {
    case Family::BellPsi: return initial_bell_psi(amp, spec.resonator_fock, layout, spec.allow_vacuum);
    case Family::BellPhi: return initial_bell_phi(amp, layout);
    case Family::Separable: return initial_separable(layout, spec.resonator_fock);
  }
  throw InvalidArgument("unknown scenario family");
}

}  // namespace ddmcorr
