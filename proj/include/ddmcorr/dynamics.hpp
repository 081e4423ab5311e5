#pragma once

// Fixed-step RK4 integration of the Lindblad master equation.

#include <cstddef>
#include <functional>
#include <type_traits>
#include <utility>
#include <vector>

#include "ddmcorr/model.hpp"
#include "ddmcorr/qlinalg.hpp"

namespace ddmcorr {

/// Checks Hermiticity, unit trace and positivity of an initial state within
/// `tol`. Throws InvalidArgument describing the first violated condition.
void validate_density_matrix(const CMatrix& rho, std::size_t expected_dim, double tol = 1e-10);

/// Sparse, precompiled form of a LindbladGenerator for repeated evaluation of
///   d rho/dt = -i[V, rho] + sum of dissipators.
/// Standard channels are folded into a non-Hermitian effective Hamiltonian
/// plus jump terms; dephasing channels keep their literal
/// (rate/2)(L rho L - rho) form.
class Liouvillian {
public:
  explicit Liouvillian(const LindbladGenerator& gen);

  std::size_t dim() const noexcept { return dim_; }
  CMatrix apply(const CMatrix& rho) const;
  /// out = L(rho); `out` must already be dim x dim.
  void apply_into(const CMatrix& rho, CMatrix& out) const;

private:
  struct Entry {
    std::size_t row;
    std::size_t col;
    cplx value;
  };
  struct JumpTerm {
    double coef;
    std::vector<Entry> left;   ///< L
    std::vector<Entry> right;  ///< L^dag (standard) or L (dephasing)
  };

  static std::vector<Entry> to_sparse(const CMatrix& m);

  std::size_t dim_;
  std::vector<Entry> heff_;
  double scalar_decay_ = 0.0;
  std::vector<JumpTerm> jumps_;
};

/// Right-hand side of the master equation for one state.
CMatrix lindblad_rhs(const LindbladGenerator& gen, const CMatrix& rho);

/// One classical RK4 step followed by rho <- (rho + rho^dag)/2.
/// Throws NumericalError if the result contains NaN/Inf.
CMatrix rk4_step(const LindbladGenerator& gen, const CMatrix& rho, double dt);
CMatrix rk4_step(const Liouvillian& lv, const CMatrix& rho, double dt);

struct TimeGrid {
  double t_start = 0.0;
  double t_end = 200.0;
  double dt = 0.002;
  std::size_t sample_every = 100;

  void validate() const;
  /// Number of integrator steps. The last step is shortened if the span is
  /// not an integer multiple of dt.
  std::size_t steps() const;
  /// Time after `k` steps.
  double time_at(std::size_t k) const;
  /// Number of sampler invocations evolve_and_sample will make.
  std::size_t sample_count() const;
};

struct EvolutionDiagnostics {
  double max_trace_error = 0.0;        ///< max |Tr rho - 1| over every step
  double min_eigenvalue = 0.0;         ///< most negative eigenvalue at samples
  double max_cutoff_population = 0.0;  ///< max population of |n_max> at samples
  double max_hermiticity_error = 0.0;  ///< at samples, before re-hermitization
  std::size_t steps = 0;
  std::size_t samples = 0;
  bool cutoff_warning = false;  ///< max_cutoff_population > kCutoffWarnThreshold
};

inline constexpr double kTraceAbortTol = 1e-6;
inline constexpr double kCutoffWarnThreshold = 1e-4;

/// Population of the highest retained Fock level.
double cutoff_population(const CMatrix& rho, const SpaceLayout& layout);

using SampleCallback = std::function<void(double t, const CMatrix& rho)>;

/// Integrates from rho0 over `grid`, calling `on_sample` at t_start, every
/// sample_every steps, and at t_end. Throws InvalidArgument for a bad initial
/// state and NumericalError on NaN or trace drift beyond kTraceAbortTol.
EvolutionDiagnostics evolve(const LindbladGenerator& gen, const CMatrix& rho0, const TimeGrid& grid,
                            const SampleCallback& on_sample);

template <class R>
struct Evolution {
  std::vector<R> samples;
  EvolutionDiagnostics diagnostics;
};

/// evolve() collecting whatever `sampler(t, rho)` returns.
template <class Sampler>
auto evolve_and_sample(const LindbladGenerator& gen, const CMatrix& rho0, const TimeGrid& grid,
                       Sampler&& sampler) {
  using R = std::invoke_result_t<Sampler&, double, const CMatrix&>;
  Evolution<R> out;
  out.samples.reserve(grid.sample_count());
  out.diagnostics = evolve(gen, rho0, grid, [&](double t, const CMatrix& rho) {
    out.samples.push_back(sampler(t, rho));
  });
  return out;
}

}  // namespace ddmcorr
