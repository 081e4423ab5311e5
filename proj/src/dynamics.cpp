#include "ddmcorr/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ddmcorr/error.hpp"

namespace ddmcorr {

namespace {

void hermitize(CMatrix& rho) {
  const std::size_t n = rho.rows();
  for (std::size_t i = 0; i < n; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
      rho(i, j) = m;
      rho(j, i) = std::conj(m);
    }
  }
}

// y = x + h * k, all dim x dim.
void axpy_into(const CMatrix& x, double h, const CMatrix& k, CMatrix& y) {
  auto xs = x.data();
  auto ks = k.data();
  auto ys = y.data();
  for (std::size_t i = 0; i < ys.size(); ++i) ys[i] = xs[i] + h * ks[i];
}

}  // namespace

void validate_density_matrix(const CMatrix& rho, std::size_t expected_dim, double tol) {
  if (!rho.square() || rho.rows() != expected_dim) {
    throw InvalidArgument("density matrix has dimension " + std::to_string(rho.rows()) + "x" +
                          std::to_string(rho.cols()) + ", expected " + std::to_string(expected_dim));
  }
  if (!rho.all_finite()) throw InvalidArgument("density matrix has non-finite entries");
  const double herr = rho.hermiticity_error();
  if (herr > tol) throw InvalidArgument("density matrix is not Hermitian (error " + std::to_string(herr) + ")");
  const double terr = std::abs(rho.trace() - 1.0);
  if (terr > tol) throw InvalidArgument("density matrix trace differs from 1 by " + std::to_string(terr));
  const double lmin = herm_eigenvalues(rho).back();
  if (lmin < -tol) throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(lmin));
}

std::vector<Liouvillian::Entry> Liouvillian::to_sparse(const CMatrix& m) {
  std::vector<Entry> out;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j) != cplx{}) out.push_back({i, j, m(i, j)});
  return out;
}

Liouvillian::Liouvillian(const LindbladGenerator& gen) : dim_(gen.dim()) {
  if (!gen.hamiltonian.square() || gen.hamiltonian.rows() != gen.layout.dim()) {
    throw InvalidArgument("Liouvillian: Hamiltonian does not match the layout dimension");
  }
  CMatrix heff = gen.hamiltonian;
  for (const Channel& ch : gen.channels) {
    if (!ch.jump.square() || ch.jump.rows() != dim_) {
      throw InvalidArgument("Liouvillian: channel '" + ch.label + "' has a mismatched jump operator");
    }
    if (!(ch.rate >= 0.0) || !std::isfinite(ch.rate)) {
      throw InvalidArgument("Liouvillian: channel '" + ch.label + "' has an invalid rate");
    }
    if (ch.rate == 0.0) continue;
    if (ch.form == ChannelForm::Standard) {
      heff -= cplx{0.0, 0.5 * ch.rate} * (ch.jump.adjoint() * ch.jump);
      jumps_.push_back({ch.rate, to_sparse(ch.jump), to_sparse(ch.jump.adjoint())});
    } else {
      scalar_decay_ += 0.5 * ch.rate;
      jumps_.push_back({0.5 * ch.rate, to_sparse(ch.jump), to_sparse(ch.jump)});
    }
  }
  heff_ = to_sparse(heff);
}

CMatrix Liouvillian::apply(const CMatrix& rho) const {
  CMatrix out(dim_, dim_);
  apply_into(rho, out);
  return out;
}

void Liouvillian::apply_into(const CMatrix& rho, CMatrix& out) const {
  if (!rho.square() || rho.rows() != dim_) {
    throw InvalidArgument("lindblad_rhs: state dimension " + std::to_string(rho.rows()) +
                          " does not match generator dimension " + std::to_string(dim_));
  }
  const std::size_t n = dim_;
  auto o = out.data();
  auto r = rho.data();
  std::fill(o.begin(), o.end(), cplx{});

  // -i (Heff rho - rho Heff^dag)
  const cplx minus_i{0.0, -1.0};
  for (const Entry& e : heff_) {
    const cplx h = minus_i * e.value;  // row e.row of Heff rho
    const cplx* src = &r[e.col * n];
    cplx* dst = &o[e.row * n];
    for (std::size_t j = 0; j < n; ++j) dst[j] += h * src[j];
  }
  for (const Entry& e : heff_) {
    // (rho Heff^dag)(i, row) = sum_k rho(i, k) conj(Heff(row, k)), k = e.col
    const cplx h = cplx{0.0, 1.0} * std::conj(e.value);
    for (std::size_t i = 0; i < n; ++i) o[i * n + e.row] += h * r[i * n + e.col];
  }
  if (scalar_decay_ != 0.0) {
    for (std::size_t k = 0; k < o.size(); ++k) o[k] -= scalar_decay_ * r[k];
  }
  // coef * Left rho Right
  for (const JumpTerm& jt : jumps_) {
    for (const Entry& a : jt.left)
      for (const Entry& b : jt.right)
        o[a.row * n + b.col] += jt.coef * a.value * r[a.col * n + b.row] * b.value;
  }
}

CMatrix lindblad_rhs(const LindbladGenerator& gen, const CMatrix& rho) {
  return Liouvillian(gen).apply(rho);
}

namespace {

struct Rk4Workspace {
  explicit Rk4Workspace(std::size_t n) : k1(n, n), k2(n, n), k3(n, n), k4(n, n), tmp(n, n) {}
  CMatrix k1, k2, k3, k4, tmp;
};

void rk4_advance(const Liouvillian& lv, CMatrix& rho, double dt, Rk4Workspace& ws) {
  lv.apply_into(rho, ws.k1);
  axpy_into(rho, 0.5 * dt, ws.k1, ws.tmp);
  lv.apply_into(ws.tmp, ws.k2);
  axpy_into(rho, 0.5 * dt, ws.k2, ws.tmp);
  lv.apply_into(ws.tmp, ws.k3);
  axpy_into(rho, dt, ws.k3, ws.tmp);
  lv.apply_into(ws.tmp, ws.k4);
  auto y = rho.data();
  auto a = ws.k1.data();
  auto b = ws.k2.data();
  auto c = ws.k3.data();
  auto d = ws.k4.data();
  const double h6 = dt / 6.0;
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += h6 * (a[i] + 2.0 * b[i] + 2.0 * c[i] + d[i]);
}

void require_finite(const CMatrix& rho, double t) {
  if (!rho.all_finite()) {
    throw NumericalError("integration produced NaN/Inf near t = " + std::to_string(t) +
                         " ns; the step is probably too large");
  }
}

}  // namespace

CMatrix rk4_step(const Liouvillian& lv, const CMatrix& rho, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("rk4_step: dt must be > 0");
  if (!rho.square() || rho.rows() != lv.dim()) throw InvalidArgument("rk4_step: dimension mismatch");
  if (rho.hermiticity_error() > 1e-9) throw InvalidArgument("rk4_step: state is not Hermitian");
  Rk4Workspace ws(lv.dim());
  CMatrix out = rho;
  rk4_advance(lv, out, dt, ws);
  hermitize(out);
  require_finite(out, dt);
  return out;
}

CMatrix rk4_step(const LindbladGenerator& gen, const CMatrix& rho, double dt) {
  return rk4_step(Liouvillian(gen), rho, dt);
}

void TimeGrid::validate() const {
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw InvalidArgument("time grid bounds must be finite");
  if (!(t_end > t_start)) throw InvalidArgument("t_end must be greater than t_start");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw InvalidArgument("dt must be > 0");
  if ((t_end - t_start) / dt < 1.0 - 1e-9) throw InvalidArgument("time span must cover at least one step of dt");
  if (sample_every == 0) throw InvalidArgument("sample_every must be >= 1");
}

std::size_t TimeGrid::steps() const {
  const double ratio = (t_end - t_start) / dt;
  const double nearest = std::round(ratio);
  if (std::abs(ratio - nearest) <= 1e-9 * std::max(1.0, ratio)) return static_cast<std::size_t>(nearest);
  return static_cast<std::size_t>(std::ceil(ratio));
}

double TimeGrid::time_at(std::size_t k) const {
  const std::size_t n = steps();
  if (k >= n) return t_end;
  return t_start + static_cast<double>(k) * dt;
}

std::size_t TimeGrid::sample_count() const {
  const std::size_t n = steps();
  return 1 + n / sample_every + (n % sample_every != 0 ? 1 : 0);
}

double cutoff_population(const CMatrix& rho, const SpaceLayout& layout) {
  double p = 0.0;
  const std::size_t top = layout.n_max();
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      const std::size_t i = layout.index(a, b, top);
      p += rho(i, i).real();
    }
  return p;
}

EvolutionDiagnostics evolve(const LindbladGenerator& gen, const CMatrix& rho0, const TimeGrid& grid,
                            const SampleCallback& on_sample) {
  grid.validate();
  validate_density_matrix(rho0, gen.dim());
  const Liouvillian lv(gen);
  Rk4Workspace ws(lv.dim());

  EvolutionDiagnostics diag;
  diag.min_eigenvalue = 1.0;
  CMatrix rho = rho0;
  hermitize(rho);

  auto record_sample = [&](double t, double herr) {
    diag.max_hermiticity_error = std::max(diag.max_hermiticity_error, herr);
    diag.min_eigenvalue = std::min(diag.min_eigenvalue, herm_eigenvalues(rho).back());
    diag.max_cutoff_population = std::max(diag.max_cutoff_population, cutoff_population(rho, gen.layout));
    ++diag.samples;
    if (on_sample) on_sample(t, rho);
  };

  record_sample(grid.t_start, rho0.hermiticity_error());
  diag.max_trace_error = std::abs(rho.trace() - 1.0);

  const std::size_t n = grid.steps();
  for (std::size_t k = 1; k <= n; ++k) {
    const double t_prev = grid.time_at(k - 1);
    const double t = grid.time_at(k);
    rk4_advance(lv, rho, t - t_prev, ws);
    const bool sample = (k % grid.sample_every == 0) || k == n;
    const double herr = sample ? rho.hermiticity_error() : 0.0;
    hermitize(rho);
    require_finite(rho, t);
    const double terr = std::abs(rho.trace() - 1.0);
    diag.max_trace_error = std::max(diag.max_trace_error, terr);
    if (terr > kTraceAbortTol) {
      throw NumericalError("trace drifted by " + std::to_string(terr) + " at t = " + std::to_string(t) +
                           " ns (limit " + std::to_string(kTraceAbortTol) + ")");
    }
    if (sample) record_sample(t, herr);
  }
  diag.steps = n;
  diag.cutoff_warning = diag.max_cutoff_population > kCutoffWarnThreshold;
  return diag;
}

}  // namespace ddmcorr
