#include "ddmcorr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "ddmcorr/error.hpp"

namespace ddmcorr {

namespace {

constexpr double kPi = std::numbers::pi;

void require_two_qubit(const CMatrix& rho, const char* what) {
  if (!rho.square() || rho.rows() != 4) {
    throw InvalidArgument(std::string(what) + ": expected a 4x4 two-qubit matrix, got " +
                          std::to_string(rho.rows()) + "x" + std::to_string(rho.cols()));
  }
}

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

double binary_entropy(double x) { return -xlog2x(x) - xlog2x(1.0 - x); }

// Unnormalized 2x2 block <psi|_side rho |psi>_side of the unmeasured qubit.
std::array<cplx, 4> contract(const CMatrix& rho, const std::array<cplx, 2>& psi, MeasuredQubit side) {
  std::array<cplx, 4> x{};
  for (std::size_t u = 0; u < 2; ++u)
    for (std::size_t v = 0; v < 2; ++v) {
      cplx acc = 0.0;
      for (std::size_t m = 0; m < 2; ++m)
        for (std::size_t mp = 0; mp < 2; ++mp) {
          const std::size_t row = side == MeasuredQubit::B ? 2 * u + m : 2 * m + u;
          const std::size_t col = side == MeasuredQubit::B ? 2 * v + mp : 2 * mp + v;
          acc += std::conj(psi[m]) * rho(row, col) * psi[mp];
        }
      x[2 * u + v] = acc;
    }
  return x;
}

// p * S(x / p) for a 2x2 Hermitian PSD block with trace p.
double weighted_entropy_2x2(const std::array<cplx, 4>& x) {
  const double p = x[0].real() + x[3].real();
  if (p < kMinBranchProbability) return 0.0;
  const double diff = x[0].real() - x[3].real();
  const double r = std::min(1.0, std::sqrt(diff * diff + 4.0 * std::norm(x[1])) / p);
  return p * binary_entropy(0.5 * (1.0 + r));
}

double objective(const CMatrix& rho, double theta, double phi, MeasuredQubit side) {
  const MeasurementProjectorPair m{theta, phi};
  return weighted_entropy_2x2(contract(rho, m.ket(1), side)) +
         weighted_entropy_2x2(contract(rho, m.ket(2), side));
}

// Golden-section minimization of f on [lo, hi]; returns (x, f(x)).
template <class F>
std::pair<double, double> golden_section(F&& f, double lo, double hi, double x_tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > x_tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace

std::array<cplx, 2> MeasurementProjectorPair::ket(int outcome) const {
  const cplx e = std::polar(1.0, phi);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  if (outcome == 1) return {cplx{c}, e * s};
  if (outcome == 2) return {cplx{s}, -e * c};
  throw InvalidArgument("measurement outcome must be 1 or 2");
}

CMatrix MeasurementProjectorPair::projector(int outcome) const {
  const auto k = ket(outcome);
  return CMatrix::projector(k);
}

MeasurementProjectorPair MeasurementProjectorPair::canonical() const {
  const double quarter = kPi / 2.0;
  double t = theta - std::floor(theta / quarter) * quarter;
  if (t >= quarter || t < 0.0) t = 0.0;
  double p = std::fmod(phi, 2.0 * kPi);
  if (p < 0.0) p += 2.0 * kPi;
  if (p >= 2.0 * kPi) p = 0.0;
  return {t, p};
}

double entropy_vn(const CMatrix& rho) {
  if (!rho.square()) throw InvalidArgument("entropy_vn: matrix is not square");
  const double terr = std::abs(rho.trace() - 1.0);
  if (terr > 1e-8) throw InvalidArgument("entropy_vn: trace differs from 1 by " + std::to_string(terr));
  double s = 0.0;
  for (double lam : herm_eigenvalues(rho)) {
    if (lam < kEntropyClampTol) {
      throw NumericalError("entropy_vn: eigenvalue " + std::to_string(lam) + " below positivity tolerance");
    }
    s -= xlog2x(std::max(lam, 0.0));
  }
  return std::max(s, 0.0);
}

CMatrix qubit_marginal(const CMatrix& rho_ab, MeasuredQubit which) {
  require_two_qubit(rho_ab, "qubit_marginal");
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 1> keep{which == MeasuredQubit::A ? std::size_t{0} : std::size_t{1}};
  return partial_trace(rho_ab, dims, keep);
}

double mutual_information(const CMatrix& rho_ab) {
  require_two_qubit(rho_ab, "mutual_information");
  return entropy_vn(qubit_marginal(rho_ab, MeasuredQubit::A)) +
         entropy_vn(qubit_marginal(rho_ab, MeasuredQubit::B)) - entropy_vn(rho_ab);
}

ConditionalState conditional_state(const CMatrix& rho_ab, const MeasurementProjectorPair& proj, int outcome,
                                   MeasuredQubit side) {
  require_two_qubit(rho_ab, "conditional_state");
  const auto x = contract(rho_ab, proj.ket(outcome), side);
  ConditionalState out;
  out.probability = std::clamp(x[0].real() + x[3].real(), 0.0, 1.0);
  if (out.probability < kMinBranchProbability) return out;
  out.defined = true;
  out.state = CMatrix(2, 2, {x[0], x[1], x[2], x[3]});
  out.state *= 1.0 / (x[0].real() + x[3].real());
  return out;
}

double conditional_entropy(const CMatrix& rho_ab, const MeasurementProjectorPair& proj, MeasuredQubit side) {
  require_two_qubit(rho_ab, "conditional_entropy");
  return objective(rho_ab, proj.theta, proj.phi, side);
}

ClassicalCorrelation classical_correlation(const CMatrix& rho_ab, MeasuredQubit side,
                                           const OptimizerSettings& settings) {
  require_two_qubit(rho_ab, "classical_correlation");
  if (settings.theta_points == 0 || settings.phi_points == 0 || settings.starts == 0) {
    throw InvalidArgument("classical_correlation: optimizer grid must be nonempty");
  }
  const MeasuredQubit kept = side == MeasuredQubit::B ? MeasuredQubit::A : MeasuredQubit::B;
  const double s_unmeasured = entropy_vn(qubit_marginal(rho_ab, kept));

  const double h_theta = (kPi / 2.0) / static_cast<double>(settings.theta_points);
  const double h_phi = 2.0 * kPi / static_cast<double>(settings.phi_points);

  struct Candidate {
    double value, theta, phi;
  };
  std::vector<Candidate> grid;
  grid.reserve(settings.theta_points * settings.phi_points);
  for (std::size_t i = 0; i < settings.theta_points; ++i) {
    const double theta = static_cast<double>(i) * h_theta;
    for (std::size_t j = 0; j < settings.phi_points; ++j) {
      const double phi = static_cast<double>(j) * h_phi;
      grid.push_back({objective(rho_ab, theta, phi, side), theta, phi});
    }
  }
  const std::size_t starts = std::min(settings.starts, grid.size());
  std::partial_sort(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(starts), grid.end(),
                    [](const Candidate& a, const Candidate& b) { return a.value < b.value; });

  Candidate best = grid.front();
  bool converged = true;
  const double x_tol = 1e-9;
  for (std::size_t s = 0; s < starts; ++s) {
    Candidate cur = grid[s];
    std::size_t round = 0;
    for (; round < settings.max_rounds; ++round) {
      const double before = cur.value;
      auto [t, ft] = golden_section([&](double th) { return objective(rho_ab, th, cur.phi, side); },
                                    cur.theta - h_theta, cur.theta + h_theta, x_tol);
      if (ft < cur.value) cur = {ft, t, cur.phi};
      auto [p, fp] = golden_section([&](double ph) { return objective(rho_ab, cur.theta, ph, side); },
                                    cur.phi - h_phi, cur.phi + h_phi, x_tol);
      if (fp < cur.value) cur = {fp, cur.theta, p};
      if (before - cur.value < settings.objective_tol) break;
    }
    if (round == settings.max_rounds) converged = false;
    if (cur.value < best.value) best = cur;
  }

  ClassicalCorrelation out;
  out.min_conditional_entropy = best.value;
  out.value = s_unmeasured - best.value;
  out.argmax = MeasurementProjectorPair{best.theta, best.phi}.canonical();
  out.converged = converged;
  return out;
}

DiscordResult discord_analysis(const CMatrix& rho_ab, MeasuredQubit side, const OptimizerSettings& settings) {
  const ClassicalCorrelation cc = classical_correlation(rho_ab, side, settings);
  const double mi_raw = mutual_information(rho_ab);
  DiscordResult out;
  out.mutual_information = std::max(mi_raw, 0.0);
  out.discord_raw = mi_raw - cc.value;
  out.discord = std::clamp(out.discord_raw, 0.0, out.mutual_information);
  out.classical_correlation = out.mutual_information - out.discord;
  out.argmax = cc.argmax;
  out.converged = cc.converged;
  return out;
}

double quantum_discord(const CMatrix& rho_ab, MeasuredQubit side) { return discord_analysis(rho_ab, side).discord; }

double l1_coherence(const CMatrix& rho) {
  if (!rho.square()) throw InvalidArgument("l1_coherence: matrix is not square");
  double d = 0.0;
  for (std::size_t i = 0; i < rho.rows(); ++i)
    for (std::size_t j = 0; j < rho.cols(); ++j)
      if (i != j) d += std::abs(rho(i, j));
  return d;
}

double concurrence(const CMatrix& rho_ab) {
  require_two_qubit(rho_ab, "concurrence");
  const CMatrix yy = kron(sigma_y(), sigma_y());
  const CMatrix rho_tilde = yy * rho_ab.conjugate() * yy;
  const CMatrix root = matrix_sqrt_psd(rho_ab);
  CMatrix r = root * rho_tilde * root;
  r = 0.5 * (r + r.adjoint());
  std::vector<double> mu = herm_eigenvalues(r);
  std::array<double, 4> lam{};
  for (std::size_t k = 0; k < 4; ++k) lam[k] = std::sqrt(std::max(mu[k], 0.0));
  std::sort(lam.begin(), lam.end(), std::greater<>());
  return std::clamp(lam[0] - lam[1] - lam[2] - lam[3], 0.0, 1.0);
}

double eof_from_concurrence(double c) {
  c = std::clamp(c, 0.0, 1.0);
  if (c == 0.0) return 0.0;
  const double f = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
  return std::clamp(binary_entropy(f), 0.0, 1.0);
}

double eof(const CMatrix& rho_ab) { return eof_from_concurrence(concurrence(rho_ab)); }

CMatrix reduce_to_qubits(const CMatrix& rho_full, const SpaceLayout& layout) {
  const auto dims = layout.dims();
  const std::array<std::size_t, 2> keep{0, 1};
  return partial_trace(rho_full, dims, keep);
}

double purity(const CMatrix& rho) {
  double p = 0.0;
  for (const cplx& z : rho.data()) p += std::norm(z);
  return p;
}

CorrelationSample sample_all(const CMatrix& rho_full, const SpaceLayout& layout, double t, MeasuredQubit side) {
  if (!rho_full.square() || rho_full.rows() != layout.dim()) {
    throw InvalidArgument("sample_all: state dimension does not match the layout");
  }
  const CMatrix rho_ab = reduce_to_qubits(rho_full, layout);
  const DiscordResult dr = discord_analysis(rho_ab, side);
  CorrelationSample s;
  s.t = t;
  s.coherence_D = l1_coherence(rho_ab);
  s.discord_Q = dr.discord;
  s.discord_raw = dr.discord_raw;
  s.classical_C = dr.classical_correlation;
  s.mutual_I = dr.mutual_information;
  s.concurrence = concurrence(rho_ab);
  s.eof = eof_from_concurrence(s.concurrence);
  s.purity = purity(rho_full);
  s.trace_err = std::abs(rho_full.trace() - 1.0);
  s.argmax_theta = dr.argmax.theta;
  s.argmax_phi = dr.argmax.phi;
  s.coh_A = l1_coherence(qubit_marginal(rho_ab, MeasuredQubit::A));
  s.coh_B = l1_coherence(qubit_marginal(rho_ab, MeasuredQubit::B));
  s.optimizer_converged = dr.converged;
  return s;
}

}  // namespace ddmcorr
