#include "ddmcorr/oracles.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

namespace ddmcorr::oracles {

namespace {

cplx gaussian_complex(Rng& rng) {
  std::normal_distribution<double> n01(0.0, 1.0);
  const double re = n01(rng);
  const double im = n01(rng);
  return {re, im};
}

double entropy_bits(const CMatrix& rho) {
  double s = 0.0;
  for (double lam : herm_eig(rho).eigenvalues)
    if (lam > 0.0) s -= lam * std::log2(lam);
  return s;
}

}  // namespace

CMatrix random_pure_two_qubit(Rng& rng) {
  std::vector<cplx> psi(4);
  double norm = 0.0;
  for (auto& z : psi) {
    z = gaussian_complex(rng);
    norm += std::norm(z);
  }
  for (auto& z : psi) z /= std::sqrt(norm);
  return CMatrix::projector(psi);
}

CMatrix random_mixed_two_qubit(Rng& rng) {
  CMatrix a(4, 4);
  for (auto& z : a.data()) z = gaussian_complex(rng);
  CMatrix rho = a.adjoint() * a;
  rho *= 1.0 / rho.trace().real();
  return rho;
}

CMatrix random_hermitian(std::size_t n, Rng& rng) {
  CMatrix a(n, n);
  for (auto& z : a.data()) z = gaussian_complex(rng);
  CMatrix h = a + a.adjoint();
  h *= 0.5;
  return h;
}

CMatrix bell_phi_plus() {
  const double r = 1.0 / std::sqrt(2.0);
  const std::array<cplx, 4> psi{r, 0.0, 0.0, r};
  return CMatrix::projector(psi);
}

CMatrix werner_state(double z) {
  CMatrix rho = bell_phi_plus();
  rho *= z;
  CMatrix mixed = CMatrix::identity(4);
  mixed *= (1.0 - z) / 4.0;
  return rho + mixed;
}

GridOptimum grid_classical_correlation(const CMatrix& rho_ab, std::size_t n_theta, std::size_t n_phi) {
  const std::array<std::size_t, 2> dims{2, 2};
  const std::array<std::size_t, 1> keep_a{0};
  const CMatrix id2 = CMatrix::identity(2);
  const double s_a = entropy_bits(partial_trace(rho_ab, dims, keep_a));

  GridOptimum best;
  best.min_conditional_entropy = 1e300;
  for (std::size_t i = 0; i < n_theta; ++i) {
    const double theta = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n_theta);
    for (std::size_t j = 0; j < n_phi; ++j) {
      const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
      const cplx e = std::polar(1.0, phi);
      const std::array<std::array<cplx, 2>, 2> kets = {{{std::cos(theta), e * std::sin(theta)},
                                                        {std::sin(theta), -e * std::cos(theta)}}};
      double cond = 0.0;
      for (const auto& k : kets) {
        const CMatrix full_proj = kron(id2, CMatrix::projector(k));
        const CMatrix post = full_proj * rho_ab * full_proj;
        const double p = post.trace().real();
        if (p < 1e-12) continue;
        CMatrix rho_a = partial_trace(post, dims, keep_a);
        rho_a *= 1.0 / p;
        cond += p * entropy_bits(rho_a);
      }
      if (cond < best.min_conditional_entropy) {
        best.min_conditional_entropy = cond;
        best.theta = theta;
        best.phi = phi;
      }
    }
  }
  best.classical_correlation = s_a - best.min_conditional_entropy;
  return best;
}

}  // namespace ddmcorr::oracles
