#include "ddmcorr/model.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "ddmcorr/error.hpp"

namespace ddmcorr {

SpaceLayout::SpaceLayout(std::size_t n_max) : n_max_(n_max) {
  if (4 * (n_max + 1) > kMaxMatrixDim) {
    throw InvalidArgument("SpaceLayout: n_max " + std::to_string(n_max) + " is too large");
  }
}

std::size_t SpaceLayout::index(std::size_t a, std::size_t b, std::size_t n) const {
  if (a > 1 || b > 1 || n > n_max_) {
    throw InvalidArgument("SpaceLayout::index: (" + std::to_string(a) + ", " + std::to_string(b) +
                          ", " + std::to_string(n) + ") is outside the layout");
  }
  return a * 2 * resonator_dim() + b * resonator_dim() + n;
}

std::vector<cplx> SpaceLayout::basis_ket(std::size_t a, std::size_t b, std::size_t n) const {
  std::vector<cplx> v(dim(), 0.0);
  v[index(a, b, n)] = 1.0;
  return v;
}

CMatrix sigma_minus() { return {{0.0, 1.0}, {0.0, 0.0}}; }
CMatrix sigma_plus() { return {{0.0, 0.0}, {1.0, 0.0}}; }
CMatrix sigma_z() { return {{-1.0, 0.0}, {0.0, 1.0}}; }
CMatrix sigma_y() { return {{0.0, cplx{0.0, -1.0}}, {cplx{0.0, 1.0}, 0.0}}; }

CMatrix annihilation(std::size_t n_max) {
  CMatrix a(n_max + 1, n_max + 1);
  for (std::size_t n = 1; n <= n_max; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

CMatrix number_op(std::size_t n_max) {
  CMatrix m(n_max + 1, n_max + 1);
  for (std::size_t n = 0; n <= n_max; ++n) m(n, n) = static_cast<double>(n);
  return m;
}

CMatrix embed_op(const SpaceLayout& layout, Site site, const CMatrix& local) {
  const std::size_t want = layout.site_dim(site);
  if (!local.square() || local.rows() != want) {
    throw InvalidArgument("embed_op: local operator is " + std::to_string(local.rows()) + "x" +
                          std::to_string(local.cols()) + ", site needs " + std::to_string(want) +
                          "x" + std::to_string(want));
  }
  const CMatrix id2 = CMatrix::identity(2);
  const CMatrix idr = CMatrix::identity(layout.resonator_dim());
  switch (site) {
    case Site::A: return kron(kron(local, id2), idr);
    case Site::B: return kron(kron(id2, local), idr);
    case Site::Resonator: return kron(kron(id2, id2), local);
  }
  throw InvalidArgument("embed_op: unknown site");
}

CMatrix excitation_number(const SpaceLayout& layout) {
  const CMatrix qubit_exc = sigma_plus() * sigma_minus();
  return embed_op(layout, Site::Resonator, number_op(layout.n_max())) +
         embed_op(layout, Site::A, qubit_exc) + embed_op(layout, Site::B, qubit_exc);
}

void PhysicalParams::validate() const {
  auto check = [](double v, const char* name) {
    if (!std::isfinite(v) || v < 0.0) {
      throw InvalidArgument(std::string(name) + " must be finite and >= 0 (got " +
                            std::to_string(v) + ")");
    }
  };
  check(g, "g");
  check(kappa, "kappa");
  check(gamma, "gamma");
  check(gamma_phi, "gamma_phi");
  if (n_max < 1) throw InvalidArgument("n_max must be >= 1");
  SpaceLayout{n_max};
}

CMatrix build_interaction(const SpaceLayout& layout, double g) {
  if (!std::isfinite(g) || g < 0.0) throw InvalidArgument("build_interaction: g must be >= 0");
  const CMatrix a = embed_op(layout, Site::Resonator, annihilation(layout.n_max()));
  const CMatrix a_dag = a.adjoint();
  CMatrix v(layout.dim(), layout.dim());
  for (Site s : {Site::A, Site::B}) {
    const CMatrix sp = embed_op(layout, s, sigma_plus());
    const CMatrix sm = embed_op(layout, s, sigma_minus());
    v += a * sp + a_dag * sm;
  }
  v *= g;
  return v;
}

LindbladGenerator build_generator(const PhysicalParams& params) {
  params.validate();
  const SpaceLayout layout(params.n_max);
  LindbladGenerator gen{layout, build_interaction(layout, params.g), {}};
  gen.channels.push_back({params.gamma_phi, embed_op(layout, Site::A, sigma_z()),
                          ChannelForm::Dephasing, "dephasing_A"});
  gen.channels.push_back({params.gamma_phi, embed_op(layout, Site::B, sigma_z()),
                          ChannelForm::Dephasing, "dephasing_B"});
  gen.channels.push_back({params.gamma, embed_op(layout, Site::A, sigma_minus()),
                          ChannelForm::Standard, "relaxation_A"});
  gen.channels.push_back({params.gamma, embed_op(layout, Site::B, sigma_minus()),
                          ChannelForm::Standard, "relaxation_B"});
  gen.channels.push_back({params.kappa, embed_op(layout, Site::Resonator, annihilation(params.n_max)),
                          ChannelForm::Standard, "leakage"});
  return gen;
}

double qubit_gap(double delta, double t_tunnel) {
  return std::sqrt(4.0 * t_tunnel * t_tunnel + delta * delta);
}

double coupling_coefficient(double e_charge, double c_c, double c_tot, double omega0,
                            double l_length, double c0_per_len) {
  const std::pair<double, const char*> args[] = {{e_charge, "e_charge"}, {c_c, "c_c"},
                                                 {c_tot, "c_tot"},       {omega0, "omega0"},
                                                 {l_length, "l_length"}, {c0_per_len, "c0_per_len"}};
  for (const auto& [v, name] : args) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument(std::string("coupling_coefficient: ") + name + " must be > 0");
    }
  }
  return e_charge * c_c / (2.0 * c_tot) * std::sqrt(omega0 / (l_length * c0_per_len));
}

}  // namespace ddmcorr
