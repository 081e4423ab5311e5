#include "ddmcorr/qlinalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ddmcorr/error.hpp"

namespace ddmcorr {

namespace {

void require_same_shape(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw InvalidArgument(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) +
                          "x" + std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) +
                          "x" + std::to_string(b.cols()) + ")");
  }
}

void require_hermitian(const CMatrix& a, const char* what) {
  if (!a.square()) throw InvalidArgument(std::string(what) + ": matrix is not square");
  if (!a.all_finite()) throw InvalidArgument(std::string(what) + ": non-finite entry");
  const double herr = a.hermiticity_error();
  if (herr > kHermitianTol) {
    throw InvalidArgument(std::string(what) + ": matrix is not Hermitian (max |A - A^H| = " +
                          std::to_string(herr) + ")");
  }
}

double offdiag_frobenius_sq(const CMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.rows();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

double frobenius_sq(const CMatrix& a) {
  double s = 0.0;
  for (const cplx& z : a.data()) s += std::norm(z);
  return s;
}

// Cyclic Jacobi on a Hermitian copy. Each (p,q) rotation is U = D(alpha) R(theta)
// with D removing the phase of a_pq and R the classical real Jacobi rotation.
HermEigResult jacobi(CMatrix a, bool want_vectors) {
  const std::size_t n = a.rows();
  // Symmetrize so the iteration works on an exactly Hermitian matrix.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx m = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = m;
      a(j, i) = std::conj(m);
    }
  }

  CMatrix v = want_vectors ? CMatrix::identity(n) : CMatrix{};
  const double tol = kJacobiOffDiagTol * std::max(1.0, std::sqrt(frobenius_sq(a)));
  const double tol_sq = tol * tol;

  int sweep = 0;
  for (; sweep < kJacobiMaxSweeps; ++sweep) {
    if (offdiag_frobenius_sq(a) <= tol_sq) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double r = std::abs(a(p, q));
        if (r == 0.0) continue;
        const cplx phase = a(p, q) / r;  // e^{i alpha}
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * r);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // U on the (p,q) plane: [[c, s], [-s e^{-i alpha}, c e^{-i alpha}]]
        const cplx upp = c;
        const cplx upq = s;
        const cplx uqp = -s * std::conj(phase);
        const cplx uqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {  // A <- A U
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * upp + akq * uqp;
          a(k, q) = akp * upq + akq * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // A <- U^H A
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
          a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * r;
        a(q, q) = aqq + t * r;

        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = vkp * upp + vkq * uqp;
            v(k, q) = vkp * upq + vkq * uqq;
          }
        }
      }
    }
  }
  if (sweep == kJacobiMaxSweeps && offdiag_frobenius_sq(a) > tol_sq) {
    throw NumericalError("herm_eig: Jacobi iteration did not converge within " +
                         std::to_string(kJacobiMaxSweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermEigResult out;
  out.eigenvalues.reserve(n);
  for (std::size_t k : order) out.eigenvalues.push_back(a(k, k).real());
  if (want_vectors) {
    out.eigenvectors = CMatrix(n, n);
    for (std::size_t col = 0; col < n; ++col)
      for (std::size_t row = 0; row < n; ++row) out.eigenvectors(row, col) = v(row, order[col]);
  }
  return out;
}

}  // namespace

CMatrix::CMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx{0.0, 0.0}) {}

CMatrix::CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw InvalidArgument("CMatrix: entry count " + std::to_string(data_.size()) +
                          " does not match " + std::to_string(rows) + "x" + std::to_string(cols));
  }
}

CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw InvalidArgument("CMatrix: ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMatrix CMatrix::diagonal(std::span<const double> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

CMatrix CMatrix::projector(std::span<const cplx> v) {
  const std::size_t n = v.size();
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = v[i] * std::conj(v[j]);
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

CMatrix CMatrix::conjugate() const {
  CMatrix m = *this;
  for (cplx& z : m.data_) z = std::conj(z);
  return m;
}

CMatrix CMatrix::transpose() const {
  CMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

cplx CMatrix::trace() const {
  if (!square()) throw InvalidArgument("trace: matrix is not square");
  cplx t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double CMatrix::max_abs() const {
  double m = 0.0;
  for (const cplx& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double CMatrix::hermiticity_error() const {
  if (!square()) throw InvalidArgument("hermiticity_error: matrix is not square");
  double m = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (cplx& z : data_) z *= s;
  return *this;
}

CMatrix operator+(CMatrix a, const CMatrix& b) { return a += b; }
CMatrix operator-(CMatrix a, const CMatrix& b) { return a -= b; }
CMatrix operator*(cplx s, CMatrix a) { return a *= s; }
CMatrix operator*(CMatrix a, cplx s) { return a *= s; }

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.rows()) {
    throw InvalidArgument("matrix product: inner dimensions differ (" + std::to_string(a.cols()) +
                          " vs " + std::to_string(b.rows()) + ")");
  }
  CMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k) m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

CMatrix commutator(const CMatrix& a, const CMatrix& b) { return a * b - b * a; }

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > kMaxMatrixDim || cols > kMaxMatrixDim) {
    throw InvalidArgument("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                          " exceeds the maximum dimension " + std::to_string(kMaxMatrixDim));
  }
  const std::size_t p = b.rows();
  const std::size_t q = b.cols();
  CMatrix c(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      for (std::size_t k = 0; k < p; ++k)
        for (std::size_t l = 0; l < q; ++l) c(i * p + k, j * q + l) = aij * b(k, l);
    }
  return c;
}

CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep) {
  if (dims.empty()) throw InvalidArgument("partial_trace: no subsystems given");
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  const std::size_t nsub = dims.size();
  std::vector<bool> kept(nsub, false);
  for (std::size_t k : keep) {
    if (k >= nsub) throw InvalidArgument("partial_trace: subsystem index out of range");
    if (kept[k]) throw InvalidArgument("partial_trace: duplicate subsystem index");
    kept[k] = true;
  }
  std::size_t total = 1;
  for (std::size_t d : dims) {
    if (d == 0) throw InvalidArgument("partial_trace: zero subsystem dimension");
    total *= d;
  }
  if (!rho.square() || rho.rows() != total) {
    throw InvalidArgument("partial_trace: matrix dimension " + std::to_string(rho.rows()) +
                          " does not match layout dimension " + std::to_string(total));
  }

  std::size_t kept_dim = 1;
  std::size_t traced_dim = 1;
  for (std::size_t s = 0; s < nsub; ++s) (kept[s] ? kept_dim : traced_dim) *= dims[s];

  // Map (kept multi-index, traced multi-index) -> full index once.
  std::vector<std::size_t> full_index(kept_dim * traced_dim);
  std::vector<std::size_t> digits(nsub, 0);
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (std::size_t s = nsub; s-- > 0;) {
      digits[s] = rem % dims[s];
      rem /= dims[s];
    }
    std::size_t ki = 0;
    std::size_t ti = 0;
    for (std::size_t s = 0; s < nsub; ++s) {
      if (kept[s]) ki = ki * dims[s] + digits[s];
      else ti = ti * dims[s] + digits[s];
    }
    full_index[ki * traced_dim + ti] = f;
  }

  CMatrix out(kept_dim, kept_dim);
  for (std::size_t i = 0; i < kept_dim; ++i)
    for (std::size_t j = 0; j < kept_dim; ++j) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < traced_dim; ++t)
        acc += rho(full_index[i * traced_dim + t], full_index[j * traced_dim + t]);
      out(i, j) = acc;
    }
  return out;
}

HermEigResult herm_eig(const CMatrix& a) {
  require_hermitian(a, "herm_eig");
  return jacobi(a, true);
}

std::vector<double> herm_eigenvalues(const CMatrix& a) {
  require_hermitian(a, "herm_eigenvalues");
  return jacobi(a, false).eigenvalues;
}

CMatrix matrix_sqrt_psd(const CMatrix& a) {
  const HermEigResult eig = herm_eig(a);
  const std::size_t n = a.rows();
  std::vector<double> roots(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double lam = eig.eigenvalues[k];
    if (lam < kPsdClampTol) {
      throw NumericalError("matrix_sqrt_psd: eigenvalue " + std::to_string(lam) +
                           " is below the positivity tolerance");
    }
    roots[k] = lam > 0.0 ? std::sqrt(lam) : 0.0;
  }
  const CMatrix& v = eig.eigenvectors;
  CMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += v(i, k) * roots[k] * std::conj(v(j, k));
      out(i, j) = acc;
      out(j, i) = std::conj(acc);
    }
  for (std::size_t i = 0; i < n; ++i) out(i, i) = out(i, i).real();
  return out;
}

}  // namespace ddmcorr
