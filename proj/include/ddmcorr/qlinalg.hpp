#pragma once

// Dense complex linear algebra for small composite Hilbert spaces.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace ddmcorr {

using cplx = std::complex<double>;

/// Largest row or column count a CMatrix may have. Kronecker products that
/// would exceed it are rejected.
inline constexpr std::size_t kMaxMatrixDim = 4096;

/// Dense complex matrix, row-major.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols);
  CMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
  /// Row-major nested initializer, e.g. {{0, 1}, {1, 0}}.
  CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static CMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const double> d);
  /// |v><v| for a column vector given as entries.
  static CMatrix projector(std::span<const cplx> v);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }
  bool empty() const noexcept { return data_.empty(); }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  CMatrix conjugate() const;
  CMatrix transpose() const;
  cplx trace() const;

  /// Largest entrywise modulus.
  double max_abs() const;
  /// Largest entrywise modulus of (this - this^dagger).
  double hermiticity_error() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& o);
  CMatrix& operator-=(const CMatrix& o);
  CMatrix& operator*=(cplx s);

  friend bool operator==(const CMatrix&, const CMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

CMatrix operator+(CMatrix a, const CMatrix& b);
CMatrix operator-(CMatrix a, const CMatrix& b);
CMatrix operator*(const CMatrix& a, const CMatrix& b);
CMatrix operator*(cplx s, CMatrix a);
CMatrix operator*(CMatrix a, cplx s);

/// max_ij |a_ij - b_ij|; shapes must agree.
double max_abs_diff(const CMatrix& a, const CMatrix& b);

/// a*b - b*a
CMatrix commutator(const CMatrix& a, const CMatrix& b);

/// Kronecker product: (a (x) b)[i*p+k, j*q+l] = a[i,j] * b[k,l], b of shape p x q.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Reduced operator on the subsystems listed in `keep`, tracing out the rest.
/// `dims` are the subsystem dimensions in tensor order (first is most
/// significant). `keep` must be a nonempty set of distinct indices; the result
/// keeps them in ascending order.
CMatrix partial_trace(const CMatrix& rho, std::span<const std::size_t> dims,
                      std::span<const std::size_t> keep);

struct HermEigResult {
  std::vector<double> eigenvalues;  ///< non-increasing
  CMatrix eigenvectors;             ///< column k pairs with eigenvalues[k]
};

/// Tolerance on max |a - a^dagger| accepted by the Hermitian routines.
inline constexpr double kHermitianTol = 1e-10;

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi sweeps.
/// Throws InvalidArgument for non-Hermitian input and NumericalError if the
/// off-diagonal mass has not fallen below tolerance after kJacobiMaxSweeps.
HermEigResult herm_eig(const CMatrix& a);

/// Eigenvalues only, non-increasing.
std::vector<double> herm_eigenvalues(const CMatrix& a);

inline constexpr int kJacobiMaxSweeps = 100;
inline constexpr double kJacobiOffDiagTol = 1e-12;

/// Eigenvalues at or above this are treated as zero by PSD routines.
inline constexpr double kPsdClampTol = -1e-10;

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [kPsdClampTol, 0) are clamped to zero; anything lower throws NumericalError.
CMatrix matrix_sqrt_psd(const CMatrix& a);

}  // namespace ddmcorr
