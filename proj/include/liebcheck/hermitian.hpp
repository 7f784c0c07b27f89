#pragma once

#include <complex>
#include <functional>
#include <initializer_list>

#include <Eigen/Dense>

#include "liebcheck/errors.hpp"

namespace liebcheck {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Eigenvalue threshold a matrix must clear to count as positive definite.
inline constexpr double kPdFloor = 1e-12;
/// Largest eigenvalue accepted as an argument of the matrix exponential.
inline constexpr double kExpOverflowGuard = 700.0;
/// Relative Frobenius size of the anti-self-adjoint part tolerated on ingestion.
inline constexpr double kHermitianTolerance = 1e-8;

/// Dense n x n self-adjoint matrix. The stored entries are exactly
/// self-adjoint: entry (i, j) is the conjugate of entry (j, i) bit for bit.
class HermitianMatrix {
 public:
  /// Returns (M + M*) / 2. Throws NotHermitian when
  /// ||M - M*||_F > 1e-8 (1 + ||M||_F), DimMismatch when M is not square.
  static HermitianMatrix symmetrize(const ComplexMatrix& m);

  /// Unchecked projection onto the self-adjoint part. Meant for products
  /// that are self-adjoint algebraically, such as U f(L) U*.
  static HermitianMatrix hermitian_part(const ComplexMatrix& m);

  static HermitianMatrix identity(Index dim);
  static HermitianMatrix zero(Index dim);
  static HermitianMatrix diagonal(const RealVector& values);
  static HermitianMatrix diagonal(std::initializer_list<double> values);

  Index dim() const noexcept { return m_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  Complex operator()(Index i, Index j) const { return m_(i, j); }

  double trace() const;
  double frobenius_norm() const { return m_.norm(); }

  /// U M U* for a square U of matching size.
  HermitianMatrix conjugated_by(const ComplexMatrix& u) const;

 private:
  explicit HermitianMatrix(ComplexMatrix m) : m_(std::move(m)) {}

  ComplexMatrix m_;
};

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* where);

HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b);
HermitianMatrix operator-(const HermitianMatrix& a);
HermitianMatrix operator*(double s, const HermitianMatrix& a);
HermitianMatrix operator*(const HermitianMatrix& a, double s);

/// t a + (1 - t) b, the segment point used by the convexity testers.
HermitianMatrix mix(double t, const HermitianMatrix& a, const HermitianMatrix& b);

/// Eigenvalues in ascending order; columns of `vectors` are orthonormal
/// eigenvectors.
struct SpectralDecomposition {
  RealVector eigenvalues;
  ComplexMatrix vectors;

  Index dim() const noexcept { return eigenvalues.size(); }
  /// U diag(eigenvalues) U*.
  HermitianMatrix reconstruct() const;
};

/// Throws ConvergenceFailure when the solver does not converge.
SpectralDecomposition eig(const HermitianMatrix& m);

/// Positive-definite matrix: every eigenvalue exceeds kPdFloor. The
/// decomposition computed during validation is kept, so log and entropy of a
/// PdMatrix need no further eigen-solve.
class PdMatrix {
 public:
  /// Throws DomainError if the smallest eigenvalue is <= kPdFloor.
  explicit PdMatrix(const HermitianMatrix& m);

  /// Builds from a known spectrum; the base matrix is U diag(L) U*.
  static PdMatrix from_spectrum(SpectralDecomposition spectrum);

  static PdMatrix identity(Index dim);

  const HermitianMatrix& base() const noexcept { return base_; }
  operator const HermitianMatrix&() const noexcept { return base_; }

  Index dim() const noexcept { return base_.dim(); }
  double min_eigenvalue() const noexcept { return min_eigenvalue_; }
  const SpectralDecomposition& spectrum() const noexcept { return spectrum_; }
  double trace() const { return base_.trace(); }
  double frobenius_norm() const { return base_.frobenius_norm(); }

 private:
  PdMatrix(HermitianMatrix base, SpectralDecomposition spectrum);

  HermitianMatrix base_;
  SpectralDecomposition spectrum_;
  double min_eigenvalue_;
};

using ScalarFunction = std::function<double(double)>;

/// U diag(f(l_i)) U*. Throws DomainError if f is not finite at some eigenvalue.
HermitianMatrix matrix_fn(const SpectralDecomposition& spectrum, const ScalarFunction& f);
HermitianMatrix matrix_fn(const HermitianMatrix& m, const ScalarFunction& f);

/// Spectral exponential. Throws Overflow above kExpOverflowGuard and
/// DomainError when the result would fall under kPdFloor.
PdMatrix mat_exp(const HermitianMatrix& m);

/// Spectral logarithm.
HermitianMatrix mat_log(const PdMatrix& a);

/// tr(AB) for self-adjoint A, B. The imaginary residue is checked against
/// 1e-10 (1 + ||A||_F ||B||_F) and dropped.
double trace_product(const HermitianMatrix& a, const HermitianMatrix& b);

}  // namespace liebcheck
