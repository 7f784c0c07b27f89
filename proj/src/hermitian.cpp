#include "liebcheck/hermitian.hpp"

#include <cmath>
#include <sstream>

namespace liebcheck {

namespace {

std::string dim_message(const char* where, Index a, Index b) {
  std::ostringstream os;
  os << where << ": dimension mismatch (" << a << " vs " << b << ")";
  return os.str();
}

ComplexMatrix spectral_product(const ComplexMatrix& u, const RealVector& values) {
  return u * values.cast<Complex>().asDiagonal() * u.adjoint();
}

}  // namespace

HermitianMatrix HermitianMatrix::symmetrize(const ComplexMatrix& m) {
  if (m.rows() != m.cols()) {
    throw DimMismatch(dim_message("symmetrize: matrix not square", m.rows(), m.cols()));
  }
  if (m.rows() < 1) {
    throw DimMismatch("symmetrize: empty matrix");
  }
  const double skew = (m - m.adjoint()).norm();
  const double limit = kHermitianTolerance * (1.0 + m.norm());
  if (!(skew <= limit)) {
    std::ostringstream os;
    os << "matrix is not self-adjoint: ||M - M*||_F = " << skew << " exceeds " << limit;
    throw NotHermitian(os.str());
  }
  return hermitian_part(m);
}

HermitianMatrix HermitianMatrix::hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  // Averaging already makes h(i,j) == conj(h(j,i)); pin the diagonal to reals.
  for (Index i = 0; i < h.rows(); ++i) h(i, i) = Complex(h(i, i).real(), 0.0);
  return HermitianMatrix(std::move(h));
}

HermitianMatrix HermitianMatrix::identity(Index dim) {
  return HermitianMatrix(ComplexMatrix::Identity(dim, dim));
}

HermitianMatrix HermitianMatrix::zero(Index dim) {
  return HermitianMatrix(ComplexMatrix::Zero(dim, dim));
}

HermitianMatrix HermitianMatrix::diagonal(const RealVector& values) {
  return HermitianMatrix(values.cast<Complex>().asDiagonal());
}

HermitianMatrix HermitianMatrix::diagonal(std::initializer_list<double> values) {
  RealVector v(static_cast<Index>(values.size()));
  Index i = 0;
  for (double x : values) v(i++) = x;
  return diagonal(v);
}

double HermitianMatrix::trace() const { return m_.diagonal().real().sum(); }

HermitianMatrix HermitianMatrix::conjugated_by(const ComplexMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim()) {
    throw DimMismatch(dim_message("conjugated_by", u.rows(), dim()));
  }
  return hermitian_part(u * m_ * u.adjoint());
}

void require_same_dim(const HermitianMatrix& a, const HermitianMatrix& b, const char* where) {
  if (a.dim() != b.dim()) throw DimMismatch(dim_message(where, a.dim(), b.dim()));
}

// Entrywise arithmetic keeps exact self-adjointness, since conj distributes
// over IEEE addition and real scaling.
HermitianMatrix operator+(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "operator+");
  return HermitianMatrix::hermitian_part(a.matrix() + b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "operator-");
  return HermitianMatrix::hermitian_part(a.matrix() - b.matrix());
}

HermitianMatrix operator-(const HermitianMatrix& a) {
  return HermitianMatrix::hermitian_part(-a.matrix());
}

HermitianMatrix operator*(double s, const HermitianMatrix& a) {
  return HermitianMatrix::hermitian_part(s * a.matrix());
}

HermitianMatrix operator*(const HermitianMatrix& a, double s) { return s * a; }

HermitianMatrix mix(double t, const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "mix");
  return HermitianMatrix::hermitian_part(t * a.matrix() + (1.0 - t) * b.matrix());
}

HermitianMatrix SpectralDecomposition::reconstruct() const {
  return HermitianMatrix::hermitian_part(spectral_product(vectors, eigenvalues));
}

SpectralDecomposition eig(const HermitianMatrix& m) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m.matrix(), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Hermitian eigen-solver failed on a " << m.dim() << "x" << m.dim()
       << " matrix (Eigen info code " << static_cast<int>(solver.info()) << ")";
    throw ConvergenceFailure(os.str());
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

PdMatrix::PdMatrix(HermitianMatrix base, SpectralDecomposition spectrum)
    : base_(std::move(base)), spectrum_(std::move(spectrum)), min_eigenvalue_(spectrum_.eigenvalues.minCoeff()) {
  if (!(min_eigenvalue_ > kPdFloor)) {
    std::ostringstream os;
    os << "matrix is not positive definite: smallest eigenvalue " << min_eigenvalue_
       << " <= " << kPdFloor;
    throw DomainError(os.str());
  }
}

PdMatrix::PdMatrix(const HermitianMatrix& m) : PdMatrix(m, eig(m)) {}

PdMatrix PdMatrix::from_spectrum(SpectralDecomposition spectrum) {
  HermitianMatrix base = spectrum.reconstruct();
  return PdMatrix(std::move(base), std::move(spectrum));
}

PdMatrix PdMatrix::identity(Index dim) {
  return from_spectrum({RealVector::Ones(dim), ComplexMatrix::Identity(dim, dim)});
}

HermitianMatrix matrix_fn(const SpectralDecomposition& spectrum, const ScalarFunction& f) {
  RealVector values(spectrum.dim());
  for (Index i = 0; i < spectrum.dim(); ++i) {
    const double lambda = spectrum.eigenvalues(i);
    const double v = f(lambda);
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "matrix function undefined at eigenvalue " << lambda;
      throw DomainError(os.str());
    }
    values(i) = v;
  }
  return HermitianMatrix::hermitian_part(spectral_product(spectrum.vectors, values));
}

HermitianMatrix matrix_fn(const HermitianMatrix& m, const ScalarFunction& f) {
  return matrix_fn(eig(m), f);
}

PdMatrix mat_exp(const HermitianMatrix& m) {
  SpectralDecomposition s = eig(m);
  const double top = s.eigenvalues.maxCoeff();
  if (top > kExpOverflowGuard) {
    std::ostringstream os;
    os << "mat_exp: eigenvalue " << top << " exceeds overflow guard " << kExpOverflowGuard;
    throw Overflow(os.str());
  }
  s.eigenvalues = s.eigenvalues.array().exp().matrix();
  return PdMatrix::from_spectrum(std::move(s));
}

HermitianMatrix mat_log(const PdMatrix& a) {
  if (!(a.min_eigenvalue() > kPdFloor)) {
    throw DomainError("mat_log: argument has an eigenvalue at or below the positive-definite floor");
  }
  return matrix_fn(a.spectrum(), [](double x) { return std::log(x); });
}

double trace_product(const HermitianMatrix& a, const HermitianMatrix& b) {
  require_same_dim(a, b, "trace_product");
  const Complex t = a.matrix().cwiseProduct(b.matrix().transpose()).sum();
  const double limit = 1e-10 * (1.0 + a.frobenius_norm() * b.frobenius_norm());
  if (std::abs(t.imag()) > limit) {
    std::ostringstream os;
    os << "trace_product: imaginary residue " << t.imag() << " exceeds " << limit;
    throw DomainError(os.str());
  }
  return t.real();
}

}  // namespace liebcheck
