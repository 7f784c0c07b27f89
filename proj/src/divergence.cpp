#include "liebcheck/divergence.hpp"

#include <cmath>

namespace liebcheck {

double entropy(const PdMatrix& x) {
  double sum = 0.0;
  for (double lambda : x.spectrum().eigenvalues) sum += lambda * std::log(lambda);
  return sum;
}

HermitianMatrix entropy_gradient(const PdMatrix& y) {
  return mat_log(y) + HermitianMatrix::identity(y.dim());
}

DivergenceBreakdown relative_entropy(const PdMatrix& x, const PdMatrix& y) {
  require_same_dim(x, y, "relative_entropy");
  DivergenceBreakdown d{};
  d.entropy_x = entropy(x);
  d.cross_term = trace_product(x, mat_log(y));
  d.trace_gap = x.trace() - y.trace();
  d.value = d.entropy_x - d.cross_term - d.trace_gap;
  return d;
}

double bregman_residual(const PdMatrix& x, const PdMatrix& y) {
  require_same_dim(x, y, "bregman_residual");
  const double divergence = relative_entropy(x, y).value;
  const double affine_gap =
      entropy(x) - entropy(y) - trace_product(entropy_gradient(y), x.base() - y.base());
  return std::abs(divergence - affine_gap);
}

KleinRecord klein_check(const PdMatrix& x, const PdMatrix& y, double tol) {
  KleinRecord r{};
  r.value = relative_entropy(x, y).value;
  r.coincident = (x.base() - y.base()).frobenius_norm() <= 1e-10 * (1.0 + x.frobenius_norm());
  r.pass = r.value >= -tol && (!r.coincident || r.value <= tol);
  return r;
}

}  // namespace liebcheck
