#pragma once

#include "liebcheck/hermitian.hpp"

namespace liebcheck {

/// D(X;Y) together with its three summands, all in nats.
struct DivergenceBreakdown {
  double value;       ///< entropy_x - cross_term - trace_gap
  double entropy_x;   ///< tr X log X
  double cross_term;  ///< tr X log Y
  double trace_gap;   ///< tr X - tr Y
};

/// Quantum entropy tr(X log X), evaluated as the sum of l log l over the
/// eigenvalues of X.
double entropy(const PdMatrix& x);

/// Gradient of the entropy under the trace inner product: log Y + I.
HermitianMatrix entropy_gradient(const PdMatrix& y);

/// Quantum relative entropy tr(X log X - X log Y - (X - Y)).
DivergenceBreakdown relative_entropy(const PdMatrix& x, const PdMatrix& y);

/// |D(X;Y) - (phi(X) - phi(Y) - <grad phi(Y), X - Y>)|. The two sides are
/// computed along independent paths.
double bregman_residual(const PdMatrix& x, const PdMatrix& y);

struct KleinRecord {
  bool pass;
  double value;        ///< D(X;Y)
  bool coincident;     ///< X and Y equal within 1e-10 (1 + ||X||_F)
};

/// Passes iff D(X;Y) >= -tol, and additionally D(X;Y) <= tol when X and Y
/// coincide.
KleinRecord klein_check(const PdMatrix& x, const PdMatrix& y, double tol);

}  // namespace liebcheck
