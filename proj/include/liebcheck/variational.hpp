#pragma once

#include <vector>

#include "liebcheck/hermitian.hpp"

namespace liebcheck {

/// Settings for projected gradient ascent over the positive-definite cone.
struct OptimizeConfig {
  int max_iters = 5000;
  double step_init = 1.0;
  double backtrack_factor = 0.5;
  double armijo_c = 1e-4;
  /// Stop once ||gradient||_F <= grad_tol * (1 + reference norm). The
  /// reference is ||Y||_F for the trace formula and ||X||_F of the current
  /// iterate for the Lieb objective.
  double grad_tol = 1e-8;
  /// Eigenvalue floor applied after every step.
  double eig_floor = 1e-10;
  /// When set, the first trial step of each iteration after the first is the
  /// Barzilai-Borwein length <s,s> / -<s,dg> instead of step_init.
  bool bb_step = true;

  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;
};

struct OptimizeResult {
  PdMatrix maximizer;
  double value;
  int iters;
  double grad_norm_final;
  /// Absolute gradient threshold the run was held to.
  double grad_tol_used;
  bool converged;
  /// Objective value at the start and after every accepted step.
  std::vector<double> history;
};

/// tr exp(H + log A).
double trace_exp_log(const HermitianMatrix& h, const PdMatrix& a);

/// tr(X log Y - X log X + X); bounded above by tr Y with equality at X = Y.
double variational_objective(const PdMatrix& x, const PdMatrix& y);

/// log Y - log X, the gradient of variational_objective in X.
HermitianMatrix variational_gradient(const PdMatrix& x, const PdMatrix& y);

/// Maximizes variational_objective(., Y) starting from `init`. A run that
/// hits max_iters or stalls comes back with converged = false.
OptimizeResult maximize_variational(const PdMatrix& y, const PdMatrix& init,
                                    const OptimizeConfig& cfg = {});

/// tr(XH) - (D(X;A) - tr A), evaluated through the divergence breakdown.
double lieb_objective(const PdMatrix& x, const HermitianMatrix& h, const PdMatrix& a);

/// H + log A - log X. Vanishes at X = exp(H + log A).
HermitianMatrix lieb_gradient(const PdMatrix& x, const HermitianMatrix& h, const PdMatrix& a);

OptimizeResult maximize_lieb(const HermitianMatrix& h, const PdMatrix& a, const PdMatrix& init,
                             const OptimizeConfig& cfg = {});

/// The same number as trace_exp_log, named for its role as the convex
/// conjugate of D(.;A) - tr A evaluated at H.
double fenchel_value(const HermitianMatrix& h, const PdMatrix& a);

/// M with its eigenvalues raised to at least `floor`.
PdMatrix clip_pd(const HermitianMatrix& m, double floor);

}  // namespace liebcheck
