#include "liebcheck/variational.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "liebcheck/divergence.hpp"

namespace liebcheck {

namespace {

constexpr int kMaxBacktracks = 60;
constexpr double kMinBbStep = 1e-8;
constexpr double kMaxBbStep = 1e8;

// Objective differences smaller than this (relative to 1 + |f|) are treated
// as rounding noise; the sufficient-increase test then uses the trapezoid
// estimate 1/2 <G + G_new, step> of the increase instead.
constexpr double kNoiseFloor = 1e-12;

template <class Objective, class Gradient, class ReferenceNorm>
OptimizeResult ascend(Objective&& objective, Gradient&& gradient, ReferenceNorm&& reference_norm,
                      const PdMatrix& init, const OptimizeConfig& cfg) {
  cfg.validate();
  PdMatrix x = init;
  double fx = objective(x);
  HermitianMatrix g = gradient(x);
  std::vector<double> history{fx};

  int iters = 0;
  bool converged = false;
  double gnorm = g.frobenius_norm();
  double tol = cfg.grad_tol * (1.0 + reference_norm(x));

  double bb_eta = 0.0;  // 0 until a curvature estimate exists

  while (true) {
    if (gnorm <= tol) {
      converged = true;
      break;
    }
    if (iters >= cfg.max_iters) break;

    double eta = cfg.step_init;
    if (cfg.bb_step && bb_eta > 0.0) eta = bb_eta;
    bool accepted = false;
    for (int k = 0; k < kMaxBacktracks; ++k, eta *= cfg.backtrack_factor) {
      PdMatrix candidate = clip_pd(x.base() + eta * g, cfg.eig_floor);
      const HermitianMatrix step = candidate.base() - x.base();
      const double slope = trace_product(g, step);
      const double required = cfg.armijo_c * slope;
      const double fc = objective(candidate);
      const double delta = fc - fx;

      std::optional<HermitianMatrix> gc;
      bool ok = delta >= required;
      if (!ok && std::abs(delta) <= kNoiseFloor * (1.0 + std::abs(fx))) {
        gc = gradient(candidate);
        ok = 0.5 * (slope + trace_product(*gc, step)) >= required;
      }
      if (!ok) continue;

      HermitianMatrix g_new = gc ? std::move(*gc) : gradient(candidate);
      const double curvature = -trace_product(g_new - g, step);
      const double step_sq = step.frobenius_norm() * step.frobenius_norm();
      bb_eta = 0.0;
      if (curvature > 0.0 && step_sq > 0.0) {
        bb_eta = std::clamp(step_sq / curvature, kMinBbStep * cfg.step_init, kMaxBbStep * cfg.step_init);
      }
      g = std::move(g_new);
      x = std::move(candidate);
      fx = fc;
      accepted = true;
      break;
    }
    if (!accepted) break;

    ++iters;
    history.push_back(fx);
    gnorm = g.frobenius_norm();
    tol = cfg.grad_tol * (1.0 + reference_norm(x));
  }

  return OptimizeResult{std::move(x), fx, iters, gnorm, tol, converged, std::move(history)};
}

}  // namespace

void OptimizeConfig::validate() const {
  if (max_iters < 0) throw std::invalid_argument("OptimizeConfig: max_iters must be >= 0");
  if (!(step_init > 0.0)) throw std::invalid_argument("OptimizeConfig: step_init must be > 0");
  if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
    throw std::invalid_argument("OptimizeConfig: backtrack_factor must lie in (0, 1)");
  if (!(armijo_c > 0.0 && armijo_c < 1.0))
    throw std::invalid_argument("OptimizeConfig: armijo_c must lie in (0, 1)");
  if (!(grad_tol > 0.0)) throw std::invalid_argument("OptimizeConfig: grad_tol must be > 0");
  if (!(eig_floor > kPdFloor))
    throw std::invalid_argument("OptimizeConfig: eig_floor must exceed the positive-definite floor");
}

double trace_exp_log(const HermitianMatrix& h, const PdMatrix& a) {
  require_same_dim(h, a, "trace_exp_log");
  return mat_exp(h + mat_log(a)).trace();
}

double variational_objective(const PdMatrix& x, const PdMatrix& y) {
  require_same_dim(x, y, "variational_objective");
  return trace_product(x, mat_log(y)) - entropy(x) + x.trace();
}

HermitianMatrix variational_gradient(const PdMatrix& x, const PdMatrix& y) {
  require_same_dim(x, y, "variational_gradient");
  return mat_log(y) - mat_log(x);
}

OptimizeResult maximize_variational(const PdMatrix& y, const PdMatrix& init, const OptimizeConfig& cfg) {
  require_same_dim(y, init, "maximize_variational");
  const HermitianMatrix log_y = mat_log(y);
  const double y_norm = y.frobenius_norm();
  return ascend(
      [&](const PdMatrix& x) { return trace_product(x, log_y) - entropy(x) + x.trace(); },
      [&](const PdMatrix& x) { return log_y - mat_log(x); },
      [&](const PdMatrix&) { return y_norm; }, init, cfg);
}

double lieb_objective(const PdMatrix& x, const HermitianMatrix& h, const PdMatrix& a) {
  require_same_dim(x, h, "lieb_objective");
  require_same_dim(x, a, "lieb_objective");
  return trace_product(x, h) - relative_entropy(x, a).value + a.trace();
}

HermitianMatrix lieb_gradient(const PdMatrix& x, const HermitianMatrix& h, const PdMatrix& a) {
  require_same_dim(x, h, "lieb_gradient");
  require_same_dim(x, a, "lieb_gradient");
  return h + mat_log(a) - mat_log(x);
}

OptimizeResult maximize_lieb(const HermitianMatrix& h, const PdMatrix& a, const PdMatrix& init,
                             const OptimizeConfig& cfg) {
  require_same_dim(h, a, "maximize_lieb");
  require_same_dim(h, init, "maximize_lieb");
  const HermitianMatrix drift = h + mat_log(a);
  return ascend([&](const PdMatrix& x) { return lieb_objective(x, h, a); },
                [&](const PdMatrix& x) { return drift - mat_log(x); },
                [](const PdMatrix& x) { return x.frobenius_norm(); }, init, cfg);
}

double fenchel_value(const HermitianMatrix& h, const PdMatrix& a) { return trace_exp_log(h, a); }

PdMatrix clip_pd(const HermitianMatrix& m, double floor) {
  SpectralDecomposition s = eig(m);
  s.eigenvalues = s.eigenvalues.cwiseMax(floor);
  return PdMatrix::from_spectrum(std::move(s));
}

}  // namespace liebcheck
