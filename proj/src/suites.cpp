#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "liebcheck/convexity.hpp"
#include "liebcheck/divergence.hpp"
#include "liebcheck/random.hpp"

namespace liebcheck {

namespace instances {

PdMatrix conditioned_pd(Index dim, std::uint64_t seed) {
  constexpr double kLow = 1e-2;
  constexpr double kHigh = 1e2;
  Rng rng(derive_seed(seed, 0));
  const PdMatrix base = random_pd(dim, derive_seed(seed, 1), 0.1);
  double factor = std::exp(rng.uniform(std::log(0.1), std::log(10.0)));
  const double top = base.spectrum().eigenvalues.maxCoeff();
  factor = std::min(factor, kHigh / top);
  // base's eigenvalues are >= 0.1, so factor >= 0.1 keeps the bottom >= 1e-2.
  factor = std::max(factor, kLow / base.min_eigenvalue());
  SpectralDecomposition s = base.spectrum();
  s.eigenvalues *= factor;
  return PdMatrix::from_spectrum(std::move(s));
}

HermitianMatrix conditioned_hermitian(Index dim, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  const double radius = rng.uniform(0.5, 3.0);
  return random_hermitian(dim, derive_seed(seed, 1), radius);
}

}  // namespace instances

namespace {

using instances::conditioned_hermitian;
using instances::conditioned_pd;

constexpr Index kMaxDim = 64;
constexpr Index kMaxPartialMaxDim = 16;

// Fixed thresholds, independent of the suite tolerance.
constexpr double kBregmanTol = 1e-9;
constexpr double kStrictnessSeparation = 0.1;
constexpr double kStrictnessFloor = 1e-8;
constexpr double kOptimizerValueRelTol = 1e-6;
constexpr double kArgmaxTol = 1e-4;
constexpr double kMonotoneSlack = 1e-12;
constexpr double kMaxInvalidFractionPartialMax = 0.05;
constexpr double kMaxInvalidFractionOptimizer = 0.01;

void validate(const SuiteConfig& cfg, Index max_dim = kMaxDim) {
  if (cfg.dim < 1 || cfg.dim > max_dim) {
    std::ostringstream os;
    os << "suite dim must lie in [1, " << max_dim << "], got " << cfg.dim;
    throw std::invalid_argument(os.str());
  }
  if (cfg.trials < 1) throw std::invalid_argument("suite trials must be >= 1");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("suite tol must be > 0");
}

// Tracks the largest discrepancy / allowance ratio.
class RatioCheck {
 public:
  RatioCheck(std::string name, std::string detail) : name_(std::move(name)), detail_(std::move(detail)) {}

  void observe(double discrepancy, double allowance) {
    const double r = discrepancy / allowance;
    if (std::isnan(r)) {
      nan_ = true;
      return;
    }
    worst_ = std::max(worst_, r);
  }

  SideCheck result() const { return {name_, !nan_ && worst_ <= 1.0, worst_, detail_}; }

 private:
  std::string name_;
  std::string detail_;
  double worst_ = 0.0;
  bool nan_ = false;
};

SideCheck invalid_fraction_check(int invalid, int trials, double max_fraction) {
  std::ostringstream os;
  os << invalid << " of " << trials << " trials invalid (allowed fraction " << max_fraction << ")";
  return {"convergence", invalid <= max_fraction * trials, static_cast<double>(invalid), os.str()};
}

std::vector<double> t_samples(Rng& rng) {
  std::vector<double> ts = default_t_grid();
  ts.push_back(rng.uniform());
  return ts;
}

SuiteReport start(std::string name, const SuiteConfig& cfg) {
  SuiteReport r;
  r.suite_name = std::move(name);
  r.config = cfg;
  return r;
}

// Appends one trial's segment records, attaching the instance to the ones
// that violate the tolerance.
void append_segment(SuiteReport& report, std::size_t k, std::vector<SegmentTrial> records,
                    const Counterexample& instance) {
  for (auto& rec : records) {
    rec.trial = k;
    if (!(rec.violation <= report.config.tol)) rec.counterexample = instance;
    report.trials.push_back(std::move(rec));
  }
}

void observe_history(RatioCheck& check, const std::vector<double>& history) {
  for (std::size_t i = 1; i < history.size(); ++i) {
    const double drop = history[i - 1] - history[i];
    check.observe(std::max(drop, 0.0), kMonotoneSlack * (1.0 + std::abs(history[i - 1])));
  }
}

SideCheck orientation_sanity(const SuiteReport& report) {
  double flipped_max = -std::numeric_limits<double>::infinity();
  for (const auto& t : report.trials) flipped_max = std::max(flipped_max, -t.violation);
  std::ostringstream os;
  os << "max violation with the opposite orientation: " << flipped_max;
  return {"orientation-sanity", flipped_max > report.config.tol, flipped_max, os.str()};
}

}  // namespace

SuiteReport klein_suite(const SuiteConfig& cfg) {
  validate(cfg);
  SuiteReport report = start("klein", cfg);
  RatioCheck identity("identity", "D(X;X) <= tol (1 + ||X||_F)");
  RatioCheck bregman("bregman", "|D - (phi(X) - phi(Y) - <grad phi(Y), X - Y>)| <= 1e-9 (1 + |D|)");
  int weak_pairs = 0;
  int separated_pairs = 0;

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    const PdMatrix x = conditioned_pd(cfg.dim, derive_seed(seed, 0));
    PdMatrix y = conditioned_pd(cfg.dim, derive_seed(seed, 1));
    if (k % 2 == 1) {
      // Odd trials pull Y toward X, weight log-uniform in [1e-6, 1], so the
      // near-zero regime of D is exercised too.
      Rng rng(derive_seed(seed, 2));
      const double w = std::exp(rng.uniform(std::log(1e-6), 0.0));
      y = PdMatrix(mix(w, y.base(), x.base()));
    }
    const double scale = 1.0 + x.frobenius_norm() + y.frobenius_norm();

    const KleinRecord rec = klein_check(x, y, cfg.tol * scale);
    SegmentTrial trial;
    trial.trial = static_cast<std::size_t>(k);
    trial.lhs = rec.value;
    trial.rhs = 0.0;
    trial.scale = scale;
    trial.violation = -rec.value / scale;
    if (!rec.pass) trial.counterexample = {{"X", x.base()}, {"Y", y.base()}};
    report.trials.push_back(std::move(trial));

    const double self_allowance = cfg.tol * (1.0 + x.frobenius_norm());
    identity.observe(klein_check(x, x, self_allowance).value, self_allowance);

    bregman.observe(bregman_residual(x, y), kBregmanTol * (1.0 + std::abs(rec.value)));

    if ((x.base() - y.base()).frobenius_norm() >= kStrictnessSeparation) {
      ++separated_pairs;
      if (!(rec.value >= kStrictnessFloor)) ++weak_pairs;
    }
  }

  report.checks.push_back(identity.result());
  report.checks.push_back(bregman.result());
  std::ostringstream os;
  os << weak_pairs << " of " << separated_pairs << " pairs with ||X - Y||_F >= 0.1 have D < 1e-8";
  report.checks.push_back({"strictness", weak_pairs == 0, static_cast<double>(weak_pairs), os.str()});
  report.finalize();
  return report;
}

SuiteReport joint_convexity_suite(const SuiteConfig& cfg, Orientation orientation) {
  validate(cfg);
  SuiteReport report = start("joint-convexity", cfg);
  // Klein inside the suite: every evaluated D must be >= -tol * scale.
  RatioCheck klein("klein-consistency", "every evaluated D >= -tol * scale");

  const TupleFunction divergence = [](const MatrixTuple& p) {
    return relative_entropy(PdMatrix(p[0]), PdMatrix(p[1])).value;
  };

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    Rng rng(derive_seed(seed, 0));
    const MatrixTuple p1{conditioned_pd(cfg.dim, derive_seed(seed, 1)).base(),
                         conditioned_pd(cfg.dim, derive_seed(seed, 2)).base()};
    const MatrixTuple p2{conditioned_pd(cfg.dim, derive_seed(seed, 3)).base(),
                         conditioned_pd(cfg.dim, derive_seed(seed, 4)).base()};
    try {
      auto records = segment_test(divergence, p1, p2, t_samples(rng), orientation);
      const double allowance = cfg.tol * records.front().scale;
      klein.observe(-divergence(p1), allowance);
      klein.observe(-divergence(p2), allowance);
      for (const auto& r : records) klein.observe(-r.lhs, allowance);
      append_segment(report, k, std::move(records),
                     {{"X1", p1[0]}, {"Y1", p1[1]}, {"X2", p2[0]}, {"Y2", p2[1]}});
    } catch (const SegmentEvaluationError&) {
      // A mixture of PD matrices left the cone: only possible through a bug.
      ++report.invalid_trials;
    }
  }

  report.checks.push_back(klein.result());
  report.checks.push_back({"domain-closure", report.invalid_trials == 0,
                           static_cast<double>(report.invalid_trials),
                           "every mixture point passes positive-definite validation"});
  report.finalize();
  return report;
}

SuiteReport lieb_concavity_suite(const SuiteConfig& cfg, Orientation orientation) {
  validate(cfg);
  SuiteReport report = start("lieb-concavity", cfg);

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    Rng rng(derive_seed(seed, 0));
    const HermitianMatrix h = conditioned_hermitian(cfg.dim, derive_seed(seed, 1));
    const MatrixTuple p1{conditioned_pd(cfg.dim, derive_seed(seed, 2)).base()};
    const MatrixTuple p2{conditioned_pd(cfg.dim, derive_seed(seed, 3)).base()};
    const TupleFunction f = [&h](const MatrixTuple& p) { return trace_exp_log(h, PdMatrix(p[0])); };
    try {
      append_segment(report, k, segment_test(f, p1, p2, t_samples(rng), orientation),
                     {{"H", h}, {"A1", p1[0]}, {"A2", p2[0]}});
    } catch (const SegmentEvaluationError&) {
      ++report.invalid_trials;
    }
  }

  report.checks.push_back({"domain-closure", report.invalid_trials == 0,
                           static_cast<double>(report.invalid_trials),
                           "every mixture point is positive definite and exp stays in range"});
  // A scalar A makes the map affine, so there is nothing strict to detect.
  if (orientation == Orientation::concave && cfg.dim >= 2) {
    report.checks.push_back(orientation_sanity(report));
  }
  report.finalize();
  return report;
}

SuiteReport partial_max_concavity_suite(const SuiteConfig& cfg, Orientation orientation,
                                        const OptimizeConfig& opt) {
  validate(cfg, kMaxPartialMaxDim);
  SuiteReport report = start("partial-max", cfg);
  RatioCheck agreement("agreement", "|max_X bracket - tr exp(H + log A)| <= 1e-6 tr exp(H + log A)");
  const PdMatrix init = PdMatrix::identity(cfg.dim);

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    Rng rng(derive_seed(seed, 0));
    const HermitianMatrix h = conditioned_hermitian(cfg.dim, derive_seed(seed, 1));
    const MatrixTuple p1{conditioned_pd(cfg.dim, derive_seed(seed, 2)).base()};
    const MatrixTuple p2{conditioned_pd(cfg.dim, derive_seed(seed, 3)).base()};

    const TupleFunction g = [&](const MatrixTuple& p) {
      const PdMatrix a(p[0]);
      const OptimizeResult r = maximize_lieb(h, a, init, opt);
      if (!r.converged) {
        std::ostringstream os;
        os << "maximize_lieb stopped after " << r.iters << " iterations with ||G||_F = "
           << r.grad_norm_final;
        throw NotConverged(os.str());
      }
      const double direct = trace_exp_log(h, a);
      agreement.observe(std::abs(r.value - direct), kOptimizerValueRelTol * std::abs(direct));
      return r.value;
    };
    try {
      append_segment(report, k, segment_test(g, p1, p2, t_samples(rng), orientation),
                     {{"H", h}, {"A1", p1[0]}, {"A2", p2[0]}});
    } catch (const SegmentEvaluationError&) {
      ++report.invalid_trials;
    }
  }

  report.checks.push_back(agreement.result());
  report.checks.push_back(
      invalid_fraction_check(report.invalid_trials, cfg.trials, kMaxInvalidFractionPartialMax));
  report.finalize();
  return report;
}

SuiteReport fenchel_convexity_suite(const SuiteConfig& cfg, Orientation orientation) {
  validate(cfg);
  SuiteReport report = start("fenchel", cfg);

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    Rng rng(derive_seed(seed, 0));
    const PdMatrix a = conditioned_pd(cfg.dim, derive_seed(seed, 1));
    const MatrixTuple p1{conditioned_hermitian(cfg.dim, derive_seed(seed, 2))};
    const MatrixTuple p2{conditioned_hermitian(cfg.dim, derive_seed(seed, 3))};
    const TupleFunction f = [&a](const MatrixTuple& p) { return fenchel_value(p[0], a); };
    try {
      append_segment(report, k, segment_test(f, p1, p2, t_samples(rng), orientation),
                     {{"A", a.base()}, {"H1", p1[0]}, {"H2", p2[0]}});
    } catch (const SegmentEvaluationError&) {
      ++report.invalid_trials;
    }
  }

  report.checks.push_back({"domain-closure", report.invalid_trials == 0,
                           static_cast<double>(report.invalid_trials),
                           "every evaluation stays inside the exp overflow guard"});
  report.finalize();
  return report;
}

SuiteReport variational_suite(const SuiteConfig& cfg, const OptimizeConfig& opt) {
  validate(cfg);
  SuiteReport report = start("variational", cfg);
  RatioCheck argmax("argmax", "||X* - Y||_F <= 1e-4 (1 + ||Y||_F)");
  RatioCheck upper("upper-bound", "tr(X log Y - X log X + X) <= tr Y + 1e-10 (1 + |tr Y|)");
  RatioCheck equality("equality-at-Y", "|objective(Y, Y) - tr Y| <= 1e-10 (1 + |tr Y|)");
  RatioCheck monotone("monotone-ascent", "accepted steps never lower the objective by > 1e-12 (1 + |f|)");
  const PdMatrix init = PdMatrix::identity(cfg.dim);

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    const PdMatrix y = conditioned_pd(cfg.dim, derive_seed(seed, 0));
    const PdMatrix probe = conditioned_pd(cfg.dim, derive_seed(seed, 1));
    const double tr_y = y.trace();
    const double bound_allowance = 1e-10 * (1.0 + std::abs(tr_y));

    upper.observe(std::max(variational_objective(probe, y) - tr_y, 0.0), bound_allowance);
    equality.observe(std::abs(variational_objective(y, y) - tr_y), bound_allowance);

    const OptimizeResult r = maximize_variational(y, init, opt);
    observe_history(monotone, r.history);
    if (!r.converged) {
      ++report.invalid_trials;
      continue;
    }
    argmax.observe((r.maximizer.base() - y.base()).frobenius_norm(),
                   kArgmaxTol * (1.0 + y.frobenius_norm()));

    SegmentTrial trial;
    trial.trial = static_cast<std::size_t>(k);
    trial.lhs = r.value;
    trial.rhs = tr_y;
    trial.scale = std::abs(tr_y);
    trial.violation = std::abs(r.value - tr_y) / trial.scale;
    if (!(trial.violation <= cfg.tol)) trial.counterexample = {{"Y", y.base()}};
    report.trials.push_back(std::move(trial));
  }

  report.checks.push_back(argmax.result());
  report.checks.push_back(upper.result());
  report.checks.push_back(equality.result());
  report.checks.push_back(monotone.result());
  report.checks.push_back(
      invalid_fraction_check(report.invalid_trials, cfg.trials, kMaxInvalidFractionOptimizer));
  report.finalize();
  return report;
}

SuiteReport lieb_variational_suite(const SuiteConfig& cfg, const OptimizeConfig& opt) {
  validate(cfg);
  SuiteReport report = start("lieb-variational", cfg);
  RatioCheck argmax("argmax", "||X* - exp(H + log A)||_F <= 1e-4 (1 + ||exp(H + log A)||_F)");
  RatioCheck closed_form("closed-form-point",
                         "|bracket at exp(H + log A) - tr exp(H + log A)| <= 1e-10 (1 + value)");
  RatioCheck routes("route-agreement",
                    "divergence form and trace-formula form agree within 1e-9 (1 + |value|)");
  RatioCheck upper("upper-bound", "bracket at a random X <= tr exp(H + log A) + 1e-9 (1 + value)");
  RatioCheck monotone("monotone-ascent", "accepted steps never lower the objective by > 1e-12 (1 + |f|)");
  const PdMatrix init = PdMatrix::identity(cfg.dim);

  for (int k = 0; k < cfg.trials; ++k) {
    const std::uint64_t seed = derive_seed(cfg.seed, k);
    const HermitianMatrix h = conditioned_hermitian(cfg.dim, derive_seed(seed, 0));
    const PdMatrix a = conditioned_pd(cfg.dim, derive_seed(seed, 1));
    const PdMatrix probe = conditioned_pd(cfg.dim, derive_seed(seed, 2));
    const PdMatrix target = mat_exp(h + mat_log(a));
    const double direct = trace_exp_log(h, a);
    const double scale = 1.0 + std::abs(direct);

    closed_form.observe(std::abs(lieb_objective(target, h, a) - direct), 1e-10 * scale);
    const double bracket = lieb_objective(probe, h, a);
    upper.observe(std::max(bracket - direct, 0.0), 1e-9 * scale);
    routes.observe(std::abs(bracket - variational_objective(probe, target)),
                   1e-9 * (1.0 + std::abs(bracket)));

    const OptimizeResult r = maximize_lieb(h, a, init, opt);
    observe_history(monotone, r.history);
    if (!r.converged) {
      ++report.invalid_trials;
      continue;
    }
    argmax.observe((r.maximizer.base() - target.base()).frobenius_norm(),
                   kArgmaxTol * (1.0 + target.frobenius_norm()));

    SegmentTrial trial;
    trial.trial = static_cast<std::size_t>(k);
    trial.lhs = r.value;
    trial.rhs = direct;
    trial.scale = std::abs(direct);
    trial.violation = std::abs(r.value - direct) / trial.scale;
    if (!(trial.violation <= cfg.tol)) trial.counterexample = {{"H", h}, {"A", a.base()}};
    report.trials.push_back(std::move(trial));
  }

  report.checks.push_back(argmax.result());
  report.checks.push_back(closed_form.result());
  report.checks.push_back(routes.result());
  report.checks.push_back(upper.result());
  report.checks.push_back(monotone.result());
  report.checks.push_back(
      invalid_fraction_check(report.invalid_trials, cfg.trials, kMaxInvalidFractionOptimizer));
  report.finalize();
  return report;
}

}  // namespace liebcheck
