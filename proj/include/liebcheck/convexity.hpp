#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liebcheck/hermitian.hpp"
#include "liebcheck/variational.hpp"

namespace liebcheck {

/// Which inequality a segment test checks. The value is the sign applied to
/// lhs - rhs so that a positive violation always means the claim failed.
enum class Orientation : int { convex = 1, concave = -1 };

Orientation flipped(Orientation o) noexcept;
const char* to_string(Orientation o) noexcept;

/// A point of a function of several matrices, e.g. (X, Y) for D(X;Y).
using MatrixTuple = std::vector<HermitianMatrix>;
using TupleFunction = std::function<double(const MatrixTuple&)>;

/// Named matrices of an offending instance, kept so it can be replayed.
using Counterexample = std::vector<std::pair<std::string, HermitianMatrix>>;

struct SegmentTrial {
  std::size_t trial = 0;
  /// Mixture weight; empty for pointwise checks that have no segment.
  std::optional<double> t;
  double lhs = 0.0;        ///< f(t p1 + (1 - t) p2)
  double rhs = 0.0;        ///< t f(p1) + (1 - t) f(p2)
  double violation = 0.0;  ///< (lhs - rhs) * orientation / scale
  double scale = 1.0;      ///< 1 + |f(p1)| + |f(p2)|
  Counterexample counterexample;
};

/// Thrown when f fails at a mixture point; carries the offending weight.
class SegmentEvaluationError : public Error {
 public:
  SegmentEvaluationError(double t, const std::string& what);
  double t() const noexcept { return t_; }

 private:
  double t_;
};

/// Two-point Jensen test of f along the segment from p2 (t = 0) to p1 (t = 1).
std::vector<SegmentTrial> segment_test(const TupleFunction& f, const MatrixTuple& p1,
                                       const MatrixTuple& p2, const std::vector<double>& t_samples,
                                       Orientation orientation);

/// {0.1, 0.2, ..., 0.9}.
std::vector<double> default_t_grid();

struct SuiteConfig {
  Index dim = 6;
  int trials = 200;
  std::uint64_t seed = 42;
  double tol = 1e-9;
};

/// Auxiliary pass/fail condition evaluated by a suite next to its main
/// violation statistic (identity cases, convergence rates, cross-checks).
struct SideCheck {
  std::string name;
  bool pass = true;
  /// Largest normalized discrepancy seen (<= 1 means within its threshold),
  /// or a count for counting checks.
  double worst = 0.0;
  std::string detail;
};

struct SuiteReport {
  std::string suite_name;
  std::vector<SegmentTrial> trials;
  double max_violation = 0.0;
  bool pass = false;
  SuiteConfig config;
  /// Trials excluded from the statistic (optimizer did not converge or the
  /// evaluation raised).
  int invalid_trials = 0;
  std::vector<SideCheck> checks;

  /// Recomputes max_violation and pass from trials and checks:
  /// pass iff max_violation <= tol and every side check passes.
  void finalize();
};

// Suites. Each is a pure function of its SuiteConfig; trial k draws from
// derive_seed(seed, k) only.

/// Nonnegativity of D(X;Y) on random pairs, with D(X;X) ~ 0, a strictness
/// probe for well-separated pairs and the Bregman identity as side checks.
SuiteReport klein_suite(const SuiteConfig& cfg);

/// Joint convexity of (X, Y) -> D(X;Y).
SuiteReport joint_convexity_suite(const SuiteConfig& cfg,
                                  Orientation orientation = Orientation::convex);

/// Concavity of A -> tr exp(H + log A) for a random H per trial.
SuiteReport lieb_concavity_suite(const SuiteConfig& cfg,
                                 Orientation orientation = Orientation::concave);

/// Concavity of A -> max_X [tr(XH) - D(X;A) + tr A] evaluated by the
/// optimizer, plus agreement of each maximum with tr exp(H + log A).
/// Requires dim <= 16.
SuiteReport partial_max_concavity_suite(const SuiteConfig& cfg,
                                        Orientation orientation = Orientation::concave,
                                        const OptimizeConfig& opt = {});

/// Convexity of H -> tr exp(H + log A) for a random A per trial.
SuiteReport fenchel_convexity_suite(const SuiteConfig& cfg,
                                    Orientation orientation = Orientation::convex);

/// Trace formula: maximize_variational(Y) recovers value tr Y and argmax Y.
/// Violation is the relative value error.
SuiteReport variational_suite(const SuiteConfig& cfg, const OptimizeConfig& opt = {});

/// maximize_lieb(H, A) against the closed form exp(H + log A).
SuiteReport lieb_variational_suite(const SuiteConfig& cfg, const OptimizeConfig& opt = {});

/// Instance generators shared by the suites.
namespace instances {

/// Random PD matrix with eigenvalues in [1e-2, 1e2]: random_pd with spread
/// 0.1, times a log-uniform factor in [0.1, 10], capped so the top
/// eigenvalue stays <= 100.
PdMatrix conditioned_pd(Index dim, std::uint64_t seed);

/// Random self-adjoint matrix with spectral radius uniform in [0.5, 3].
HermitianMatrix conditioned_hermitian(Index dim, std::uint64_t seed);

}  // namespace instances

}  // namespace liebcheck
