#include "liebcheck/convexity.hpp"

#include <algorithm>
#include <cmath>

namespace liebcheck {

Orientation flipped(Orientation o) noexcept {
  return o == Orientation::convex ? Orientation::concave : Orientation::convex;
}

const char* to_string(Orientation o) noexcept {
  return o == Orientation::convex ? "convex" : "concave";
}

SegmentEvaluationError::SegmentEvaluationError(double t, const std::string& what)
    : Error("segment evaluation failed at t = " + std::to_string(t) + ": " + what), t_(t) {}

namespace {

MatrixTuple mix_tuple(double t, const MatrixTuple& p1, const MatrixTuple& p2) {
  MatrixTuple out;
  out.reserve(p1.size());
  for (std::size_t i = 0; i < p1.size(); ++i) out.push_back(mix(t, p1[i], p2[i]));
  return out;
}

double evaluate_at(const TupleFunction& f, const MatrixTuple& p, double t) {
  try {
    return f(p);
  } catch (const Error& e) {
    throw SegmentEvaluationError(t, e.what());
  }
}

}  // namespace

std::vector<SegmentTrial> segment_test(const TupleFunction& f, const MatrixTuple& p1,
                                       const MatrixTuple& p2, const std::vector<double>& t_samples,
                                       Orientation orientation) {
  if (p1.size() != p2.size() || p1.empty()) {
    throw DimMismatch("segment_test: endpoints must be tuples of equal, nonzero length");
  }
  for (std::size_t i = 0; i < p1.size(); ++i) require_same_dim(p1[i], p2[i], "segment_test");

  const double f1 = evaluate_at(f, p1, 1.0);
  const double f2 = evaluate_at(f, p2, 0.0);
  const double scale = 1.0 + std::abs(f1) + std::abs(f2);
  const double sign = static_cast<int>(orientation);

  std::vector<SegmentTrial> out;
  out.reserve(t_samples.size());
  for (double t : t_samples) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("segment_test: t outside [0, 1]");
    SegmentTrial trial;
    trial.t = t;
    trial.lhs = evaluate_at(f, mix_tuple(t, p1, p2), t);
    trial.rhs = t * f1 + (1.0 - t) * f2;
    trial.scale = scale;
    trial.violation = (trial.lhs - trial.rhs) * sign / scale;
    out.push_back(std::move(trial));
  }
  return out;
}

std::vector<double> default_t_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 9; ++i) grid.push_back(i / 10.0);
  return grid;
}

void SuiteReport::finalize() {
  max_violation = 0.0;
  if (!trials.empty()) {
    max_violation = std::max_element(trials.begin(), trials.end(), [](const auto& a, const auto& b) {
                      return a.violation < b.violation;
                    })->violation;
  }
  const bool any_nan = std::any_of(trials.begin(), trials.end(),
                                   [](const SegmentTrial& t) { return std::isnan(t.violation); });
  pass = !any_nan && max_violation <= config.tol &&
         std::all_of(checks.begin(), checks.end(), [](const SideCheck& c) { return c.pass; });
}

}  // namespace liebcheck
