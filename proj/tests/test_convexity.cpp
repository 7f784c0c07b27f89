#include <doctest.h>

#include <cmath>

#include "liebcheck/convexity.hpp"
#include "liebcheck/divergence.hpp"
#include "liebcheck/random.hpp"
#include "oracles.hpp"

using namespace liebcheck;

namespace {

HermitianMatrix scalar_h(double x) { return HermitianMatrix::diagonal({x}); }

double max_violation(const std::vector<SegmentTrial>& trials) {
  double worst = -1e300;
  for (const auto& t : trials) worst = std::max(worst, t.violation);
  return worst;
}

const SideCheck* find_check(const SuiteReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

const TupleFunction relent = [](const MatrixTuple& p) { return relative_entropy(PdMatrix(p[0]), PdMatrix(p[1])).value; };

}  // namespace

TEST_CASE("orientation helpers") {
  CHECK(flipped(Orientation::convex) == Orientation::concave);
  CHECK(flipped(Orientation::concave) == Orientation::convex);
  CHECK(std::string(to_string(Orientation::convex)) == "convex");
  CHECK(default_t_grid().size() == 9);
  CHECK(default_t_grid().front() == doctest::Approx(0.1));
  CHECK(default_t_grid().back() == doctest::Approx(0.9));
}

TEST_CASE("segment_test on an affine function is tight") {
  const TupleFunction trace = [](const MatrixTuple& p) { return p[0].trace() - 2.0 * p[1].trace(); };
  const MatrixTuple p1{random_hermitian(4, 1, 2.0), random_hermitian(4, 2, 2.0)};
  const MatrixTuple p2{random_hermitian(4, 3, 2.0), random_hermitian(4, 4, 2.0)};
  for (Orientation o : {Orientation::convex, Orientation::concave}) {
    for (const auto& t : segment_test(trace, p1, p2, default_t_grid(), o)) CHECK(std::abs(t.violation) <= 1e-12);
  }
}

TEST_CASE("segment_test on x^2 at the midpoint") {
  const TupleFunction sq = [](const MatrixTuple& p) { return std::pow(p[0](0, 0).real(), 2); };
  const auto trials = segment_test(sq, {scalar_h(0.0)}, {scalar_h(2.0)}, {0.5}, Orientation::convex);
  REQUIRE(trials.size() == 1);
  CHECK(trials[0].lhs == 1.0);
  CHECK(trials[0].rhs == 2.0);
  CHECK(trials[0].scale == 5.0);
  CHECK(trials[0].violation == doctest::Approx(-0.2));
  CHECK(*trials[0].t == 0.5);

  const auto flipped_trials = segment_test(sq, {scalar_h(0.0)}, {scalar_h(2.0)}, {0.5}, Orientation::concave);
  CHECK(flipped_trials[0].violation == doctest::Approx(0.2));
}

TEST_CASE("degenerate segments give zero violation") {
  const PdMatrix x = instances::conditioned_pd(3, 1);
  const PdMatrix y = instances::conditioned_pd(3, 2);
  const MatrixTuple p{x.base(), y.base()};
  for (const auto& t : segment_test(relent, p, p, default_t_grid(), Orientation::convex)) {
    CHECK(std::abs(t.violation) <= 1e-12);
  }
}

TEST_CASE("joint convexity on a scalar quadruple") {
  const MatrixTuple p1{scalar_h(2.0), scalar_h(1.0)};
  const MatrixTuple p2{scalar_h(1.0), scalar_h(2.0)};
  const auto trials = segment_test(relent, p1, p2, {0.5}, Orientation::convex);
  const double rhs = 0.5 * (oracle::scalar_relative_entropy(2.0, 1.0) + oracle::scalar_relative_entropy(1.0, 2.0));
  const double scale = 1.0 + oracle::scalar_relative_entropy(2.0, 1.0) + oracle::scalar_relative_entropy(1.0, 2.0);
  CHECK(std::abs(trials[0].lhs) <= 1e-15);
  CHECK(trials[0].rhs == doctest::Approx(rhs).epsilon(1e-14));
  // (D(2;1) + D(1;2)) / 2, frozen.
  CHECK(trials[0].rhs == doctest::Approx(0.34657359027997264).epsilon(1e-14));
  CHECK(trials[0].violation == doctest::Approx(-rhs / scale).epsilon(1e-12));
}

TEST_CASE("commuting diagonal segments match scalar arithmetic") {
  // tr exp(H + log A) on diagonals is sum a_i e^{h_i}; concave in A means
  // linear here, so the violation is rounding noise.
  const HermitianMatrix h = HermitianMatrix::diagonal({0.3, -1.0, 2.0});
  const TupleFunction f = [&](const MatrixTuple& p) { return trace_exp_log(h, PdMatrix(p[0])); };
  const auto trials = segment_test(f, {HermitianMatrix::diagonal({1.0, 2.0, 0.5})},
                                   {HermitianMatrix::diagonal({4.0, 0.1, 3.0})}, default_t_grid(),
                                   Orientation::concave);
  for (const auto& t : trials) CHECK(std::abs(t.violation) <= 1e-13);
}

TEST_CASE("segment_test argument errors") {
  CHECK_THROWS_AS(segment_test(relent, {scalar_h(1.0)}, {scalar_h(1.0), scalar_h(1.0)}, {0.5}, Orientation::convex),
                  DimMismatch);
  CHECK_THROWS_AS(segment_test(relent, {HermitianMatrix::identity(2), HermitianMatrix::identity(2)},
                               {HermitianMatrix::identity(3), HermitianMatrix::identity(3)}, {0.5},
                               Orientation::convex),
                  DimMismatch);
  CHECK_THROWS_AS(segment_test(relent, {scalar_h(1.0), scalar_h(1.0)}, {scalar_h(2.0), scalar_h(1.0)}, {1.5},
                               Orientation::convex),
                  std::invalid_argument);
}

TEST_CASE("segment evaluation failures carry t") {
  // D is undefined at X = 0, which the segment from (1, 1) to (-1, 1) crosses.
  const MatrixTuple p1{scalar_h(1.0), scalar_h(1.0)};
  const MatrixTuple p2{scalar_h(-1.0), scalar_h(1.0)};
  try {
    segment_test(relent, p1, p2, {0.75}, Orientation::convex);
    FAIL("expected an error");
  } catch (const SegmentEvaluationError& e) {
    CHECK(e.t() == 0.0);
  }
  const TupleFunction fails_inside = [](const MatrixTuple& p) {
    const double v = p[0](0, 0).real();
    if (v > 0.4 && v < 0.6) throw DomainError("inside");
    return v;
  };
  try {
    segment_test(fails_inside, {scalar_h(1.0)}, {scalar_h(0.0)}, {0.2, 0.5}, Orientation::convex);
    FAIL("expected an error");
  } catch (const SegmentEvaluationError& e) {
    CHECK(e.t() == 0.5);
  }
}

TEST_CASE("finalize") {
  SuiteReport r;
  r.config.tol = 1e-9;
  r.trials.resize(2);
  r.trials[0].violation = -1.0;
  r.trials[1].violation = 5e-10;
  r.finalize();
  CHECK(r.pass);
  CHECK(r.max_violation == 5e-10);

  r.trials[1].violation = 2e-9;
  r.finalize();
  CHECK_FALSE(r.pass);

  r.trials[1].violation = std::nan("");
  r.finalize();
  CHECK_FALSE(r.pass);

  r.trials[1].violation = 0.0;
  r.checks.push_back({"side", false, 2.0, "broken"});
  r.finalize();
  CHECK_FALSE(r.pass);
}

TEST_CASE("suites pass on small instances and are deterministic") {
  const SuiteConfig cfg{3, 20, 7, 1e-9};
  const SuiteReport a = joint_convexity_suite(cfg);
  const SuiteReport b = joint_convexity_suite(cfg);
  CHECK(a.pass);
  REQUIRE(a.trials.size() == b.trials.size());
  CHECK(a.trials.size() == 20 * 10);
  for (std::size_t i = 0; i < a.trials.size(); ++i) CHECK(a.trials[i].violation == b.trials[i].violation);

  CHECK(klein_suite(cfg).pass);
  CHECK(lieb_concavity_suite(cfg).pass);
  CHECK(fenchel_convexity_suite(cfg).pass);
  CHECK(variational_suite(cfg).pass);
  CHECK(lieb_variational_suite(cfg).pass);
  SuiteConfig pm = cfg;
  pm.trials = 5;
  pm.tol = 1e-8;
  CHECK(partial_max_concavity_suite(pm).pass);
}

TEST_CASE("klein suite side checks") {
  const SuiteReport r = klein_suite({4, 50, 3, 1e-9});
  for (const char* name : {"identity", "bregman", "strictness"}) {
    const SideCheck* c = find_check(r, name);
    REQUIRE(c != nullptr);
    CHECK(c->pass);
  }
  for (const auto& t : r.trials) CHECK_FALSE(t.t.has_value());
}

TEST_CASE("flipped orientation exposes a harness that checks the wrong way") {
  const SuiteConfig cfg{4, 10, 42, 1e-9};
  const SuiteReport joint = joint_convexity_suite(cfg, Orientation::concave);
  CHECK_FALSE(joint.pass);
  CHECK(joint.max_violation > cfg.tol);
  bool has_counterexample = false;
  for (const auto& t : joint.trials) {
    if (t.violation > cfg.tol) {
      CHECK(t.counterexample.size() == 4);
      has_counterexample = true;
    } else {
      CHECK(t.counterexample.empty());
    }
  }
  CHECK(has_counterexample);
  CHECK_FALSE(lieb_concavity_suite(cfg, Orientation::convex).pass);
  CHECK_FALSE(fenchel_convexity_suite(cfg, Orientation::concave).pass);
}

TEST_CASE("partial max with H = 0 is linear in A") {
  // max_X [-D(X;A) + tr A] = tr A, so every segment is tight.
  const TupleFunction f = [](const MatrixTuple& p) {
    const OptimizeResult r = maximize_lieb(HermitianMatrix::zero(3), PdMatrix(p[0]), PdMatrix::identity(3));
    return r.value;
  };
  const auto trials = segment_test(f, {instances::conditioned_pd(3, 1).base()},
                                   {instances::conditioned_pd(3, 2).base()}, {0.3, 0.5}, Orientation::concave);
  for (const auto& t : trials) CHECK(std::abs(t.violation) <= 1e-8);
}

TEST_CASE("suite configuration errors") {
  CHECK_THROWS_AS(partial_max_concavity_suite({17, 1, 1, 1e-8}), std::invalid_argument);
  CHECK_THROWS_AS(klein_suite({0, 1, 1, 1e-9}), std::invalid_argument);
  CHECK_THROWS_AS(klein_suite({2, 0, 1, 1e-9}), std::invalid_argument);
  CHECK_THROWS_AS(klein_suite({2, 1, 1, 0.0}), std::invalid_argument);
}

TEST_CASE("instance generators stay in range") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const PdMatrix a = instances::conditioned_pd(5, s);
    CHECK(a.min_eigenvalue() >= 1e-2 * (1.0 - 1e-12));
    CHECK(a.spectrum().eigenvalues.maxCoeff() <= 1e2 * (1.0 + 1e-12));
    const HermitianMatrix h = instances::conditioned_hermitian(5, s);
    const double radius = eig(h).eigenvalues.cwiseAbs().maxCoeff();
    CHECK(radius >= 0.5 - 1e-12);
    CHECK(radius <= 3.0 + 1e-12);
  }
}
