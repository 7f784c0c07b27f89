#include <doctest.h>

#include <cmath>
#include <numbers>

#include "liebcheck/convexity.hpp"
#include "liebcheck/divergence.hpp"
#include "liebcheck/random.hpp"
#include "oracles.hpp"

using namespace liebcheck;

namespace {

const double e = std::numbers::e;

PdMatrix scalar(double x) { return PdMatrix(HermitianMatrix::diagonal({x})); }

PdMatrix sample(Index n, std::uint64_t seed) { return instances::conditioned_pd(n, seed); }

}  // namespace

TEST_CASE("entropy of simple matrices") {
  CHECK(entropy(PdMatrix::identity(3)) == 0.0);
  CHECK(entropy(scalar(e)) == doctest::Approx(e).epsilon(1e-15));
  CHECK(entropy(PdMatrix(HermitianMatrix::diagonal({2.0, 2.0}))) == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
  // 4 log 2, frozen.
  CHECK(entropy(PdMatrix(HermitianMatrix::diagonal({2.0, 2.0}))) == doctest::Approx(2.7725887222397811).epsilon(1e-15));
}

TEST_CASE("entropy from eigenvalues matches tr(X log X)") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const PdMatrix x = sample(5, s);
    const double via_product = trace_product(x, mat_log(x));
    CHECK(std::abs(entropy(x) - via_product) <= 1e-10 * (1.0 + std::abs(via_product)));
  }
}

TEST_CASE("entropy_gradient on simple matrices") {
  CHECK((entropy_gradient(PdMatrix::identity(3)) - HermitianMatrix::identity(3)).frobenius_norm() == 0.0);
  CHECK((entropy_gradient(scalar(e)) - HermitianMatrix::diagonal({2.0})).frobenius_norm() <= 1e-15);
}

TEST_CASE("entropy_gradient matches central differences") {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const PdMatrix y = random_pd(4, derive_seed(3, s), 0.5);
    const HermitianMatrix v = random_hermitian(4, derive_seed(4, s), 1.0);
    const double fd = oracle::central_difference(
        [&](double h) { return entropy(PdMatrix(y.base() + h * v)); }, 1e-5);
    const double analytic = trace_product(entropy_gradient(y), v);
    CHECK(std::abs(fd - analytic) <= 1e-5 * std::abs(analytic));
  }
}

TEST_CASE("relative_entropy scalar cases") {
  const DivergenceBreakdown d = relative_entropy(scalar(2.0), scalar(1.0));
  CHECK(d.value == doctest::Approx(oracle::scalar_relative_entropy(2.0, 1.0)).epsilon(1e-14));
  CHECK(d.value == doctest::Approx(0.38629436111989057).epsilon(1e-14));
  CHECK(d.entropy_x == doctest::Approx(2.0 * std::log(2.0)));
  CHECK(d.cross_term == 0.0);
  CHECK(d.trace_gap == 1.0);
  CHECK(d.value == d.entropy_x - d.cross_term - d.trace_gap);

  CHECK(relative_entropy(scalar(1.0), scalar(2.0)).value ==
        doctest::Approx(oracle::scalar_relative_entropy(1.0, 2.0)).epsilon(1e-14));
}

TEST_CASE("relative_entropy of a matrix with itself vanishes") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const PdMatrix x = sample(1 + static_cast<Index>(s % 8), s);
    CHECK(std::abs(relative_entropy(x, x).value) <= 1e-10 * (1.0 + x.frobenius_norm()));
  }
}

TEST_CASE("relative_entropy commuting case reduces to a scalar sum") {
  const RealVector xs = (RealVector(4) << 0.3, 1.7, 2.2, 9.0).finished();
  const RealVector ys = (RealVector(4) << 1.1, 0.05, 2.2, 4.0).finished();
  const ComplexMatrix u = random_unitary(4, 11);
  const PdMatrix x(HermitianMatrix::diagonal(xs).conjugated_by(u));
  const PdMatrix y(HermitianMatrix::diagonal(ys).conjugated_by(u));
  double expected = 0.0;
  for (Index i = 0; i < 4; ++i) expected += oracle::scalar_relative_entropy(xs(i), ys(i));
  CHECK(std::abs(relative_entropy(x, y).value - expected) <= 1e-10 * (1.0 + expected));
}

TEST_CASE("relative_entropy is unitarily invariant and homogeneous") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const PdMatrix x = sample(5, derive_seed(s, 0));
    const PdMatrix y = sample(5, derive_seed(s, 1));
    const double d = relative_entropy(x, y).value;
    const ComplexMatrix u = random_unitary(5, derive_seed(s, 2));
    const double du = relative_entropy(PdMatrix(x.base().conjugated_by(u)), PdMatrix(y.base().conjugated_by(u))).value;
    CHECK(std::abs(du - d) <= 1e-9 * (1.0 + std::abs(d)));

    for (double t : {0.1, 2.5}) {
      const double dt = relative_entropy(PdMatrix(t * x.base()), PdMatrix(t * y.base())).value;
      CHECK(std::abs(dt - t * d) <= 1e-9 * (1.0 + std::abs(t * d)));
    }
  }
}

TEST_CASE("relative_entropy dimension mismatch") {
  CHECK_THROWS_AS(relative_entropy(PdMatrix::identity(2), PdMatrix::identity(3)), DimMismatch);
  CHECK_THROWS_AS(bregman_residual(PdMatrix::identity(2), PdMatrix::identity(3)), DimMismatch);
}

TEST_CASE("bregman residual") {
  CHECK(bregman_residual(PdMatrix::identity(3), PdMatrix::identity(3)) == 0.0);
  CHECK(bregman_residual(scalar(3.0), scalar(2.0)) <= 1e-12);
  for (std::uint64_t s = 0; s < 100; ++s) {
    const PdMatrix x = sample(4, derive_seed(s, 10));
    const PdMatrix y = sample(4, derive_seed(s, 11));
    const double d = relative_entropy(x, y).value;
    CHECK(bregman_residual(x, y) <= 1e-9 * (1.0 + std::abs(d)));
  }
}

TEST_CASE("klein_check") {
  const PdMatrix x = sample(4, 5);
  const KleinRecord same = klein_check(x, x, 1e-10);
  CHECK(same.pass);
  CHECK(same.coincident);
  CHECK(std::abs(same.value) <= 1e-10);

  const KleinRecord scalar_pair = klein_check(scalar(2.0), scalar(1.0), 1e-10);
  CHECK(scalar_pair.pass);
  CHECK_FALSE(scalar_pair.coincident);
  CHECK(scalar_pair.value == doctest::Approx(0.38629436111989057));

  int failures = 0;
  for (std::uint64_t s = 0; s < 1000; ++s) {
    const Index n = 1 + static_cast<Index>(s % 8);
    const PdMatrix a = sample(n, derive_seed(s, 20));
    const PdMatrix b = sample(n, derive_seed(s, 21));
    if (!klein_check(a, b, 1e-10 * (1.0 + a.frobenius_norm() + b.frobenius_norm())).pass) ++failures;
  }
  CHECK(failures == 0);
}

TEST_CASE("klein_check flags a coincident pair with a large value") {
  // A tolerance below the rounding noise of D(X;X) still passes the >= -tol
  // half; a negative tolerance cannot, which exercises the fail path.
  const PdMatrix x = sample(3, 9);
  CHECK_FALSE(klein_check(x, x, -1.0).pass);
}

TEST_CASE("strictness probe on separated pairs") {
  int probed = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const PdMatrix a = sample(4, derive_seed(s, 30));
    const PdMatrix b = sample(4, derive_seed(s, 31));
    if ((a.base() - b.base()).frobenius_norm() < 0.1) continue;
    ++probed;
    CHECK(relative_entropy(a, b).value >= 1e-8);
  }
  CHECK(probed >= 90);
}
