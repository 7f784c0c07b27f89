#include "liebcheck/random.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace liebcheck {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re * std::numbers::sqrt2 / 2.0, im * std::numbers::sqrt2 / 2.0};
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

ComplexMatrix random_ginibre(Index dim, Rng& rng) {
  ComplexMatrix g(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index j = 0; j < dim; ++j) g(i, j) = rng.complex_normal();
  return g;
}

PdMatrix random_pd(Index dim, std::uint64_t seed, double spread) {
  if (dim < 1) throw std::invalid_argument("random_pd: dim must be >= 1");
  if (!(spread > 0.0)) throw std::invalid_argument("random_pd: spread must be > 0");
  Rng rng(seed);
  const ComplexMatrix g = random_ginibre(dim, rng);
  const ComplexMatrix a =
      g * g.adjoint() / static_cast<double>(dim) + spread * ComplexMatrix::Identity(dim, dim);
  return PdMatrix(HermitianMatrix::hermitian_part(a));
}

HermitianMatrix random_hermitian(Index dim, std::uint64_t seed, double spectral_radius) {
  if (dim < 1) throw std::invalid_argument("random_hermitian: dim must be >= 1");
  Rng rng(seed);
  const HermitianMatrix h = HermitianMatrix::hermitian_part(random_ginibre(dim, rng));
  const RealVector ev = eig(h).eigenvalues;
  const double radius = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  if (radius == 0.0) return h;
  return (spectral_radius / radius) * h;
}

ComplexMatrix random_unitary(Index dim, std::uint64_t seed) {
  return eig(random_hermitian(dim, seed, 1.0)).vectors;
}

}  // namespace liebcheck
