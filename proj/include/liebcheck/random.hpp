#pragma once

#include <cstdint>
#include <random>

#include "liebcheck/hermitian.hpp"

namespace liebcheck {

/// Seeded generator. Built on std::mt19937_64, whose output sequence is fixed
/// by the standard, with the real and normal transforms done here so streams
/// are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal (Box-Muller, both variates used).
  double normal();
  /// Standard complex normal: E|z|^2 = 1.
  Complex complex_normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Mixes a master seed with a stream index (splitmix64 finalizer), so trial k
/// of a suite gets a generator independent of scheduling.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

/// n x n matrix of independent standard complex normals.
ComplexMatrix random_ginibre(Index dim, Rng& rng);

/// G G* / dim + spread I with G Ginibre, drawn from Rng(seed).
PdMatrix random_pd(Index dim, std::uint64_t seed, double spread);

/// (G + G*) / 2 rescaled to the given spectral radius.
HermitianMatrix random_hermitian(Index dim, std::uint64_t seed, double spectral_radius);

/// Eigenvector matrix of a random self-adjoint matrix.
ComplexMatrix random_unitary(Index dim, std::uint64_t seed);

}  // namespace liebcheck
