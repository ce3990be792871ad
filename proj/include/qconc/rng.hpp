#pragma once

#include <cstdint>
#include <random>

#include "qconc/types.hpp"

namespace qconc {

/// Derives an independent stream seed from (seed, stream). Used to hand
/// disjoint deterministic streams to parallel workers.
std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator with hand-rolled distributions, so that identical seeds
/// give identical draws on every platform and standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on (0, 1].
  double uniform();
  /// Standard normal via Box-Muller.
  double gaussian();
  /// Standard complex normal (independent re/im with variance 1/2 each).
  Complex complex_gaussian();

  Vector gaussian_vector(std::int64_t dim);
  /// Unit vector distributed with the rotation-invariant measure.
  Vector haar_vector(std::int64_t dim);
  /// Haar-distributed unitary via QR of a Gaussian matrix, with the phase
  /// convention that makes the R diagonal positive.
  Matrix haar_unitary(int dim);
  /// Flat Dirichlet weights: positive, summing to one.
  std::vector<double> dirichlet_flat(int count);

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace qconc
