#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qconc/tensor_ops.hpp"
#include "qconc/types.hpp"

namespace qconc {

// Occupation numbers per mode (bosons): counts n_1..n_N with sum L.
using OccupationVector = std::vector<int>;
// Strictly increasing 0-based mode tuple of length L (fermions).
using SlaterIndex = std::vector<int>;

/// Normalized pure state stored embedded in the full L-fold tensor space,
/// whatever the particle kind. Construction validates normalization and the
/// permutation (anti)symmetry demanded by the kind.
struct PureState {
  SystemShape shape;
  Vector amplitudes;

  static PureState create(SystemShape shape, Vector amplitudes);
  /// Skips validation; for internal use on vectors already known to be good.
  static PureState unchecked(SystemShape shape, Vector amplitudes);

  Matrix density() const { return amplitudes * amplitudes.adjoint(); }
};

/// Density matrix over the full L-fold tensor space. Construction validates
/// Hermiticity, positivity, unit trace and, for bosons/fermions, that the
/// support stays inside the (anti)symmetric subspace.
struct MixedState {
  SystemShape shape;
  Matrix density;

  static MixedState create(SystemShape shape, Matrix density);
  static MixedState unchecked(SystemShape shape, Matrix density);

  static MixedState from_pure(const PureState& psi);
};

// ---------------------------------------------------------------------------
// construction

/// Tensor product of L normalized single-particle vectors (distinguishable).
PureState product_state(int local_dim, const std::vector<Vector>& factors);

/// Bosonic state from amplitudes on occupation-number basis kets.
PureState bosonic_state(const SystemShape& shape,
                        const std::vector<std::pair<OccupationVector, Complex>>& amplitudes);

/// Fermionic state from amplitudes on Slater-determinant basis kets.
PureState slater_state(const SystemShape& shape,
                       const std::vector<std::pair<SlaterIndex, Complex>>& amplitudes);

/// Haar-random unit vector on the kind's subspace; deterministic per seed.
PureState random_pure(const SystemShape& shape, std::uint64_t seed);

/// Random rank-r mixture of Haar vectors with flat Dirichlet weights.
MixedState random_mixed(const SystemShape& shape, int rank, std::uint64_t seed);

// ---------------------------------------------------------------------------
// basis enumeration (lexicographic; shared by file I/O and random generation)

std::vector<OccupationVector> occupation_basis(int num_particles, int local_dim);
std::vector<SlaterIndex> slater_basis(int num_particles, int local_dim);

/// Embedded normalized occupation ket: the symmetrized product ket scaled by
/// sqrt(prod n_i! / L!).
Vector occupation_ket(const SystemShape& shape, const OccupationVector& counts);

/// Embedded normalized Slater ket: (1/sqrt(L!)) sum_sigma sgn(sigma) |...>.
Vector slater_ket(const SystemShape& shape, const SlaterIndex& modes);

// ---------------------------------------------------------------------------
// diagnostics

/// Singular values of the site-versus-rest bipartition, nonincreasing.
std::vector<double> schmidt_coefficients(const PureState& psi, int site);

enum class SymmetryClass { symmetric, antisymmetric, mixed };

struct SymmetryDiagnosis {
  double symmetric_defect = 0.0;     // max over adjacent swaps of ||P v - v||
  double antisymmetric_defect = 0.0; // max over adjacent swaps of ||P v + v||
  SymmetryClass cls = SymmetryClass::mixed;
};

SymmetryDiagnosis symmetry_kind_check(const Vector& amplitudes, int num_sites,
                                      int local_dim, double tol = 1e-10);

/// Max deviation from the kind's exchange behavior; 0 for distinguishable.
double symmetry_defect(const Vector& amplitudes, const SystemShape& shape);

/// Frobenius distance between rho and its compression onto the kind's
/// subspace; 0 for distinguishable.
double support_defect(const Matrix& rho, const SystemShape& shape);

}  // namespace qconc
