#pragma once

#include <vector>

#include "qconc/projectors.hpp"
#include "qconc/states.hpp"
#include "qconc/types.hpp"

namespace qconc {

struct ConcurrenceResult {
  double value = 0.0;        // nonnegative; zero exactly on coherent states
  ParticleKind kind = ParticleKind::distinguishable;
  double expectation = 0.0;  // the scaled projector expectation the value came from
  EvalMethod method = EvalMethod::purity;
};

/// sqrt(1 - <P>) with the kind's projector: the plain product symmetrizer for
/// distinguishable particles and bosons, the alpha-scaled one for fermions.
/// The two-copy path derives the radicand from the projector residual norm,
/// which stays meaningful all the way down to the coherent orbit; the purity
/// path forms 1 - <P> directly. Radicands below -1e-10 raise IntegrityError,
/// anything else negative is round-off and clips to zero.
ConcurrenceResult concurrence_pure(const PureState& psi,
                                   EvalMethod method = EvalMethod::purity,
                                   std::int64_t dense_cap = kDefaultDenseCap);

/// Raw-vector version used by the mixed-state optimizer; skips validation.
double concurrence_of_vector(const Vector& normalized, const SystemShape& shape,
                             EvalMethod method = EvalMethod::purity);

struct CoherenceVerdict {
  bool coherent = false;
  double concurrence = 0.0;
  double tolerance = 0.0;
  std::vector<double> bipartition_values;  // one per site
};

/// Tests whether the state sits on the coherent orbit (product / condensate /
/// Slater). Uses the two-copy residual evaluation, whose error floor is far
/// below the default tolerance.
CoherenceVerdict is_coherent(const PureState& psi, double tol = 1e-7);

/// 1 - (1 + tr rho_i^2) / 2: zero exactly when site i is unentangled from
/// the rest.
double bipartition_value(const PureState& psi, int site);

/// Total variance of the local symmetry generators: per-site su(N) action
/// for distinguishable particles, the diagonal action for bosons/fermions.
/// Invariant under the local group; minimal on the coherent orbit.
double invariant_variance(const PureState& psi);

/// Orthogonal Hermitian generator basis of su(n), tr(X_a X_b) = 2 delta_ab.
std::vector<Matrix> gellmann_basis(int n);

}  // namespace qconc
