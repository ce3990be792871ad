#pragma once

#include <cstdint>
#include <vector>

#include "qconc/concurrence.hpp"
#include "qconc/projectors.hpp"
#include "qconc/states.hpp"

namespace qconc {

struct BoundReport {
  double witness = 0.0;      // tr(rho ox rho W) for the kind's witness operator
  double lower_bound = 0.0;  // implied concurrence lower bound, >= 0
  bool detected = false;     // witness > 0
};

/// Two-copy witness for distinguishable particles:
/// tr(rho ox rho V), V = I - Pd - 2(1 - 2^-L) Pminus, evaluated from subset
/// purities by default. Positive witness certifies entanglement and
/// sqrt(witness) lower-bounds the mixed-state concurrence.
BoundReport mb_bound(const MixedState& rho, EvalMethod method = EvalMethod::purity,
                     std::int64_t dense_cap = kDefaultDenseCap);

/// Same witness restricted to bosonic states; a lower bound for the bosonic
/// concurrence because every distinguishable-particle lower bound is one.
BoundReport mb_bound_bosonic(const MixedState& rho,
                             EvalMethod method = EvalMethod::purity,
                             std::int64_t dense_cap = kDefaultDenseCap);

/// Fermionic witness tr(rho ox rho Vtilde),
/// Vtilde = (I - Pf) - 2 alpha (1 - 2^-L) Pminus. A positive value certifies
/// entanglement; the implied bound solves C (1 + 2 sqrt(alpha-1) C) = witness.
BoundReport fermionic_detection(const MixedState& rho,
                                EvalMethod method = EvalMethod::purity,
                                std::int64_t dense_cap = kDefaultDenseCap);

/// Transfers any distinguishable-particle concurrence lower bound f to the
/// fermionic one: max(0, sqrt(alpha) f - sqrt(alpha - 1)).
double fermionic_lower_from_distinguishable(double bound_value, int num_particles);

/// 2^-L sum over all site subsets of tr(rho_S^2), the empty subset counting
/// (tr rho)^2. Equals tr((rho ox rho) Pd) by the swap-trace identity.
double mixed_pd_expectation(const MixedState& rho);

/// tr((rho ox rho) op) by direct contraction, without forming the Kronecker
/// product. Dense cross-check path for the witnesses.
double dense_two_copy_trace(const Matrix& op, const Matrix& rho);

// ---------------------------------------------------------------------------
// convex roof estimation

/// Weighted ensemble of pure states realizing a mixed state.
struct Decomposition {
  std::vector<double> weights;
  std::vector<PureState> states;

  Matrix reconstruct() const;
};

struct RoofOptions {
  int ensemble_size = 0;      // 0 means twice the rank
  int restarts = 32;
  int max_iterations = 500;   // polish sweeps per restart
  double tolerance = 1e-8;    // stop when a sweep improves less than this
  std::uint64_t seed = 1;
};

struct RoofEstimate {
  double value = 0.0;  // certified upper bound on the convex-roof concurrence
  Decomposition decomposition;
  int restarts_used = 0;
  bool converged = false;
};

/// Upper-estimates the convex-roof concurrence by minimizing the ensemble
/// average over decompositions of rho. Decompositions of size m are
/// parametrized by m x r isometries acting on the weighted eigenvectors;
/// each restart draws a random isometry and polishes it with two-member
/// rotations until the value stalls. The result is the best value seen: a
/// genuine upper bound, never claimed optimal.
RoofEstimate convex_roof_upper(const MixedState& rho, const RoofOptions& options = {});

/// Closed-form two-qubit concurrence (spin-flip spectrum), divided by two to
/// match this library's pure-state normalization. Independent oracle for the
/// roof estimator.
double wootters_oracle(const MixedState& rho);

}  // namespace qconc
