#pragma once

#include "qconc/states.hpp"
#include "qconc/types.hpp"

namespace qconc {

/// Largest two-copy dimension N^(2L) for which dense operators may be built.
constexpr std::int64_t kDefaultDenseCap = 4096;

/// Normalization that turns the two-copy operator for fermions into an
/// orthogonal projector: 2^L / (L + 1).
double fermion_projector_scale(int num_particles);

enum class ProjectorTag { pd, pb, pf, pminus, witness_v, witness_vtilde };

std::string to_string(ProjectorTag tag);

/// Symbolic description of a two-copy operator on the 2L-fold tensor power.
/// Applied matrix-free; dense materialization exists only behind the cap.
struct ProjectorSpec {
  ProjectorTag tag;
  SystemShape shape;
  double alpha = 1.0;  // audit copy of the fermionic normalization

  static ProjectorSpec make(ProjectorTag tag, SystemShape shape);
};

Vector apply_projector(const ProjectorSpec& spec, const Vector& v);

/// Explicit matrix of the operator, column by column. Throws CapError when
/// N^(2L) exceeds the cap; the message names the cap that would be needed.
Matrix materialize_dense(const ProjectorSpec& spec, std::int64_t dense_cap = kDefaultDenseCap);

struct HealthReport {
  double idempotence = 0.0;               // ||M^2 - M||_F
  double hermiticity = 0.0;               // ||M - M^dag||_F
  double highest_weight_fixation = 0.0;   // ||M (w ox w) - w ox w||
  double subspace_preservation = 0.0;     // ||(I - Q) M Q||_F

  double max_defect() const;
};

/// Dense structural check of a projector tag (pd, pb or pf): idempotence,
/// Hermiticity, fixation of the kind's extremal product vector, and
/// preservation of the pair subspace the operator is restricted to.
HealthReport projector_healthcheck(const ProjectorSpec& spec,
                                   std::int64_t dense_cap = kDefaultDenseCap);

// ---------------------------------------------------------------------------
// expectation values

enum class EvalMethod { purity, two_copy, dense };

std::string to_string(EvalMethod method);
EvalMethod eval_method_from_string(const std::string& name);

/// <psi ox psi| Pd |psi ox psi>. The purity path evaluates the subset-purity
/// average 2^-L sum_S tr(rho_S^2) and never forms the two-copy vector.
double expect_pd(const PureState& psi, EvalMethod method = EvalMethod::purity,
                 std::int64_t dense_cap = kDefaultDenseCap);

/// Bosonic expectation; equals expect_pd on symmetric inputs. The two-copy
/// path also evaluates the operator with its symmetric pre-projectors and
/// cross-checks the two numbers.
double expect_pb(const PureState& psi, EvalMethod method = EvalMethod::purity);

/// Fermionic expectation: the scaled value alpha * expect_pd.
double expect_pf(const PureState& psi, EvalMethod method = EvalMethod::purity);

/// tr((rho ox rho) Pminus) = (1 - tr rho^2) / 2.
double expect_pminus(const MixedState& rho);

/// Raw-vector purity-path expectation of Pd; no kind validation.
double product_symmetrizer_expectation(const Vector& psi, int num_particles, int local_dim);

/// Two-copy evaluation of the kind's scaled projector on |psi ox psi|:
/// expectation <v|P v> and squared residual ||v - P v||^2 from one pass.
/// The residual form is exact for coherent inputs where the plain
/// 1 - <v|P v> difference would be dominated by cancellation.
struct TwoCopyStats {
  double expectation = 0.0;
  double residual_sq = 0.0;
};
TwoCopyStats two_copy_projector_stats(const Vector& psi, const SystemShape& shape);

}  // namespace qconc
