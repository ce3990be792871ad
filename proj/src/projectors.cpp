#include "qconc/projectors.hpp"

#include <algorithm>
#include <cmath>

namespace qconc {

namespace {

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a[i] * b;
  return out;
}

SubsetMask first_copy_mask(int num_particles) {
  return (SubsetMask{1} << num_particles) - 1;
}

Vector apply_pair_preprojectors(const Vector& v, const SystemShape& shape, Parity parity) {
  const int sites = 2 * shape.num_particles;
  const SubsetMask first = first_copy_mask(shape.num_particles);
  const SubsetMask second = first << shape.num_particles;
  Vector w = apply_total_symmetrizer(v, sites, shape.local_dim, first, parity);
  return apply_total_symmetrizer(w, sites, shape.local_dim, second, parity);
}

}  // namespace

double fermion_projector_scale(int num_particles) {
  return static_cast<double>(checked_pow(2, num_particles)) / (num_particles + 1.0);
}

std::string to_string(ProjectorTag tag) {
  switch (tag) {
    case ProjectorTag::pd: return "Pd";
    case ProjectorTag::pb: return "Pb";
    case ProjectorTag::pf: return "Pf";
    case ProjectorTag::pminus: return "Pminus";
    case ProjectorTag::witness_v: return "V";
    case ProjectorTag::witness_vtilde: return "Vtilde";
  }
  throw ValidationError("unknown projector tag");
}

ProjectorSpec ProjectorSpec::make(ProjectorTag tag, SystemShape shape) {
  shape.validate();
  ProjectorSpec spec{tag, shape, 1.0};
  if (tag == ProjectorTag::pf || tag == ProjectorTag::witness_vtilde)
    spec.alpha = fermion_projector_scale(shape.num_particles);
  return spec;
}

Vector apply_projector(const ProjectorSpec& spec, const Vector& v) {
  const SystemShape& shape = spec.shape;
  const int pairs = shape.num_particles;
  const int dim = shape.local_dim;
  switch (spec.tag) {
    case ProjectorTag::pd:
      return apply_product_symmetrizer(v, pairs, dim);
    // The pairwise-symmetrizer average does not preserve the (anti)symmetric
    // pair subspace, so the one-sided composition with the pre-projectors is
    // not Hermitian. The two-sided compression below is, agrees with the
    // one-sided form on every supported two-copy state, and is the operator
    // whose projector property the healthcheck certifies.
    case ProjectorTag::pb: {
      const Vector inner = apply_product_symmetrizer(
          apply_pair_preprojectors(v, shape, Parity::symmetric), pairs, dim);
      return apply_pair_preprojectors(inner, shape, Parity::symmetric);
    }
    case ProjectorTag::pf: {
      const Vector inner = apply_product_symmetrizer(
          apply_pair_preprojectors(v, shape, Parity::antisymmetric), pairs, dim);
      return spec.alpha * apply_pair_preprojectors(inner, shape, Parity::antisymmetric);
    }
    case ProjectorTag::pminus:
      return 0.5 * (v - apply_copy_swap(v, pairs, dim, first_copy_mask(pairs)));
    case ProjectorTag::witness_v: {
      const auto pd = ProjectorSpec::make(ProjectorTag::pd, shape);
      const auto pm = ProjectorSpec::make(ProjectorTag::pminus, shape);
      const double slack = 2.0 * (1.0 - std::pow(2.0, -pairs));
      return v - apply_projector(pd, v) - slack * apply_projector(pm, v);
    }
    case ProjectorTag::witness_vtilde: {
      const auto pf = ProjectorSpec::make(ProjectorTag::pf, shape);
      const auto pm = ProjectorSpec::make(ProjectorTag::pminus, shape);
      const double slack = 2.0 * spec.alpha * (1.0 - std::pow(2.0, -pairs));
      return v - apply_projector(pf, v) - slack * apply_projector(pm, v);
    }
  }
  throw ValidationError("unknown projector tag");
}

Matrix materialize_dense(const ProjectorSpec& spec, std::int64_t dense_cap) {
  const std::int64_t dim = spec.shape.two_copy_dim();
  if (dim > dense_cap)
    throw CapError("two-copy dimension " + std::to_string(dim) +
                   " exceeds the dense cap " + std::to_string(dense_cap) +
                   "; raise the cap to at least " + std::to_string(dim));
  Matrix m(dim, dim);
  Vector basis = Vector::Zero(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    basis[j] = 1.0;
    m.col(j) = apply_projector(spec, basis);
    basis[j] = 0.0;
  }
  return m;
}

double HealthReport::max_defect() const {
  return std::max({idempotence, hermiticity, highest_weight_fixation, subspace_preservation});
}

HealthReport projector_healthcheck(const ProjectorSpec& spec, std::int64_t dense_cap) {
  if (spec.tag != ProjectorTag::pd && spec.tag != ProjectorTag::pb &&
      spec.tag != ProjectorTag::pf)
    throw ValidationError("healthcheck applies to the projector tags Pd, Pb, Pf");
  const SystemShape& shape = spec.shape;
  const Matrix m = materialize_dense(spec, dense_cap);

  HealthReport report;
  report.idempotence = (m * m - m).norm();
  report.hermiticity = (m - m.adjoint()).norm();

  // The extremal vector the projector must leave fixed: a product vector for
  // Pd/Pb, the lowest Slater determinant for Pf.
  Vector w;
  if (spec.tag == ProjectorTag::pf) {
    SlaterIndex modes(shape.num_particles);
    for (int i = 0; i < shape.num_particles; ++i) modes[i] = i;
    w = slater_ket(shape, modes);
  } else {
    w = Vector::Zero(shape.full_dim());
    w[0] = 1.0;  // |e_1 ... e_1>
  }
  const Vector ww = kron_vec(w, w);
  report.highest_weight_fixation = (m * ww - ww).norm();

  // Pair subspace the operator is restricted to.
  const std::int64_t dim = shape.two_copy_dim();
  Matrix q(dim, dim);
  Vector basis = Vector::Zero(dim);
  for (std::int64_t j = 0; j < dim; ++j) {
    basis[j] = 1.0;
    if (spec.tag == ProjectorTag::pd) {
      q.col(j) = 0.5 * (basis + apply_copy_swap(basis, shape.num_particles, shape.local_dim,
                                                first_copy_mask(shape.num_particles)));
    } else {
      const Parity parity = (spec.tag == ProjectorTag::pb) ? Parity::symmetric
                                                           : Parity::antisymmetric;
      q.col(j) = apply_pair_preprojectors(basis, shape, parity);
    }
    basis[j] = 0.0;
  }
  const Matrix mq = m * q;
  report.subspace_preservation = (mq - q * mq).norm();
  return report;
}

std::string to_string(EvalMethod method) {
  switch (method) {
    case EvalMethod::purity: return "purity";
    case EvalMethod::two_copy: return "two-copy";
    case EvalMethod::dense: return "dense";
  }
  throw ValidationError("unknown evaluation method");
}

EvalMethod eval_method_from_string(const std::string& name) {
  if (name == "purity") return EvalMethod::purity;
  if (name == "two-copy" || name == "two_copy") return EvalMethod::two_copy;
  if (name == "dense") return EvalMethod::dense;
  throw ValidationError("unknown evaluation method '" + name + "'");
}

double product_symmetrizer_expectation(const Vector& psi, int num_particles, int local_dim) {
  const SubsetMask total = SubsetMask{1} << num_particles;
  double acc = 0.0;
  for (SubsetMask mask = 0; mask < total; ++mask)
    acc += state_marginal_purity(psi, num_particles, local_dim, mask);
  return acc / static_cast<double>(total);
}

TwoCopyStats two_copy_projector_stats(const Vector& psi, const SystemShape& shape) {
  const Vector v = kron_vec(psi, psi);
  // The residual form ||v - P v||^2 = 1 - <P> needs P to be an orthogonal
  // projector on the full space. The plain pairwise-symmetrizer product is
  // one, and it carries the concurrence for distinguishable particles and
  // bosons alike; for fermions the compressed alpha-scaled operator is one.
  const ProjectorTag tag = (shape.kind == ParticleKind::fermion) ? ProjectorTag::pf
                                                                 : ProjectorTag::pd;
  const Vector pv = apply_projector(ProjectorSpec::make(tag, shape), v);
  TwoCopyStats stats;
  stats.expectation = v.dot(pv).real();
  stats.residual_sq = (v - pv).squaredNorm();
  return stats;
}

double expect_pd(const PureState& psi, EvalMethod method, std::int64_t dense_cap) {
  switch (method) {
    case EvalMethod::purity:
      return product_symmetrizer_expectation(psi.amplitudes, psi.shape.num_particles,
                                             psi.shape.local_dim);
    case EvalMethod::two_copy: {
      const Vector v = kron_vec(psi.amplitudes, psi.amplitudes);
      const Vector pv = apply_product_symmetrizer(v, psi.shape.num_particles,
                                                  psi.shape.local_dim);
      return v.dot(pv).real();
    }
    case EvalMethod::dense: {
      const auto spec = ProjectorSpec::make(ProjectorTag::pd, psi.shape);
      const Matrix m = materialize_dense(spec, dense_cap);
      const Vector v = kron_vec(psi.amplitudes, psi.amplitudes);
      return v.dot(m * v).real();
    }
  }
  throw ValidationError("unknown evaluation method");
}

double expect_pb(const PureState& psi, EvalMethod method) {
  const auto diag =
      symmetry_kind_check(psi.amplitudes, psi.shape.num_particles, psi.shape.local_dim);
  if (diag.symmetric_defect > 1e-10)
    throw KindError("state is not permutation symmetric; bosonic expectation undefined");
  const double plain = expect_pd(psi, method);
  if (method == EvalMethod::two_copy) {
    // restriction identity: the symmetric pre-projectors must act as identity
    const Vector v = kron_vec(psi.amplitudes, psi.amplitudes);
    const auto spec = ProjectorSpec::make(ProjectorTag::pb, psi.shape);
    const double full = v.dot(apply_projector(spec, v)).real();
    if (std::abs(full - plain) > 1e-10)
      throw IntegrityError("bosonic pre-projector identity violated beyond tolerance");
  }
  return plain;
}

double expect_pf(const PureState& psi, EvalMethod method) {
  const auto diag =
      symmetry_kind_check(psi.amplitudes, psi.shape.num_particles, psi.shape.local_dim);
  if (diag.antisymmetric_defect > 1e-10)
    throw KindError("state is not antisymmetric; fermionic expectation undefined");
  return fermion_projector_scale(psi.shape.num_particles) * expect_pd(psi, method);
}

double expect_pminus(const MixedState& rho) {
  return 0.5 * (1.0 - purity(rho.density));
}

}  // namespace qconc
