#include "qconc/concurrence.hpp"

#include <cmath>

namespace qconc {

namespace {

constexpr double kRadicandClip = -1e-10;

double value_from_radicand(double radicand) {
  if (radicand < kRadicandClip)
    throw IntegrityError("concurrence radicand " + std::to_string(radicand) +
                         " is negative beyond round-off; projector normalization suspect");
  return std::sqrt(std::max(0.0, radicand));
}

}  // namespace

double concurrence_of_vector(const Vector& normalized, const SystemShape& shape,
                             EvalMethod method) {
  if (method == EvalMethod::two_copy) {
    const TwoCopyStats stats = two_copy_projector_stats(normalized, shape);
    if (1.0 - stats.expectation < kRadicandClip)
      throw IntegrityError("scaled projector expectation exceeds one beyond round-off");
    return std::sqrt(stats.residual_sq);
  }
  double expectation =
      product_symmetrizer_expectation(normalized, shape.num_particles, shape.local_dim);
  if (shape.kind == ParticleKind::fermion)
    expectation *= fermion_projector_scale(shape.num_particles);
  return value_from_radicand(1.0 - expectation);
}

ConcurrenceResult concurrence_pure(const PureState& psi, EvalMethod method,
                                   std::int64_t dense_cap) {
  const SystemShape& shape = psi.shape;
  if (symmetry_defect(psi.amplitudes, shape) > 1e-10)
    throw KindError("state does not satisfy the declared '" + to_string(shape.kind) +
                    "' exchange symmetry");

  ConcurrenceResult result;
  result.kind = shape.kind;
  result.method = method;
  switch (method) {
    case EvalMethod::two_copy: {
      const TwoCopyStats stats = two_copy_projector_stats(psi.amplitudes, shape);
      if (1.0 - stats.expectation < kRadicandClip)
        throw IntegrityError("scaled projector expectation exceeds one beyond round-off");
      // residual and expectation describe the same orthogonal projector, so
      // keep the pair consistent at the residual's accuracy
      result.value = std::sqrt(stats.residual_sq);
      result.expectation = 1.0 - stats.residual_sq;
      return result;
    }
    case EvalMethod::purity:
    case EvalMethod::dense: {
      double expectation = (method == EvalMethod::purity)
                               ? product_symmetrizer_expectation(
                                     psi.amplitudes, shape.num_particles, shape.local_dim)
                               : expect_pd(psi, EvalMethod::dense, dense_cap);
      if (shape.kind == ParticleKind::fermion)
        expectation *= fermion_projector_scale(shape.num_particles);
      result.expectation = expectation;
      result.value = value_from_radicand(1.0 - expectation);
      return result;
    }
  }
  throw ValidationError("unknown evaluation method");
}

double bipartition_value(const PureState& psi, int site) {
  if (site < 0 || site >= psi.shape.num_particles)
    throw ValidationError("site index out of range");
  const double marginal = state_marginal_purity(
      psi.amplitudes, psi.shape.num_particles, psi.shape.local_dim, SubsetMask{1} << site);
  return 1.0 - 0.5 * (1.0 + marginal);
}

CoherenceVerdict is_coherent(const PureState& psi, double tol) {
  CoherenceVerdict verdict;
  verdict.tolerance = tol;
  verdict.concurrence = concurrence_pure(psi, EvalMethod::two_copy).value;
  verdict.coherent = verdict.concurrence <= tol;
  verdict.bipartition_values.reserve(psi.shape.num_particles);
  for (int s = 0; s < psi.shape.num_particles; ++s)
    verdict.bipartition_values.push_back(bipartition_value(psi, s));
  return verdict;
}

std::vector<Matrix> gellmann_basis(int n) {
  std::vector<Matrix> basis;
  basis.reserve(static_cast<size_t>(n) * n - 1);
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix sym = Matrix::Zero(n, n);
      sym(j, k) = 1.0;
      sym(k, j) = 1.0;
      basis.push_back(sym);
      Matrix asym = Matrix::Zero(n, n);
      asym(j, k) = Complex(0.0, -1.0);
      asym(k, j) = Complex(0.0, 1.0);
      basis.push_back(asym);
    }
  }
  for (int l = 1; l < n; ++l) {
    Matrix diag = Matrix::Zero(n, n);
    const double scale = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int i = 0; i < l; ++i) diag(i, i) = scale;
    diag(l, l) = -scale * l;
    basis.push_back(diag);
  }
  return basis;
}

double invariant_variance(const PureState& psi) {
  const SystemShape& shape = psi.shape;
  const auto generators = gellmann_basis(shape.local_dim);
  const Vector& v = psi.amplitudes;
  double total = 0.0;
  if (shape.kind == ParticleKind::distinguishable) {
    for (int site = 0; site < shape.num_particles; ++site) {
      for (const Matrix& x : generators) {
        const Vector xv = apply_single_site(v, shape.num_particles, shape.local_dim, site, x);
        const double mean = v.dot(xv).real();
        total += xv.squaredNorm() - mean * mean;
      }
    }
  } else {
    for (const Matrix& x : generators) {
      Vector xv = Vector::Zero(v.size());
      for (int site = 0; site < shape.num_particles; ++site)
        xv += apply_single_site(v, shape.num_particles, shape.local_dim, site, x);
      const double mean = v.dot(xv).real();
      total += xv.squaredNorm() - mean * mean;
    }
  }
  return total;
}

}  // namespace qconc
