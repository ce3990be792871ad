#include "qconc/states.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qconc/rng.hpp"

namespace qconc {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kSymmetryTol = 1e-10;
constexpr double kPsdTol = 1e-10;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

SubsetMask all_particles(const SystemShape& shape) {
  return (SubsetMask{1} << shape.num_particles) - 1;
}

Matrix compress_to_subspace(const Matrix& rho, const SystemShape& shape) {
  const Parity parity = (shape.kind == ParticleKind::boson) ? Parity::symmetric
                                                            : Parity::antisymmetric;
  const SubsetMask sites = all_particles(shape);
  Matrix projected(rho.rows(), rho.cols());
  for (Eigen::Index j = 0; j < rho.cols(); ++j)
    projected.col(j) = apply_total_symmetrizer(rho.col(j), shape.num_particles,
                                               shape.local_dim, sites, parity);
  Matrix adj = projected.adjoint();
  for (Eigen::Index j = 0; j < adj.cols(); ++j)
    adj.col(j) = apply_total_symmetrizer(adj.col(j), shape.num_particles,
                                         shape.local_dim, sites, parity);
  return adj.adjoint();
}

}  // namespace

PureState PureState::create(SystemShape shape, Vector amplitudes) {
  shape.validate();
  if (amplitudes.size() != shape.full_dim())
    throw ValidationError("amplitude vector does not match the system shape");
  if (std::abs(amplitudes.norm() - 1.0) > kNormTol)
    throw ValidationError("state vector is not normalized");
  PureState psi{std::move(shape), std::move(amplitudes)};
  if (symmetry_defect(psi.amplitudes, psi.shape) > kSymmetryTol)
    throw KindError("amplitudes violate the exchange symmetry of kind '" +
                    to_string(psi.shape.kind) + "'");
  return psi;
}

PureState PureState::unchecked(SystemShape shape, Vector amplitudes) {
  return PureState{std::move(shape), std::move(amplitudes)};
}

MixedState MixedState::create(SystemShape shape, Matrix density) {
  shape.validate();
  const std::int64_t dim = shape.full_dim();
  if (density.rows() != dim || density.cols() != dim)
    throw ValidationError("density matrix does not match the system shape");
  if ((density - density.adjoint()).norm() > kNormTol)
    throw ValidationError("density matrix is not Hermitian");
  if (std::abs(density.trace().real() - 1.0) > kNormTol ||
      std::abs(density.trace().imag()) > kNormTol)
    throw ValidationError("density matrix does not have unit trace");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(density, Eigen::EigenvaluesOnly);
  if (eig.eigenvalues().minCoeff() < -kPsdTol)
    throw ValidationError("density matrix has a negative eigenvalue beyond tolerance");
  MixedState rho{std::move(shape), std::move(density)};
  if (support_defect(rho.density, rho.shape) > kSymmetryTol)
    throw KindError("density support leaks outside the '" + to_string(rho.shape.kind) +
                    "' subspace");
  return rho;
}

MixedState MixedState::unchecked(SystemShape shape, Matrix density) {
  return MixedState{std::move(shape), std::move(density)};
}

MixedState MixedState::from_pure(const PureState& psi) {
  return MixedState{psi.shape, psi.density()};
}

PureState product_state(int local_dim, const std::vector<Vector>& factors) {
  if (factors.empty()) throw ValidationError("product state needs at least one factor");
  Vector acc = Vector::Ones(1);
  for (const Vector& f : factors) {
    if (f.size() != local_dim)
      throw ValidationError("single-particle vector has the wrong dimension");
    if (std::abs(f.norm() - 1.0) > kNormTol)
      throw ValidationError("single-particle vector is not normalized");
    Vector next(acc.size() * local_dim);
    for (Eigen::Index i = 0; i < acc.size(); ++i)
      for (int j = 0; j < local_dim; ++j) next[i * local_dim + j] = acc[i] * f[j];
    acc = std::move(next);
  }
  SystemShape shape{ParticleKind::distinguishable, static_cast<int>(factors.size()),
                    local_dim};
  return PureState::create(shape, std::move(acc));
}

Vector occupation_ket(const SystemShape& shape, const OccupationVector& counts) {
  if (static_cast<int>(counts.size()) != shape.local_dim)
    throw ValidationError("occupation vector must list one count per mode");
  int total = 0;
  double weight = 1.0;
  std::vector<int> digits;
  for (int mode = 0; mode < shape.local_dim; ++mode) {
    const int n = counts[mode];
    if (n < 0) throw ValidationError("occupation counts must be nonnegative");
    total += n;
    weight *= factorial(n);
    digits.insert(digits.end(), n, mode);
  }
  if (total != shape.num_particles)
    throw ValidationError("occupation counts must sum to the particle count");

  const double coeff = std::sqrt(weight / factorial(shape.num_particles));
  const auto strides = [&] {
    std::vector<std::int64_t> s(shape.num_particles);
    std::int64_t acc = 1;
    for (int i = shape.num_particles - 1; i >= 0; --i) {
      s[i] = acc;
      acc *= shape.local_dim;
    }
    return s;
  }();

  Vector ket = Vector::Zero(shape.full_dim());
  std::sort(digits.begin(), digits.end());
  do {
    std::int64_t flat = 0;
    for (int i = 0; i < shape.num_particles; ++i) flat += digits[i] * strides[i];
    ket[flat] = coeff;
  } while (std::next_permutation(digits.begin(), digits.end()));
  return ket;
}

Vector slater_ket(const SystemShape& shape, const SlaterIndex& modes) {
  if (static_cast<int>(modes.size()) != shape.num_particles)
    throw ValidationError("Slater index must list one mode per particle");
  for (size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= shape.local_dim)
      throw ValidationError("Slater mode index out of range");
    if (i > 0 && modes[i] <= modes[i - 1])
      throw ValidationError("Slater index must be strictly increasing");
  }

  const int count = shape.num_particles;
  const double coeff = 1.0 / std::sqrt(factorial(count));
  const auto strides = [&] {
    std::vector<std::int64_t> s(count);
    std::int64_t acc = 1;
    for (int i = count - 1; i >= 0; --i) {
      s[i] = acc;
      acc *= shape.local_dim;
    }
    return s;
  }();

  Vector ket = Vector::Zero(shape.full_dim());
  std::vector<int> arrangement(count);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  do {
    int inversions = 0;
    for (int i = 0; i < count; ++i)
      for (int j = i + 1; j < count; ++j)
        if (arrangement[i] > arrangement[j]) ++inversions;
    std::int64_t flat = 0;
    for (int i = 0; i < count; ++i) flat += modes[arrangement[i]] * strides[i];
    ket[flat] = (inversions % 2 == 0) ? coeff : -coeff;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return ket;
}

PureState bosonic_state(const SystemShape& shape,
                        const std::vector<std::pair<OccupationVector, Complex>>& amplitudes) {
  SystemShape s = shape;
  s.kind = ParticleKind::boson;
  s.validate();
  if (amplitudes.empty()) throw ValidationError("no occupation amplitudes given");
  Vector acc = Vector::Zero(s.full_dim());
  for (const auto& [counts, value] : amplitudes) acc += value * occupation_ket(s, counts);
  const double norm = acc.norm();
  if (norm < 1e-14) throw ValidationError("occupation amplitudes sum to the zero vector");
  // skip the division when already normalized, so round-trips are bit-exact
  if (std::abs(norm - 1.0) > 1e-15) acc /= norm;
  return PureState::create(s, std::move(acc));
}

PureState slater_state(const SystemShape& shape,
                       const std::vector<std::pair<SlaterIndex, Complex>>& amplitudes) {
  SystemShape s = shape;
  s.kind = ParticleKind::fermion;
  s.validate();
  if (amplitudes.empty()) throw ValidationError("no Slater amplitudes given");
  Vector acc = Vector::Zero(s.full_dim());
  for (const auto& [modes, value] : amplitudes) acc += value * slater_ket(s, modes);
  const double norm = acc.norm();
  if (norm < 1e-14) throw ValidationError("Slater amplitudes sum to the zero vector");
  if (std::abs(norm - 1.0) > 1e-15) acc /= norm;
  return PureState::create(s, std::move(acc));
}

std::vector<OccupationVector> occupation_basis(int num_particles, int local_dim) {
  std::vector<OccupationVector> basis;
  OccupationVector counts(local_dim, 0);
  // lexicographic recursion over counts
  const auto recurse = [&](auto&& self, int mode, int remaining) -> void {
    if (mode == local_dim - 1) {
      counts[mode] = remaining;
      basis.push_back(counts);
      return;
    }
    for (int n = remaining; n >= 0; --n) {
      counts[mode] = n;
      self(self, mode + 1, remaining - n);
    }
  };
  recurse(recurse, 0, num_particles);
  return basis;
}

std::vector<SlaterIndex> slater_basis(int num_particles, int local_dim) {
  std::vector<SlaterIndex> basis;
  SlaterIndex modes(num_particles);
  std::iota(modes.begin(), modes.end(), 0);
  while (true) {
    basis.push_back(modes);
    int i = num_particles - 1;
    while (i >= 0 && modes[i] == local_dim - num_particles + i) --i;
    if (i < 0) break;
    ++modes[i];
    for (int j = i + 1; j < num_particles; ++j) modes[j] = modes[j - 1] + 1;
  }
  return basis;
}

PureState random_pure(const SystemShape& shape, std::uint64_t seed) {
  shape.validate();
  Rng rng(split_seed(seed, 0x70757265));
  switch (shape.kind) {
    case ParticleKind::distinguishable:
      return PureState::create(shape, rng.haar_vector(shape.full_dim()));
    case ParticleKind::boson: {
      const auto basis = occupation_basis(shape.num_particles, shape.local_dim);
      const Vector coeffs = rng.haar_vector(static_cast<std::int64_t>(basis.size()));
      Vector acc = Vector::Zero(shape.full_dim());
      for (size_t k = 0; k < basis.size(); ++k) acc += coeffs[k] * occupation_ket(shape, basis[k]);
      return PureState::create(shape, std::move(acc));
    }
    case ParticleKind::fermion: {
      const auto basis = slater_basis(shape.num_particles, shape.local_dim);
      const Vector coeffs = rng.haar_vector(static_cast<std::int64_t>(basis.size()));
      Vector acc = Vector::Zero(shape.full_dim());
      for (size_t k = 0; k < basis.size(); ++k) acc += coeffs[k] * slater_ket(shape, basis[k]);
      return PureState::create(shape, std::move(acc));
    }
  }
  throw ValidationError("unknown particle kind");
}

MixedState random_mixed(const SystemShape& shape, int rank, std::uint64_t seed) {
  shape.validate();
  if (rank < 1 || rank > shape.subspace_dim())
    throw ValidationError("rank must lie between 1 and the subspace dimension");
  Rng rng(split_seed(seed, 0x6d697865));
  const std::vector<double> weights = rng.dirichlet_flat(rank);
  Matrix rho = Matrix::Zero(shape.full_dim(), shape.full_dim());
  for (int i = 0; i < rank; ++i) {
    const PureState psi = random_pure(shape, split_seed(seed, 0x100 + i));
    rho += weights[i] * psi.density();
  }
  return MixedState::create(shape, std::move(rho));
}

std::vector<double> schmidt_coefficients(const PureState& psi, int site) {
  const int count = psi.shape.num_particles;
  const int dim = psi.shape.local_dim;
  if (site < 0 || site >= count) throw ValidationError("site index out of range");
  const std::int64_t rest_dim = checked_pow(dim, count - 1);
  Matrix reshaped(dim, rest_dim);
  const std::int64_t site_stride = checked_pow(dim, count - 1 - site);
  for (std::int64_t flat = 0; flat < psi.amplitudes.size(); ++flat) {
    const int row = static_cast<int>((flat / site_stride) % dim);
    const std::int64_t high = flat / (site_stride * dim);
    const std::int64_t low = flat % site_stride;
    reshaped(row, high * site_stride + low) = psi.amplitudes[flat];
  }
  Eigen::JacobiSVD<Matrix> svd(reshaped);
  const auto& sv = svd.singularValues();
  return std::vector<double>(sv.data(), sv.data() + sv.size());
}

SymmetryDiagnosis symmetry_kind_check(const Vector& amplitudes, int num_sites,
                                      int local_dim, double tol) {
  SymmetryDiagnosis diag;
  for (int s = 0; s + 1 < num_sites; ++s) {
    const Vector swapped = apply_site_permutation(
        amplitudes, num_sites, local_dim, SitePermutation::transposition(num_sites, s, s + 1));
    diag.symmetric_defect = std::max(diag.symmetric_defect, (swapped - amplitudes).norm());
    diag.antisymmetric_defect = std::max(diag.antisymmetric_defect, (swapped + amplitudes).norm());
  }
  if (diag.symmetric_defect <= tol)
    diag.cls = SymmetryClass::symmetric;
  else if (diag.antisymmetric_defect <= tol)
    diag.cls = SymmetryClass::antisymmetric;
  else
    diag.cls = SymmetryClass::mixed;
  return diag;
}

double symmetry_defect(const Vector& amplitudes, const SystemShape& shape) {
  if (shape.kind == ParticleKind::distinguishable) return 0.0;
  const auto diag = symmetry_kind_check(amplitudes, shape.num_particles, shape.local_dim);
  return (shape.kind == ParticleKind::boson) ? diag.symmetric_defect
                                             : diag.antisymmetric_defect;
}

double support_defect(const Matrix& rho, const SystemShape& shape) {
  if (shape.kind == ParticleKind::distinguishable) return 0.0;
  return (rho - compress_to_subspace(rho, shape)).norm();
}

}  // namespace qconc
