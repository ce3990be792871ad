#include "qconc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>

#include "qconc/rng.hpp"

namespace qconc {

namespace {

constexpr double kSupportTol = 1e-10;
constexpr double kRankEps = 1e-12;
constexpr double kMemberWeightFloor = 1e-14;

double pminus_expectation(const MixedState& rho) {
  return 0.5 * (1.0 - purity(rho.density));
}

double witness_value(const MixedState& rho, ProjectorTag tag, EvalMethod method,
                     std::int64_t dense_cap) {
  if (method == EvalMethod::dense) {
    const auto spec = ProjectorSpec::make(tag, rho.shape);
    return dense_two_copy_trace(materialize_dense(spec, dense_cap), rho.density);
  }
  const int count = rho.shape.num_particles;
  const double slack = 2.0 * (1.0 - std::pow(2.0, -count));
  if (tag == ProjectorTag::witness_v)
    return 1.0 - mixed_pd_expectation(rho) - slack * pminus_expectation(rho);
  const double alpha = fermion_projector_scale(count);
  return 1.0 - alpha * mixed_pd_expectation(rho) -
         alpha * slack * pminus_expectation(rho);
}

void require_kind(const MixedState& rho, ParticleKind kind) {
  if (rho.shape.kind != kind)
    throw KindError("expected a " + to_string(kind) + " state, got " +
                    to_string(rho.shape.kind));
  if (support_defect(rho.density, rho.shape) > kSupportTol)
    throw KindError("density support leaks outside the " + to_string(kind) + " subspace");
}

}  // namespace

double mixed_pd_expectation(const MixedState& rho) {
  const int count = rho.shape.num_particles;
  const SubsetMask total = SubsetMask{1} << count;
  const SubsetMask full = total - 1;
  const double trace = rho.density.trace().real();
  double acc = trace * trace;  // empty subset
  for (SubsetMask mask = 1; mask < full; ++mask)
    acc += purity(partial_trace(rho.density, count, rho.shape.local_dim, mask));
  acc += purity(rho.density);  // full subset
  return acc / static_cast<double>(total);
}

double dense_two_copy_trace(const Matrix& op, const Matrix& rho) {
  const std::int64_t d = rho.rows();
  if (op.rows() != d * d || op.cols() != d * d)
    throw ValidationError("operator dimension does not match two copies of rho");
  Complex acc = 0.0;
  for (std::int64_t i = 0; i < d; ++i)
    for (std::int64_t j = 0; j < d; ++j) {
      const Complex rij = rho(i, j);
      if (rij == Complex(0.0)) continue;
      Complex inner = 0.0;
      for (std::int64_t ip = 0; ip < d; ++ip)
        for (std::int64_t jp = 0; jp < d; ++jp)
          inner += rho(ip, jp) * op(j * d + jp, i * d + ip);
      acc += rij * inner;
    }
  return acc.real();
}

BoundReport mb_bound(const MixedState& rho, EvalMethod method, std::int64_t dense_cap) {
  BoundReport report;
  report.witness = witness_value(rho, ProjectorTag::witness_v, method, dense_cap);
  report.lower_bound = std::sqrt(std::max(0.0, report.witness));
  report.detected = report.witness > 0.0;
  return report;
}

BoundReport mb_bound_bosonic(const MixedState& rho, EvalMethod method,
                             std::int64_t dense_cap) {
  require_kind(rho, ParticleKind::boson);
  return mb_bound(rho, method, dense_cap);
}

BoundReport fermionic_detection(const MixedState& rho, EvalMethod method,
                                std::int64_t dense_cap) {
  require_kind(rho, ParticleKind::fermion);
  BoundReport report;
  report.witness = witness_value(rho, ProjectorTag::witness_vtilde, method, dense_cap);
  report.detected = report.witness > 0.0;
  if (report.witness > 0.0) {
    const double alpha = fermion_projector_scale(rho.shape.num_particles);
    const double k = 2.0 * std::sqrt(std::max(0.0, alpha - 1.0));
    // positive root of k C^2 + C - witness = 0
    report.lower_bound = (k < 1e-12)
                             ? report.witness
                             : (std::sqrt(1.0 + 4.0 * k * report.witness) - 1.0) / (2.0 * k);
  }
  return report;
}

double fermionic_lower_from_distinguishable(double bound_value, int num_particles) {
  const double alpha = fermion_projector_scale(num_particles);
  return std::max(0.0, std::sqrt(alpha) * bound_value - std::sqrt(alpha - 1.0));
}

Matrix Decomposition::reconstruct() const {
  if (states.empty()) throw ValidationError("empty decomposition");
  const std::int64_t dim = states.front().amplitudes.size();
  Matrix rho = Matrix::Zero(dim, dim);
  for (size_t i = 0; i < states.size(); ++i)
    rho += weights[i] * states[i].density();
  return rho;
}

double wootters_oracle(const MixedState& rho) {
  if (rho.shape.num_particles != 2 || rho.shape.local_dim != 2 ||
      rho.shape.kind != ParticleKind::distinguishable)
    throw ValidationError("spin-flip concurrence is defined for two distinguishable qubits");
  Matrix yy = Matrix::Zero(4, 4);
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;  // sigma_y ox sigma_y in the computational basis
  const Matrix flipped = yy * rho.density.conjugate() * yy;
  Eigen::ComplexEigenSolver<Matrix> eig(rho.density * flipped, false);
  std::vector<double> mu(4);
  for (int i = 0; i < 4; ++i)
    mu[i] = std::sqrt(std::max(0.0, eig.eigenvalues()[i].real()));
  std::sort(mu.begin(), mu.end(), std::greater<>());
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]) / 2.0;
}

// ---------------------------------------------------------------------------
// convex roof estimation

namespace {

struct Ensemble {
  // column j holds the subnormalized member sqrt(p_j) |phi_j>
  Matrix members;
  SystemShape shape;

  double member_value(Eigen::Index j) const {
    const double weight = members.col(j).squaredNorm();
    if (weight < kMemberWeightFloor) return 0.0;
    return weight * concurrence_of_vector(members.col(j) / std::sqrt(weight), shape,
                                          EvalMethod::purity);
  }

  double pair_value(Eigen::Index a, Eigen::Index b) const {
    return member_value(a) + member_value(b);
  }

  double total_value() const {
    double acc = 0.0;
    for (Eigen::Index j = 0; j < members.cols(); ++j) acc += member_value(j);
    return acc;
  }
};

// Two-member rotation: col_a' = c col_a + s e^{i phase} col_b,
// col_b' = -s e^{-i phase} col_a + c col_b. Unitary for every (angle, phase),
// and every U(2) row mixing is of this form up to member phases, which the
// objective ignores.
void rotate_pair(Ensemble& ens, Eigen::Index a, Eigen::Index b, double angle, double phase) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex u = std::polar(s, phase);
  const Vector col_a = ens.members.col(a);
  const Vector col_b = ens.members.col(b);
  ens.members.col(a) = c * col_a + u * col_b;
  ens.members.col(b) = -std::conj(u) * col_a + c * col_b;
}

double rotated_pair_value(const Ensemble& ens, Eigen::Index a, Eigen::Index b,
                          double angle, double phase) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Complex u = std::polar(s, phase);
  Ensemble probe{Matrix(ens.members.rows(), 2), ens.shape};
  probe.members.col(0) = c * ens.members.col(a) + u * ens.members.col(b);
  probe.members.col(1) = -std::conj(u) * ens.members.col(a) + c * ens.members.col(b);
  return probe.pair_value(0, 1);
}

// Coarse grid over the (angle, phase) torus followed by pattern search.
void polish_pair(Ensemble& ens, Eigen::Index a, Eigen::Index b) {
  const double base = ens.pair_value(a, b);
  constexpr int kGrid = 8;
  double best = base, best_angle = 0.0, best_phase = 0.0;
  for (int i = 0; i < kGrid; ++i)
    for (int k = 0; k < kGrid; ++k) {
      const double angle = M_PI * i / kGrid;
      const double phase = 2.0 * M_PI * k / kGrid;
      const double value = rotated_pair_value(ens, a, b, angle, phase);
      if (value < best) {
        best = value;
        best_angle = angle;
        best_phase = phase;
      }
    }
  double step_a = M_PI / kGrid, step_p = 2.0 * M_PI / kGrid;
  for (int round = 0; round < 14; ++round) {
    bool moved = false;
    const std::pair<double, double> moves[] = {
        {step_a, 0.0}, {-step_a, 0.0}, {0.0, step_p}, {0.0, -step_p}};
    for (const auto& [da, dp] : moves) {
      const double value = rotated_pair_value(ens, a, b, best_angle + da, best_phase + dp);
      if (value < best) {
        best = value;
        best_angle += da;
        best_phase += dp;
        moved = true;
      }
    }
    if (!moved) {
      step_a *= 0.5;
      step_p *= 0.5;
    }
  }
  if (best < base) rotate_pair(ens, a, b, best_angle, best_phase);
}

struct RestartResult {
  double value = 0.0;
  Matrix members;
  bool converged = false;
};

RestartResult run_restart(const Matrix& weighted_eigvecs, const SystemShape& shape,
                          int ensemble_size, const RoofOptions& options,
                          std::uint64_t seed) {
  const int rank = static_cast<int>(weighted_eigvecs.cols());
  Rng rng(seed);
  Matrix g(ensemble_size, rank);
  for (int j = 0; j < rank; ++j)
    for (int i = 0; i < ensemble_size; ++i) g(i, j) = rng.complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix isometry =
      Matrix(qr.householderQ()).leftCols(rank);  // m x r, columns orthonormal

  Ensemble ens{weighted_eigvecs * isometry.transpose(), shape};
  RestartResult result;
  result.value = ens.total_value();
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    for (Eigen::Index a = 0; a < ens.members.cols(); ++a)
      for (Eigen::Index b = a + 1; b < ens.members.cols(); ++b) polish_pair(ens, a, b);
    const double value = ens.total_value();
    if (result.value - value < options.tolerance) {
      result.value = std::min(result.value, value);
      result.converged = true;
      break;
    }
    result.value = value;
  }
  result.members = std::move(ens.members);
  return result;
}

}  // namespace

RoofEstimate convex_roof_upper(const MixedState& rho, const RoofOptions& options) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(rho.density);
  std::vector<std::pair<double, Eigen::Index>> spectrum;
  for (Eigen::Index i = 0; i < eig.eigenvalues().size(); ++i)
    if (eig.eigenvalues()[i] > kRankEps) spectrum.push_back({eig.eigenvalues()[i], i});
  std::sort(spectrum.begin(), spectrum.end(), std::greater<>());
  const int rank = static_cast<int>(spectrum.size());
  if (rank == 0) throw ValidationError("density matrix has no support");

  const int ensemble_size = (options.ensemble_size > 0) ? options.ensemble_size : 2 * rank;
  if (ensemble_size < rank)
    throw ValidationError("ensemble size " + std::to_string(ensemble_size) +
                          " is below the state rank " + std::to_string(rank));
  if (options.restarts < 1) throw ValidationError("need at least one restart");

  Matrix weighted(rho.density.rows(), rank);
  for (int k = 0; k < rank; ++k)
    weighted.col(k) = std::sqrt(spectrum[k].first) * eig.eigenvectors().col(spectrum[k].second);

  std::vector<std::future<RestartResult>> futures;
  futures.reserve(options.restarts);
  for (int r = 0; r < options.restarts; ++r)
    futures.push_back(std::async(std::launch::async, run_restart, weighted, rho.shape,
                                 ensemble_size, options, split_seed(options.seed, 1000 + r)));

  RestartResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (auto& f : futures) {
    RestartResult candidate = f.get();
    if (candidate.value < best.value) best = std::move(candidate);  // first minimum wins ties
  }

  RoofEstimate estimate;
  estimate.restarts_used = options.restarts;
  estimate.converged = best.converged;
  double value = 0.0;
  for (Eigen::Index j = 0; j < best.members.cols(); ++j) {
    const double weight = best.members.col(j).squaredNorm();
    if (weight < 1e-12) continue;
    const Vector state = best.members.col(j) / std::sqrt(weight);
    value += weight * concurrence_of_vector(state, rho.shape, EvalMethod::purity);
    estimate.decomposition.weights.push_back(weight);
    estimate.decomposition.states.push_back(PureState::unchecked(rho.shape, state));
  }
  estimate.value = value;
  return estimate;
}

}  // namespace qconc
