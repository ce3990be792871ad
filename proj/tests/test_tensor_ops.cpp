#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "qconc/projectors.hpp"
#include "qconc/rng.hpp"
#include "qconc/tensor_ops.hpp"

using namespace qconc;

namespace {

Vector singlet() {
  Vector v = Vector::Zero(4);
  v[1] = 1.0 / std::sqrt(2.0);
  v[2] = -1.0 / std::sqrt(2.0);
  return v;
}

}  // namespace

TEST_CASE("site permutation basics") {
  Rng rng(11);
  const Vector v = rng.haar_vector(8);

  SUBCASE("identity is a no-op") {
    const Vector w = apply_site_permutation(v, 3, 2, SitePermutation::identity(3));
    CHECK((w - v).norm() == 0.0);
  }
  SUBCASE("a swap is an involution") {
    const auto swap01 = SitePermutation::transposition(3, 0, 1);
    const Vector w = apply_site_permutation(apply_site_permutation(v, 3, 2, swap01), 3, 2, swap01);
    CHECK((w - v).norm() < 1e-12);
  }
  SUBCASE("swap negates the singlet") {
    const Vector w = apply_site_permutation(singlet(), 2, 2, SitePermutation::transposition(2, 0, 1));
    CHECK((w + singlet()).norm() < 1e-14);
  }
  SUBCASE("norm preserved for random permutations") {
    Rng r(5);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<int> image{0, 1, 2, 3};
      for (int i = 3; i > 0; --i) std::swap(image[i], image[r.raw() % (i + 1)]);
      const Vector u = r.haar_vector(16);
      const Vector w = apply_site_permutation(u, 4, 2, SitePermutation(image));
      CHECK(std::abs(w.norm() - u.norm()) < 1e-12);
    }
  }
  SUBCASE("matches the dense permutation oracle") {
    const std::vector<int> image{2, 0, 1};
    const Vector w = apply_site_permutation(v, 3, 2, SitePermutation(image));
    const Vector expected = oracle::permutation_matrix(image, 2) * v;
    CHECK((w - expected).norm() < 1e-14);
  }
  SUBCASE("dimension mismatch is rejected") {
    CHECK_THROWS_AS(apply_site_permutation(v, 2, 2, SitePermutation::identity(2)),
                    ValidationError);
  }
}

TEST_CASE("permutation sign and composition") {
  CHECK(SitePermutation::identity(4).sign() == 1);
  CHECK(SitePermutation::transposition(4, 1, 3).sign() == -1);
  const auto a = SitePermutation::transposition(3, 0, 1);
  const auto b = SitePermutation::transposition(3, 1, 2);
  CHECK(b.compose_after(a).sign() == 1);
  CHECK_THROWS_AS(SitePermutation({0, 0, 1}), ValidationError);
}

TEST_CASE("copy swap") {
  Rng rng(3);
  const Vector psi = rng.haar_vector(4);
  const Vector phi = rng.haar_vector(4);
  const Vector both = oracle::kron(psi, phi);

  SUBCASE("empty mask is the identity") {
    CHECK((apply_copy_swap(both, 1, 4, 0) - both).norm() == 0.0);
  }
  SUBCASE("full mask exchanges the copies") {
    const Vector swapped = apply_copy_swap(both, 1, 4, 1);
    CHECK((swapped - oracle::kron(phi, psi)).norm() < 1e-14);
  }
  SUBCASE("single-site swap is an involution") {
    const Vector v = rng.haar_vector(16);
    const Vector w = apply_copy_swap(apply_copy_swap(v, 2, 2, 0b01), 2, 2, 0b01);
    CHECK((w - v).norm() < 1e-12);
  }
  SUBCASE("mask out of range is rejected") {
    CHECK_THROWS_AS(apply_copy_swap(both, 1, 4, 0b10), ValidationError);
  }
}

TEST_CASE("pairwise symmetrizer") {
  SUBCASE("fixed point") {
    Vector v = Vector::Zero(4);
    v[1] = v[2] = 1.0 / std::sqrt(2.0);
    CHECK((apply_pairwise_symmetrizer(v, 1, 2, 0) - v).norm() < 1e-15);
  }
  SUBCASE("kernel") {
    CHECK(apply_pairwise_symmetrizer(singlet(), 1, 2, 0).norm() < 1e-15);
  }
  SUBCASE("splits |01>") {
    Vector v = Vector::Zero(4);
    v[1] = 1.0;
    const Vector w = apply_pairwise_symmetrizer(v, 1, 2, 0);
    Vector expected = Vector::Zero(4);
    expected[1] = expected[2] = 0.5;
    CHECK((w - expected).norm() < 1e-15);
  }
}

TEST_CASE("product symmetrizer") {
  SUBCASE("kills the singlet at one pair") {
    CHECK(apply_product_symmetrizer(singlet(), 1, 2).norm() < 1e-15);
  }
  SUBCASE("fixes |00>") {
    Vector v = Vector::Zero(4);
    v[0] = 1.0;
    CHECK((apply_product_symmetrizer(v, 1, 2) - v).norm() < 1e-15);
  }
  SUBCASE("Bell x Bell expectation against the dense oracle") {
    const Vector v = oracle::kron(oracle::bell(), oracle::bell());
    const Vector pv = apply_product_symmetrizer(v, 2, 2);
    const double expectation = v.dot(pv).real();
    CHECK(expectation == doctest::Approx(0.75).epsilon(1e-12));
    const double dense = v.dot(oracle::product_symmetrizer(2, 2) * v).real();
    CHECK(std::abs(expectation - dense) < 1e-12);
  }
  SUBCASE("idempotent and Hermitian on random input") {
    Rng rng(17);
    const Vector u = rng.haar_vector(16);
    const Vector v = rng.haar_vector(16);
    const Vector pu = apply_product_symmetrizer(u, 2, 2);
    const Vector pv = apply_product_symmetrizer(v, 2, 2);
    CHECK((apply_product_symmetrizer(pv, 2, 2) - pv).norm() < 1e-10);
    CHECK(std::abs(u.dot(pv) - pu.dot(v)) < 1e-10);
  }
  SUBCASE("subset expansion equals the pairwise composition") {
    Rng rng(29);
    for (const auto& [pairs, dim] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
      const Vector v = rng.haar_vector(checked_pow(dim, 2 * pairs));
      const Vector a = apply_product_symmetrizer(v, pairs, dim);
      const Vector b = apply_product_symmetrizer_pairwise(v, pairs, dim);
      CHECK((a - b).norm() < 1e-12);
    }
  }
}

TEST_CASE("total symmetrizer") {
  SUBCASE("symmetric vector unchanged") {
    Vector v = Vector::Zero(4);
    v[1] = v[2] = 1.0 / std::sqrt(2.0);
    CHECK((apply_total_symmetrizer(v, 2, 2, 0b11, Parity::symmetric) - v).norm() < 1e-15);
  }
  SUBCASE("antisymmetrizer kills repeated indices") {
    Vector v = Vector::Zero(4);
    v[0] = 1.0;
    CHECK(apply_total_symmetrizer(v, 2, 2, 0b11, Parity::antisymmetric).norm() < 1e-15);
  }
  SUBCASE("antisymmetrizer halves |01>") {
    Vector v = Vector::Zero(4);
    v[1] = 1.0;
    Vector expected = Vector::Zero(4);
    expected[1] = 0.5;
    expected[2] = -0.5;
    const Vector w = apply_total_symmetrizer(v, 2, 2, 0b11, Parity::antisymmetric);
    CHECK((w - expected).norm() < 1e-15);
  }
}

TEST_CASE("partial trace") {
  SUBCASE("product state reduces to its factor") {
    Rng rng(7);
    const Vector a = rng.haar_vector(2);
    const Vector b = rng.haar_vector(2);
    const Matrix rho = oracle::kron(a, b) * oracle::kron(a, b).adjoint();
    const Matrix reduced = partial_trace(rho, 2, 2, 0b01);
    CHECK((reduced - a * a.adjoint()).norm() < 1e-12);
  }
  SUBCASE("Bell marginal is maximally mixed") {
    const Matrix rho = oracle::bell() * oracle::bell().adjoint();
    const Matrix reduced = partial_trace(rho, 2, 2, 0b01);
    CHECK((reduced - 0.5 * Matrix::Identity(2, 2)).norm() < 1e-12);
  }
  SUBCASE("GHZ two-site marginal against the contraction oracle") {
    const Matrix rho = oracle::ghz() * oracle::ghz().adjoint();
    const Matrix reduced = partial_trace(rho, 3, 2, 0b011);
    const Matrix expected = oracle::partial_trace_direct(rho, 3, 2, {0, 1});
    CHECK((reduced - expected).norm() < 1e-13);
    Matrix diag = Matrix::Zero(4, 4);
    diag(0, 0) = diag(3, 3) = 0.5;
    CHECK((reduced - diag).norm() < 1e-13);
  }
  SUBCASE("tracing in stages matches tracing at once") {
    Rng rng(13);
    Matrix rho = Matrix::Zero(8, 8);
    for (int k = 0; k < 3; ++k) {
      const Vector v = rng.haar_vector(8);
      rho += (1.0 / 3.0) * v * v.adjoint();
    }
    const Matrix once = partial_trace(rho, 3, 2, 0b001);
    const Matrix stage = partial_trace(partial_trace(rho, 3, 2, 0b011), 2, 2, 0b01);
    CHECK((once - stage).norm() < 1e-12);
  }
  SUBCASE("noncontiguous keep mask against the contraction oracle") {
    Rng rng(47);
    const Vector v = rng.haar_vector(27);
    const Matrix rho = v * v.adjoint();
    const Matrix reduced = partial_trace(rho, 3, 3, 0b101);
    const Matrix expected = oracle::partial_trace_direct(rho, 3, 3, {0, 2});
    CHECK((reduced - expected).norm() < 1e-13);
  }
  SUBCASE("trace and Hermiticity preserved, spectrum nonnegative") {
    Rng rng(19);
    Matrix rho = Matrix::Zero(8, 8);
    for (int k = 0; k < 4; ++k) {
      const Vector v = rng.haar_vector(8);
      rho += 0.25 * v * v.adjoint();
    }
    const Matrix reduced = partial_trace(rho, 3, 2, 0b101);
    CHECK(std::abs(reduced.trace().real() - 1.0) < 1e-12);
    CHECK((reduced - reduced.adjoint()).norm() < 1e-12);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(reduced, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() > -1e-10);
  }
  SUBCASE("empty keep mask is rejected, full mask returns rho") {
    const Matrix rho = oracle::bell() * oracle::bell().adjoint();
    CHECK_THROWS_AS(partial_trace(rho, 2, 2, 0), ValidationError);
    CHECK((partial_trace(rho, 2, 2, 0b11) - rho).norm() == 0.0);
  }
}

TEST_CASE("purity") {
  SUBCASE("pure projector") {
    const Matrix rho = oracle::bell() * oracle::bell().adjoint();
    CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("maximally mixed") {
    CHECK(purity(0.25 * Matrix::Identity(4, 4)) == doctest::Approx(0.25).epsilon(1e-12));
  }
  SUBCASE("Werner p=0.8 equals the closed form and the dense square") {
    const Matrix rho = oracle::werner(0.8);
    const double p = 0.8;
    const double closed = p * p + p * (1 - p) / 2.0 + (1 - p) * (1 - p) / 4.0;
    CHECK(closed == doctest::Approx(0.73).epsilon(1e-12));
    CHECK(purity(rho) == doctest::Approx(closed).epsilon(1e-12));
    CHECK(purity(rho) == doctest::Approx((rho * rho).trace().real()).epsilon(1e-12));
  }
}

TEST_CASE("swap-trace identity") {
  // tr((rho ox rho) swap_S) = tr(rho_S^2), dense check at L=2, N=2
  Rng rng(23);
  Matrix rho = Matrix::Zero(4, 4);
  for (int k = 0; k < 3; ++k) {
    const Vector v = rng.haar_vector(4);
    rho += (1.0 / 3.0) * v * v.adjoint();
  }
  for (unsigned mask = 0; mask < 4; ++mask) {
    const double dense = oracle::two_copy_trace(oracle::copy_swap_matrix(2, 2, mask), rho);
    double expected = 1.0;  // empty subset: (tr rho)^2
    if (mask == 0b11)
      expected = purity(rho);
    else if (mask != 0)
      expected = purity(partial_trace(rho, 2, 2, mask));
    CHECK(std::abs(dense - expected) < 1e-10);
  }
}

TEST_CASE("marginal purity from amplitudes matches the density route") {
  Rng rng(31);
  for (const auto& [sites, dim] : {std::pair{2, 4}, {3, 2}, {2, 3}}) {
    const Vector v = rng.haar_vector(checked_pow(dim, sites));
    const Matrix rho = v * v.adjoint();
    for (SubsetMask mask = 1; mask + 1 < (SubsetMask{1} << sites); ++mask) {
      const double direct = state_marginal_purity(v, sites, dim, mask);
      const double via_density = purity(partial_trace(rho, sites, dim, mask));
      CHECK(std::abs(direct - via_density) < 1e-12);
    }
  }
}

TEST_CASE("dense materialization") {
  SUBCASE("product symmetrizer at one pair of qubits has eigenvalues 1,1,1,0") {
    const Matrix m = materialize_dense(
        ProjectorSpec::make(ProjectorTag::pd, {ParticleKind::distinguishable, 1, 2}));
    Eigen::SelfAdjointEigenSolver<Matrix> eig(m, Eigen::EigenvaluesOnly);
    CHECK(std::abs(eig.eigenvalues()[0]) < 1e-12);
    for (int i = 1; i < 4; ++i) CHECK(eig.eigenvalues()[i] == doctest::Approx(1.0));
  }
  SUBCASE("copy antisymmetrizer at one pair of qubits is the singlet projector") {
    const Matrix m = materialize_dense(
        ProjectorSpec::make(ProjectorTag::pminus, {ParticleKind::distinguishable, 1, 2}));
    Vector s = Vector::Zero(4);
    s[1] = 1.0 / std::sqrt(2.0);
    s[2] = -1.0 / std::sqrt(2.0);
    CHECK((m - s * s.adjoint()).norm() < 1e-13);
  }
  SUBCASE("fermionic operator at (2,4) is idempotent") {
    const Matrix m =
        materialize_dense(ProjectorSpec::make(ProjectorTag::pf, {ParticleKind::fermion, 2, 4}));
    CHECK((m * m - m).norm() < 1e-10);
  }
  SUBCASE("matrix-free application agrees with the dense matrix") {
    const auto spec = ProjectorSpec::make(ProjectorTag::pb, {ParticleKind::boson, 2, 2});
    const Matrix m = materialize_dense(spec);
    Rng rng(37);
    const Vector v = rng.haar_vector(16);
    CHECK((m * v - apply_projector(spec, v)).norm() < 1e-12);
  }
  SUBCASE("cap refusal names the required cap") {
    const auto spec = ProjectorSpec::make(ProjectorTag::pd, {ParticleKind::distinguishable, 2, 3});
    CHECK_THROWS_WITH_AS(materialize_dense(spec, 16),
                         doctest::Contains("raise the cap to at least 81"), CapError);
  }
}
