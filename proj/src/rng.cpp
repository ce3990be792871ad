#include "qconc/rng.hpp"

#include <cmath>

namespace qconc {

std::uint64_t split_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 step over seed ^ golden-ratio-scrambled stream index
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  // 53 uniform bits mapped to (0, 1]
  return (static_cast<double>(engine_() >> 11) + 1.0) * 0x1.0p-53;
}

double Rng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * M_PI * u2;
  spare_ = radius * std::sin(angle);
  have_spare_ = true;
  return radius * std::cos(angle);
}

Complex Rng::complex_gaussian() {
  const double scale = std::sqrt(0.5);
  return Complex(scale * gaussian(), scale * gaussian());
}

Vector Rng::gaussian_vector(std::int64_t dim) {
  Vector v(dim);
  for (std::int64_t i = 0; i < dim; ++i) v[i] = complex_gaussian();
  return v;
}

Vector Rng::haar_vector(std::int64_t dim) {
  Vector v = gaussian_vector(dim);
  const double norm = v.norm();
  if (norm == 0.0) return haar_vector(dim);  // measure-zero retry
  return v / norm;
}

Matrix Rng::haar_unitary(int dim) {
  Matrix g(dim, dim);
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) g(i, j) = complex_gaussian();
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a == 0.0) ? Complex(1.0) : d / a;
  }
  return q;
}

std::vector<double> Rng::dirichlet_flat(int count) {
  std::vector<double> w(count);
  double total = 0.0;
  for (double& x : w) {
    x = -std::log(uniform());
    total += x;
  }
  for (double& x : w) x /= total;
  return w;
}

}  // namespace qconc
