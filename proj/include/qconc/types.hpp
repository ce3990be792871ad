#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qconc {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

// Error taxonomy shared with the CLI exit-code contract:
//   ValidationError -> 2, KindError -> 3, CapError -> 4, IntegrityError -> 5.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct KindError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ParticleKind { distinguishable, boson, fermion };

std::string to_string(ParticleKind kind);
ParticleKind particle_kind_from_string(const std::string& name);

/// local_dim^exponent as a 64-bit integer, throwing rather than overflowing.
std::int64_t checked_pow(std::int64_t base, int exponent);

std::int64_t binomial(int n, int k);

/// Particle kind, particle count and single-particle dimension of a system.
/// All tensor-index arithmetic derives from this triple.
struct SystemShape {
  ParticleKind kind = ParticleKind::distinguishable;
  int num_particles = 0;  // sites in the tensor product
  int local_dim = 0;      // dimension of each single-particle space

  std::int64_t full_dim() const { return checked_pow(local_dim, num_particles); }
  std::int64_t two_copy_dim() const { return checked_pow(local_dim, 2 * num_particles); }

  /// Dimension of the physical subspace: full for distinguishable particles,
  /// Sym^L for bosons, Wedge^L for fermions.
  std::int64_t subspace_dim() const;

  /// Throws ValidationError on nonsense (L < 1, N < 1, fermion with N < L).
  void validate() const;

  bool operator==(const SystemShape&) const = default;
};

/// Bijection on tensor slots {0..M-1}; image()[s] is where slot s goes.
class SitePermutation {
 public:
  explicit SitePermutation(std::vector<int> image);

  static SitePermutation identity(int num_sites);
  static SitePermutation transposition(int num_sites, int a, int b);

  int size() const { return static_cast<int>(image_.size()); }
  int operator()(int site) const { return image_[site]; }
  const std::vector<int>& image() const { return image_; }

  SitePermutation inverse() const;
  SitePermutation compose_after(const SitePermutation& first) const;
  int sign() const;

 private:
  std::vector<int> image_;
};

// Subsets of sites are bitmasks; bit s set means site s is in the subset.
using SubsetMask = std::uint32_t;

std::vector<int> mask_sites(SubsetMask mask, int num_sites);
int mask_count(SubsetMask mask);

}  // namespace qconc
