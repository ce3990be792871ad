#include "qconc/types.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace qconc {

std::string to_string(ParticleKind kind) {
  switch (kind) {
    case ParticleKind::distinguishable: return "distinguishable";
    case ParticleKind::boson: return "boson";
    case ParticleKind::fermion: return "fermion";
  }
  throw ValidationError("unknown particle kind");
}

ParticleKind particle_kind_from_string(const std::string& name) {
  if (name == "distinguishable") return ParticleKind::distinguishable;
  if (name == "boson") return ParticleKind::boson;
  if (name == "fermion") return ParticleKind::fermion;
  throw ValidationError("unknown particle kind '" + name + "'");
}

std::int64_t checked_pow(std::int64_t base, int exponent) {
  if (base < 1 || exponent < 0) throw ValidationError("checked_pow: bad arguments");
  std::int64_t result = 1;
  for (int i = 0; i < exponent; ++i) {
    if (result > std::numeric_limits<std::int64_t>::max() / base)
      throw ValidationError("checked_pow: dimension overflows 64-bit range");
    result *= base;
  }
  return result;
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

std::int64_t SystemShape::subspace_dim() const {
  switch (kind) {
    case ParticleKind::distinguishable: return full_dim();
    case ParticleKind::boson: return binomial(local_dim + num_particles - 1, num_particles);
    case ParticleKind::fermion: return binomial(local_dim, num_particles);
  }
  throw ValidationError("unknown particle kind");
}

void SystemShape::validate() const {
  if (num_particles < 1) throw ValidationError("particle count must be positive");
  if (local_dim < 1) throw ValidationError("single-particle dimension must be positive");
  if (kind == ParticleKind::fermion && local_dim < num_particles)
    throw ValidationError("fermionic system requires single-particle dimension >= particle count");
}

SitePermutation::SitePermutation(std::vector<int> image) : image_(std::move(image)) {
  const int n = static_cast<int>(image_.size());
  std::vector<bool> seen(n, false);
  for (int target : image_) {
    if (target < 0 || target >= n || seen[target])
      throw ValidationError("site permutation is not a bijection");
    seen[target] = true;
  }
}

SitePermutation SitePermutation::identity(int num_sites) {
  std::vector<int> image(num_sites);
  for (int s = 0; s < num_sites; ++s) image[s] = s;
  return SitePermutation(std::move(image));
}

SitePermutation SitePermutation::transposition(int num_sites, int a, int b) {
  auto perm = identity(num_sites);
  std::swap(perm.image_[a], perm.image_[b]);
  return perm;
}

SitePermutation SitePermutation::inverse() const {
  std::vector<int> image(image_.size());
  for (int s = 0; s < size(); ++s) image[image_[s]] = s;
  return SitePermutation(std::move(image));
}

SitePermutation SitePermutation::compose_after(const SitePermutation& first) const {
  if (first.size() != size()) throw ValidationError("permutation size mismatch");
  std::vector<int> image(image_.size());
  for (int s = 0; s < size(); ++s) image[s] = image_[first(s)];
  return SitePermutation(std::move(image));
}

int SitePermutation::sign() const {
  int inversions = 0;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (image_[i] > image_[j]) ++inversions;
  return (inversions % 2 == 0) ? 1 : -1;
}

std::vector<int> mask_sites(SubsetMask mask, int num_sites) {
  std::vector<int> sites;
  for (int s = 0; s < num_sites; ++s)
    if (mask & (SubsetMask{1} << s)) sites.push_back(s);
  if (mask >> num_sites) throw ValidationError("subset mask exceeds site range");
  return sites;
}

int mask_count(SubsetMask mask) { return std::popcount(mask); }

}  // namespace qconc
