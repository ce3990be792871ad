#include "qconc/tensor_ops.hpp"

#include <algorithm>
#include <numeric>

namespace qconc {

namespace {

std::vector<std::int64_t> site_strides(int num_sites, int local_dim) {
  std::vector<std::int64_t> stride(num_sites);
  std::int64_t acc = 1;
  for (int s = num_sites - 1; s >= 0; --s) {
    stride[s] = acc;
    acc *= local_dim;
  }
  return stride;
}

void check_dim(const Vector& v, int num_sites, int local_dim) {
  if (v.size() != checked_pow(local_dim, num_sites))
    throw ValidationError("vector length does not match the declared site count");
}

// Gathers out[flat(i)] = v[sum_t i_t * read_stride[t]] by walking the
// multi-index as an odometer; read offset is maintained incrementally.
Vector gather_with_strides(const Vector& v, int num_sites, int local_dim,
                           const std::vector<std::int64_t>& read_stride) {
  const std::int64_t dim = v.size();
  Vector out(dim);
  std::vector<int> digit(num_sites, 0);
  std::int64_t read = 0;
  for (std::int64_t flat = 0;;) {
    out[flat] = v[read];
    if (++flat == dim) break;
    for (int s = num_sites - 1;; --s) {
      if (++digit[s] < local_dim) {
        read += read_stride[s];
        break;
      }
      digit[s] = 0;
      read -= read_stride[s] * (local_dim - 1);
    }
  }
  return out;
}

}  // namespace

Vector apply_site_permutation(const Vector& v, int num_sites, int local_dim,
                              const SitePermutation& perm) {
  if (perm.size() != num_sites)
    throw ValidationError("permutation size does not match site count");
  check_dim(v, num_sites, local_dim);
  const auto stride = site_strides(num_sites, local_dim);
  const SitePermutation inv = perm.inverse();
  std::vector<std::int64_t> read_stride(num_sites);
  for (int t = 0; t < num_sites; ++t) read_stride[t] = stride[inv(t)];
  return gather_with_strides(v, num_sites, local_dim, read_stride);
}

Vector apply_copy_swap(const Vector& v, int num_pairs, int local_dim, SubsetMask mask) {
  const int num_sites = 2 * num_pairs;
  check_dim(v, num_sites, local_dim);
  if (mask >> num_pairs) throw ValidationError("copy-swap mask exceeds site range");
  const auto stride = site_strides(num_sites, local_dim);
  std::vector<std::int64_t> read_stride(stride);
  for (int s = 0; s < num_pairs; ++s) {
    if (mask & (SubsetMask{1} << s)) std::swap(read_stride[s], read_stride[s + num_pairs]);
  }
  return gather_with_strides(v, num_sites, local_dim, read_stride);
}

Vector apply_pairwise_symmetrizer(const Vector& v, int num_pairs, int local_dim, int site) {
  if (site < 0 || site >= num_pairs) throw ValidationError("symmetrizer site out of range");
  return 0.5 * (v + apply_copy_swap(v, num_pairs, local_dim, SubsetMask{1} << site));
}

Vector apply_product_symmetrizer(const Vector& v, int num_pairs, int local_dim) {
  check_dim(v, 2 * num_pairs, local_dim);
  const SubsetMask total = SubsetMask{1} << num_pairs;
  Vector acc = Vector::Zero(v.size());
  for (SubsetMask mask = 0; mask < total; ++mask)
    acc += apply_copy_swap(v, num_pairs, local_dim, mask);
  return acc / static_cast<double>(total);
}

Vector apply_product_symmetrizer_pairwise(const Vector& v, int num_pairs, int local_dim) {
  Vector w = v;
  for (int s = 0; s < num_pairs; ++s)
    w = apply_pairwise_symmetrizer(w, num_pairs, local_dim, s);
  return w;
}

Vector apply_total_symmetrizer(const Vector& v, int num_sites, int local_dim,
                               SubsetMask sites, Parity parity) {
  check_dim(v, num_sites, local_dim);
  const std::vector<int> members = mask_sites(sites, num_sites);
  const int k = static_cast<int>(members.size());
  if (k == 0) return v;

  std::vector<int> arrangement(k);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  Vector acc = Vector::Zero(v.size());
  std::int64_t count = 0;
  do {
    std::vector<int> image(num_sites);
    std::iota(image.begin(), image.end(), 0);
    for (int j = 0; j < k; ++j) image[members[j]] = members[arrangement[j]];
    const SitePermutation perm{image};
    const double weight =
        (parity == Parity::antisymmetric) ? static_cast<double>(perm.sign()) : 1.0;
    acc += weight * apply_site_permutation(v, num_sites, local_dim, perm);
    ++count;
  } while (std::next_permutation(arrangement.begin(), arrangement.end()));
  return acc / static_cast<double>(count);
}

Matrix partial_trace(const Matrix& rho, int num_sites, int local_dim, SubsetMask keep) {
  const std::int64_t dim = checked_pow(local_dim, num_sites);
  if (rho.rows() != dim || rho.cols() != dim)
    throw ValidationError("density matrix does not match the declared site count");
  if (keep == 0) throw ValidationError("partial trace must keep at least one site");
  const SubsetMask full = (num_sites >= 32) ? ~SubsetMask{0} : ((SubsetMask{1} << num_sites) - 1);
  if (keep == full) return rho;

  const auto stride = site_strides(num_sites, local_dim);
  const std::vector<int> kept = mask_sites(keep, num_sites);
  std::vector<int> traced;
  for (int s = 0; s < num_sites; ++s)
    if (!(keep & (SubsetMask{1} << s))) traced.push_back(s);

  const auto embed_offsets = [&](const std::vector<int>& group) {
    const std::int64_t group_dim =
        checked_pow(local_dim, static_cast<int>(group.size()));
    std::vector<std::int64_t> offsets(group_dim, 0);
    for (std::int64_t idx = 0; idx < group_dim; ++idx) {
      std::int64_t rest = idx;
      for (int j = static_cast<int>(group.size()) - 1; j >= 0; --j) {
        offsets[idx] += (rest % local_dim) * stride[group[j]];
        rest /= local_dim;
      }
    }
    return offsets;
  };
  const auto kept_off = embed_offsets(kept);
  const auto traced_off = embed_offsets(traced);

  const std::int64_t kept_dim = static_cast<std::int64_t>(kept_off.size());
  Matrix out = Matrix::Zero(kept_dim, kept_dim);
  for (std::int64_t a = 0; a < kept_dim; ++a)
    for (std::int64_t b = 0; b < kept_dim; ++b) {
      Complex sum = 0.0;
      for (const std::int64_t c : traced_off) sum += rho(kept_off[a] + c, kept_off[b] + c);
      out(a, b) = sum;
    }
  return out;
}

double purity(const Matrix& rho) {
  if (rho.rows() != rho.cols()) throw ValidationError("purity of a non-square matrix");
  return rho.cwiseProduct(rho.transpose()).sum().real();
}

double state_marginal_purity(const Vector& psi, int num_sites, int local_dim,
                             SubsetMask subset) {
  check_dim(psi, num_sites, local_dim);
  if (subset >> num_sites) throw ValidationError("subset mask exceeds site range");
  const int k = mask_count(subset);
  if (k == 0 || k == num_sites) {
    const double n2 = psi.squaredNorm();
    return n2 * n2;
  }

  const std::int64_t rows = checked_pow(local_dim, k);
  const std::int64_t cols = checked_pow(local_dim, num_sites - k);
  Matrix reshaped(rows, cols);
  // row index collects the subset digits, column index the rest
  std::vector<std::int64_t> row_stride(num_sites, 0), col_stride(num_sites, 0);
  std::int64_t r_acc = 1, c_acc = 1;
  for (int s = num_sites - 1; s >= 0; --s) {
    if (subset & (SubsetMask{1} << s)) {
      row_stride[s] = r_acc;
      r_acc *= local_dim;
    } else {
      col_stride[s] = c_acc;
      c_acc *= local_dim;
    }
  }
  std::vector<int> digit(num_sites, 0);
  std::int64_t r = 0, c = 0;
  for (std::int64_t flat = 0;;) {
    reshaped(r, c) = psi[flat];
    if (++flat == psi.size()) break;
    for (int s = num_sites - 1;; --s) {
      if (++digit[s] < local_dim) {
        r += row_stride[s];
        c += col_stride[s];
        break;
      }
      digit[s] = 0;
      r -= row_stride[s] * (local_dim - 1);
      c -= col_stride[s] * (local_dim - 1);
    }
  }
  // tr(rho_S^2) = ||M M^dag||_F^2; contract over the longer axis first
  const Matrix gram = (rows <= cols) ? Matrix(reshaped * reshaped.adjoint())
                                     : Matrix(reshaped.adjoint() * reshaped);
  return gram.squaredNorm();
}

Vector apply_single_site(const Vector& v, int num_sites, int local_dim, int site,
                         const Matrix& op) {
  check_dim(v, num_sites, local_dim);
  if (site < 0 || site >= num_sites) throw ValidationError("site index out of range");
  if (op.rows() != local_dim || op.cols() != local_dim)
    throw ValidationError("single-site operator dimension mismatch");
  const auto stride = site_strides(num_sites, local_dim);
  const std::int64_t s_stride = stride[site];
  const std::int64_t block = s_stride * local_dim;
  Vector out = Vector::Zero(v.size());
  for (std::int64_t base = 0; base < v.size(); base += block) {
    for (std::int64_t inner = 0; inner < s_stride; ++inner) {
      for (int a = 0; a < local_dim; ++a) {
        Complex sum = 0.0;
        for (int b = 0; b < local_dim; ++b) sum += op(a, b) * v[base + inner + b * s_stride];
        out[base + inner + a * s_stride] = sum;
      }
    }
  }
  return out;
}

}  // namespace qconc
