#pragma once

#include "qconc/types.hpp"

namespace qconc {

// Vectors over the M-fold tensor power of C^N are stored with site 0 as the
// slowest-varying index: flat = sum_s digit[s] * N^(M-1-s).

enum class Parity { symmetric, antisymmetric };

/// Relabels tensor factors: the content of slot s moves to slot perm(s).
/// Norm-preserving; O(dim) index remap, no matrix is ever formed.
Vector apply_site_permutation(const Vector& v, int num_sites, int local_dim,
                              const SitePermutation& perm);

/// Exchanges first-copy slot s with second-copy slot L+s for every s in the
/// mask. Input lives on the 2L-fold tensor power.
Vector apply_copy_swap(const Vector& v, int num_pairs, int local_dim, SubsetMask mask);

/// (v + swap_{s,s'} v) / 2 on the 2L-fold power; projector onto the subspace
/// symmetric under exchanging slot s with its second-copy partner.
Vector apply_pairwise_symmetrizer(const Vector& v, int num_pairs, int local_dim, int site);

/// Composition of all L pairwise symmetrizers, expanded as the average of the
/// 2^L copy-swaps over subset masks.
Vector apply_product_symmetrizer(const Vector& v, int num_pairs, int local_dim);

/// Same operator, evaluated by composing the pairwise symmetrizers one site
/// at a time. Kept as an independent route; cross-checked against the subset
/// expansion in tests.
Vector apply_product_symmetrizer_pairwise(const Vector& v, int num_pairs, int local_dim);

/// Group average (1/k!) sum_sigma sgn(sigma)^parity P_sigma over permutations
/// of the masked sites; the (anti)symmetrizer on those slots.
Vector apply_total_symmetrizer(const Vector& v, int num_sites, int local_dim,
                               SubsetMask sites, Parity parity);

/// Reduced density matrix over the kept sites (in their original order).
Matrix partial_trace(const Matrix& rho, int num_sites, int local_dim, SubsetMask keep);

/// tr(rho^2) without forming rho^2.
double purity(const Matrix& rho);

/// tr(rho_S^2) of the marginal of the pure state psi on subset S, computed
/// from the reshaped amplitude matrix; never builds the full projector.
/// Empty and full subsets both return ||psi||^4.
double state_marginal_purity(const Vector& psi, int num_sites, int local_dim,
                             SubsetMask subset);

/// Applies an N x N single-site operator to one slot.
Vector apply_single_site(const Vector& v, int num_sites, int local_dim, int site,
                         const Matrix& op);

}  // namespace qconc
