#pragma once

#include <span>
#include <vector>

#include "osborne/dense_matrix.hpp"
#include "osborne/scaled_weights.hpp"
#include "osborne/sparse_matrix.hpp"

namespace osborne {

struct ImbalanceReport {
  std::vector<double> per_index;  // max{r_i,c_i}/min{r_i,c_i} - 1
  double max = 0.0;
  double weak = 0.0;      // sqrt(sum (c_i - r_i)^2) / f
  double grad_rel = 0.0;  // ||grad f||_1 / f
};

// Per-index ratios from the current norms of a live run.
ImbalanceReport imbalance_report(const ScaledWeights& weights);

// Same, from freshly recomputed norms. Throws StructuralError naming the
// first index with a zero row or column norm.
ImbalanceReport strict_imbalance(const SparseMatrix& A,
                                 const ScalingVector& x);

// tr(B^k) - tr(A^k) for k = 1..k_max, where B = D A D^{-1} for the scaling
// x. All must vanish up to rounding since B is similar to A. Dense powers;
// requires n <= 64 and k_max <= n.
std::vector<double> similarity_invariants(const DenseMatrix& raw,
                                          const ScalingVector& x, int k_max);

// Product of scaled arc weights along a directed cycle divided by the
// product of the original weights; the scaling factors telescope, so the
// ratio is 1 up to rounding. The cycle lists nodes in order; each
// consecutive pair (and last to first) must be an arc of A.
double cycle_product_check(const SparseMatrix& A, const ScalingVector& x,
                           std::span<const int> cycle);

}  // namespace osborne
