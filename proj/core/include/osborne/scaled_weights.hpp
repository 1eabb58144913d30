#pragma once

#include <cstdint>
#include <vector>

#include "osborne/sparse_matrix.hpp"

namespace osborne {

// Outcome of one balancing step.
struct BalanceOutcome {
  int index = -1;
  double drop = 0.0;            // f before - f after, measured from arc deltas
  double predicted_drop = 0.0;  // (sqrt(c_i) - sqrt(r_i))^2 at selection time
  double f_after = 0.0;
  bool refreshed = false;       // a from-scratch rebuild ran after the step
};

// Scaled arc weights b_ij = a_ij e^{x_i - x_j} with per-node row/column
// norms and the running total, updated incrementally in O(degree) per
// balancing step. State is rebuilt from scratch every n^2 steps or when the
// accumulated rounding estimate exceeds 1e-10 of the total, whichever comes
// first. Non-owning view of the matrix; exactly one run owns an instance.
class ScaledWeights {
 public:
  explicit ScaledWeights(const SparseMatrix& A);
  ScaledWeights(const SparseMatrix& A, ScalingVector x);
  // The matrix must outlive this object.
  explicit ScaledWeights(SparseMatrix&&) = delete;
  ScaledWeights(SparseMatrix&&, ScalingVector) = delete;

  const SparseMatrix& matrix() const { return *matrix_; }
  const ScalingVector& scaling() const { return x_; }

  double arc_weight(int arc_id) const { return weights_[arc_id]; }
  double row_norm(int i) const { return row_norm_[i]; }
  double col_norm(int i) const { return col_norm_[i]; }
  double node_weight(int i) const { return row_norm_[i] + col_norm_[i]; }
  double total() const { return total_; }

  // x_i += (ln c_i - ln r_i) / 2, equalizing the row and column norms at i.
  // Throws StructuralError when r_i or c_i is not positive.
  BalanceOutcome balance_index(int i);

  // From-scratch recompute of weights, norms and total from (A, x).
  void refresh();
  std::int64_t steps_since_refresh() const { return steps_since_refresh_; }

 private:
  const SparseMatrix* matrix_;
  ScalingVector x_;
  std::vector<double> weights_;
  std::vector<double> row_norm_, col_norm_;
  double total_ = 0.0;
  std::int64_t steps_since_refresh_ = 0;
  double drift_bound_ = 0.0;
};

}  // namespace osborne
