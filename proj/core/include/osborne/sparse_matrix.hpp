#pragma once

#include <span>
#include <vector>

namespace osborne {

struct Arc {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// Off-diagonal nonnegative matrix stored as a weighted directed graph.
// Arcs are sorted by (from, to); per-row and per-column adjacency gives
// O(degree) access to everything incident to one node. Immutable after
// construction.
class SparseMatrix {
 public:
  SparseMatrix() = default;

  // Validates: indices in range, no diagonal entries, positive weights,
  // no duplicate (from, to) keys.
  SparseMatrix(int n, std::vector<Arc> arcs);

  int size() const { return n_; }
  int arc_count() const { return static_cast<int>(arcs_.size()); }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const Arc& arc(int id) const { return arcs_[id]; }

  // Arc ids leaving / entering node i.
  std::span<const int> out_arcs(int i) const {
    return {out_ids_.data() + out_start_[i],
            out_ids_.data() + out_start_[i + 1]};
  }
  std::span<const int> in_arcs(int i) const {
    return {in_ids_.data() + in_start_[i], in_ids_.data() + in_start_[i + 1]};
  }
  int out_degree(int i) const { return out_start_[i + 1] - out_start_[i]; }
  int in_degree(int i) const { return in_start_[i + 1] - in_start_[i]; }

  // a_min: smallest stored entry (0 for an empty arc set).
  double min_entry() const { return min_entry_; }
  // S: sum of all entries.
  double total() const { return total_; }
  // w = S / a_min. Throws StructuralError on an empty arc set.
  double dynamic_range() const;

 private:
  int n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<int> out_start_, out_ids_;
  std::vector<int> in_start_, in_ids_;
  double min_entry_ = 0.0;
  double total_ = 0.0;
};

// Log-domain scaling exponents: entry (i, j) is scaled by e^{x_i - x_j}.
using ScalingVector = std::vector<double>;

}  // namespace osborne
