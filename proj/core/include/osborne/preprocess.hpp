#pragma once

#include <vector>

#include "osborne/dense_matrix.hpp"
#include "osborne/sparse_matrix.hpp"

namespace osborne {

// Canonical form of a raw input: |a_ij|^p off the diagonal, diagonal
// dropped. Balancing the canonical matrix in the L1 norm balances the raw
// matrix in the L_p norm.
struct CanonicalInstance {
  SparseMatrix matrix;
  double p = 1.0;
  int negatives_stripped = 0;
  int diagonal_dropped = 0;

  bool nothing_to_balance() const { return matrix.arc_count() == 0; }
};

// Requires n >= 1 and p >= 1.
CanonicalInstance canonicalize(const DenseMatrix& raw, double p);

struct SccComponent {
  std::vector<int> nodes;  // original indices, increasing
  SparseMatrix submatrix;  // induced, over local indices 0..nodes.size()-1
};

struct SccDecomposition {
  std::vector<int> component_of;       // node -> component id
  std::vector<SccComponent> components;  // numbered in topological order
  std::vector<Arc> cross_arcs;         // arcs between distinct components

  bool strongly_connected() const { return components.size() == 1; }
};

// Components are numbered so every cross arc goes from a lower id to a
// higher id; numbering is deterministic for a given arc set.
SccDecomposition scc_decompose(const SparseMatrix& A);

// Maps a solution of the canonical L1 problem back to the raw L_p problem:
// the L_p scaling is x / p. Requires p > 0.
ScalingVector uncanonicalize_scaling(const ScalingVector& x, double p);

}  // namespace osborne
