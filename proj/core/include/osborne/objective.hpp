#pragma once

#include <span>

#include "osborne/sparse_matrix.hpp"

namespace osborne {

// Sum of scaled entries, f(x) = sum_ij a_ij e^{x_i - x_j}, by fresh
// summation over the arc list. Throws OverflowError if the sum leaves the
// representable range.
double f_value(const SparseMatrix& A, const ScalingVector& x);

// Component i is the out-weight minus in-weight of node i in the scaled
// graph. Components sum to zero up to rounding.
ScalingVector gradient(const SparseMatrix& A, const ScalingVector& x);

// Objective restricted to arcs with at least one endpoint outside the set
// `frozen`. frozen = {} reduces to f_value; frozen = [n] gives 0.
double contracted_f(const SparseMatrix& A, const ScalingVector& x,
                    std::span<const int> frozen);

// L1 norm of the gradient of the contracted objective, taken over the
// contracted graph: the active nodes plus, when `frozen` is nonempty, one
// super-node holding the contracted set. Requires frozen != [n].
double contracted_gradient_norm(const SparseMatrix& A, const ScalingVector& x,
                                std::span<const int> frozen);

}  // namespace osborne
