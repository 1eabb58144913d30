#pragma once

#include <cstdint>

#include "osborne/sparse_matrix.hpp"

namespace osborne {

struct OracleSolution {
  ScalingVector x;        // shifted so x[0] == 0
  double f = 0.0;         // objective at x
  double grad_norm = 0.0; // achieved ||grad f||_1
  std::int64_t iterations = 0;  // coordinate steps taken
};

// Ground-truth minimizer of f for small instances: exact coordinate
// balancing applied round-robin over a dense copy of the matrix, with every
// norm recomputed by full summation, until ||grad f||_1 <= tolerance * f.
// Deliberately shares no state or code path with the production iteration.
// Requires a strongly connected matrix with n <= 16. Throws
// ConvergenceError after 1e9 coordinate steps.
OracleSolution brute_minimize(const SparseMatrix& A, double tolerance,
                              const ScalingVector* start = nullptr);

}  // namespace osborne
