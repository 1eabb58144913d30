#pragma once

#include <stdexcept>
#include <vector>

namespace osborne {

// Row-major square matrix as read from input files; may carry signs and
// diagonal entries.
struct DenseMatrix {
  int n = 0;
  std::vector<double> values;  // n * n entries

  DenseMatrix() = default;
  explicit DenseMatrix(int dim) : n(dim), values(std::size_t(dim) * dim, 0.0) {
    if (dim < 0) throw std::invalid_argument("negative dimension");
  }

  double& at(int i, int j) { return values[std::size_t(i) * n + j]; }
  double at(int i, int j) const { return values[std::size_t(i) * n + j]; }
};

}  // namespace osborne
