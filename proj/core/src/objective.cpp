#include "osborne/objective.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "osborne/errors.hpp"

namespace osborne {

namespace {

void check_dims(const SparseMatrix& A, const ScalingVector& x) {
  if (static_cast<int>(x.size()) != A.size())
    throw std::invalid_argument("scaling vector dimension mismatch");
}

std::vector<char> frozen_mask(const SparseMatrix& A,
                              std::span<const int> frozen) {
  std::vector<char> mask(A.size(), 0);
  for (int i : frozen) {
    if (i < 0 || i >= A.size())
      throw std::invalid_argument("frozen index out of range");
    mask[i] = 1;
  }
  return mask;
}

}  // namespace

double f_value(const SparseMatrix& A, const ScalingVector& x) {
  check_dims(A, x);
  double sum = 0.0;
  for (const Arc& a : A.arcs()) sum += a.weight * std::exp(x[a.from] - x[a.to]);
  if (!std::isfinite(sum))
    throw OverflowError("f(x) overflowed: scaling out of representable range");
  return sum;
}

ScalingVector gradient(const SparseMatrix& A, const ScalingVector& x) {
  check_dims(A, x);
  ScalingVector g(A.size(), 0.0);
  for (const Arc& a : A.arcs()) {
    const double w = a.weight * std::exp(x[a.from] - x[a.to]);
    if (!std::isfinite(w))
      throw OverflowError("gradient overflowed: scaling out of range");
    g[a.from] += w;
    g[a.to] -= w;
  }
  return g;
}

double contracted_f(const SparseMatrix& A, const ScalingVector& x,
                    std::span<const int> frozen) {
  check_dims(A, x);
  const auto mask = frozen_mask(A, frozen);
  double sum = 0.0;
  for (const Arc& a : A.arcs()) {
    if (mask[a.from] && mask[a.to]) continue;
    sum += a.weight * std::exp(x[a.from] - x[a.to]);
  }
  if (!std::isfinite(sum))
    throw OverflowError("contracted objective overflowed");
  return sum;
}

double contracted_gradient_norm(const SparseMatrix& A, const ScalingVector& x,
                                std::span<const int> frozen) {
  check_dims(A, x);
  const auto mask = frozen_mask(A, frozen);
  int frozen_count = 0;
  for (char m : mask) frozen_count += m;
  if (frozen_count == A.size())
    throw std::invalid_argument(
        "contracted gradient undefined when every node is contracted");

  // Active-node imbalances equal their full-graph imbalances: every arc
  // incident to an active node survives the contraction.
  std::vector<double> imb(A.size(), 0.0);
  for (const Arc& a : A.arcs()) {
    const double w = a.weight * std::exp(x[a.from] - x[a.to]);
    if (!std::isfinite(w)) throw OverflowError("contracted gradient overflowed");
    imb[a.from] += w;
    imb[a.to] -= w;
  }
  double norm = 0.0;
  double signed_sum = 0.0;
  for (int i = 0; i < A.size(); ++i) {
    if (mask[i]) continue;
    norm += std::abs(imb[i]);
    signed_sum += imb[i];
  }
  // The super-node imbalance is minus the sum of the active ones; with an
  // empty contracted set there is no super-node.
  if (frozen_count > 0) norm += std::abs(signed_sum);
  return norm;
}

}  // namespace osborne
