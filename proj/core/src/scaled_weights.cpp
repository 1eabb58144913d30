#include "osborne/scaled_weights.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "osborne/errors.hpp"

namespace osborne {

namespace {
constexpr double kDriftCap = 1e-10;  // refresh when estimate exceeds cap * f
}

ScaledWeights::ScaledWeights(const SparseMatrix& A)
    : ScaledWeights(A, ScalingVector(A.size(), 0.0)) {}

ScaledWeights::ScaledWeights(const SparseMatrix& A, ScalingVector x)
    : matrix_(&A), x_(std::move(x)) {
  if (static_cast<int>(x_.size()) != A.size())
    throw std::invalid_argument("scaling vector dimension mismatch");
  weights_.resize(A.arc_count());
  refresh();
}

void ScaledWeights::refresh() {
  const SparseMatrix& A = *matrix_;
  row_norm_.assign(A.size(), 0.0);
  col_norm_.assign(A.size(), 0.0);
  total_ = 0.0;
  for (int id = 0; id < A.arc_count(); ++id) {
    const Arc& a = A.arc(id);
    const double w = a.weight * std::exp(x_[a.from] - x_[a.to]);
    weights_[id] = w;
    row_norm_[a.from] += w;
    col_norm_[a.to] += w;
    total_ += w;
  }
  if (!std::isfinite(total_))
    throw OverflowError("scaled weights overflowed during refresh");
  steps_since_refresh_ = 0;
  drift_bound_ = 0.0;
}

BalanceOutcome ScaledWeights::balance_index(int i) {
  const SparseMatrix& A = *matrix_;
  if (i < 0 || i >= A.size()) throw std::invalid_argument("index out of range");
  const double r = row_norm_[i];
  const double c = col_norm_[i];
  if (!(r > 0.0) || !(c > 0.0))
    throw StructuralError("index " + std::to_string(i) +
                          " has a zero row or column norm; the matrix is not "
                          "strongly connected");

  BalanceOutcome out;
  out.index = i;
  const double sr = std::sqrt(r), sc = std::sqrt(c);
  out.predicted_drop = (sc - sr) * (sc - sr);

  const double delta = 0.5 * (std::log(c) - std::log(r));
  const double grow = std::exp(delta);
  const double shrink = std::exp(-delta);
  x_[i] += delta;

  double f_delta = 0.0;
  for (int id : A.out_arcs(i)) {
    const double w_old = weights_[id];
    const double w_new = w_old * grow;
    weights_[id] = w_new;
    f_delta += w_new - w_old;
    col_norm_[A.arc(id).to] += w_new - w_old;
  }
  for (int id : A.in_arcs(i)) {
    const double w_old = weights_[id];
    const double w_new = w_old * shrink;
    weights_[id] = w_new;
    f_delta += w_new - w_old;
    row_norm_[A.arc(id).from] += w_new - w_old;
  }
  // The balanced node's own norms are recomputed fresh; neighbours are
  // maintained incrementally and covered by the drift policy.
  double r_new = 0.0, c_new = 0.0;
  for (int id : A.out_arcs(i)) r_new += weights_[id];
  for (int id : A.in_arcs(i)) c_new += weights_[id];
  row_norm_[i] = r_new;
  col_norm_[i] = c_new;

  total_ += f_delta;
  out.drop = -f_delta;
  if (!std::isfinite(total_))
    throw OverflowError("scaled weights overflowed during a balancing step");

  ++steps_since_refresh_;
  drift_bound_ +=
      4.0 * std::numeric_limits<double>::epsilon() * (r + c + r_new + c_new);

  const std::int64_t n = A.size();
  if (steps_since_refresh_ >= n * n || drift_bound_ > kDriftCap * total_) {
    refresh();
    out.refreshed = true;
  }
  out.f_after = total_;
  return out;
}

}  // namespace osborne
