#include "osborne/diagnostics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "osborne/errors.hpp"

namespace osborne {

namespace {

ImbalanceReport build_report(const std::vector<double>& row,
                             const std::vector<double>& col, double f) {
  const int n = static_cast<int>(row.size());
  ImbalanceReport rep;
  rep.per_index.resize(n);
  double sq = 0.0;
  double grad = 0.0;
  double max_weight = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = row[i], c = col[i];
    if (!(r > 0.0) || !(c > 0.0))
      throw StructuralError("index " + std::to_string(i) +
                            " has a zero row or column norm");
    rep.per_index[i] = (r > c ? r / c : c / r) - 1.0;
    if (rep.per_index[i] > rep.max) rep.max = rep.per_index[i];
    sq += (c - r) * (c - r);
    grad += std::abs(r - c);
    max_weight = std::max(max_weight, r + c);
  }
  rep.weak = std::sqrt(sq) / f;
  rep.grad_rel = grad / f;

  // Consistency of the two balance notions: a report whose worst ratio is
  // 1 + max can never show weak imbalance above max * max_weight * sqrt(n) / f.
  const double weak_cap = rep.max * max_weight * std::sqrt(double(n)) / f;
  if (rep.weak > weak_cap * (1.0 + 1e-9) + 1e-15)
    throw std::logic_error("weak/strict imbalance relation violated");
  return rep;
}

}  // namespace

ImbalanceReport imbalance_report(const ScaledWeights& weights) {
  const int n = weights.matrix().size();
  std::vector<double> row(n), col(n);
  for (int i = 0; i < n; ++i) {
    row[i] = weights.row_norm(i);
    col[i] = weights.col_norm(i);
  }
  return build_report(row, col, weights.total());
}

ImbalanceReport strict_imbalance(const SparseMatrix& A,
                                 const ScalingVector& x) {
  if (static_cast<int>(x.size()) != A.size())
    throw std::invalid_argument("scaling vector dimension mismatch");
  const int n = A.size();
  std::vector<double> row(n, 0.0), col(n, 0.0);
  double f = 0.0;
  for (const Arc& a : A.arcs()) {
    const double w = a.weight * std::exp(x[a.from] - x[a.to]);
    row[a.from] += w;
    col[a.to] += w;
    f += w;
  }
  if (!std::isfinite(f)) throw OverflowError("scaled weights overflowed");
  return build_report(row, col, f);
}

std::vector<double> similarity_invariants(const DenseMatrix& raw,
                                          const ScalingVector& x, int k_max) {
  const int n = raw.n;
  if (n > 64)
    throw std::invalid_argument("dense similarity check unsupported for n > 64");
  if (k_max < 1 || k_max > n)
    throw std::invalid_argument("k_max must lie in [1, n]");
  if (static_cast<int>(x.size()) != n)
    throw std::invalid_argument("scaling vector dimension mismatch");

  DenseMatrix scaled(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      scaled.at(i, j) = raw.at(i, j) * std::exp(x[i] - x[j]);

  auto powers = [&](const DenseMatrix& m) {
    std::vector<double> traces;
    DenseMatrix acc = m;
    for (int k = 1; k <= k_max; ++k) {
      double tr = 0.0;
      for (int i = 0; i < n; ++i) tr += acc.at(i, i);
      traces.push_back(tr);
      if (k == k_max) break;
      DenseMatrix next(n);
      for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
          const double v = acc.at(i, l);
          if (v == 0.0) continue;
          for (int j = 0; j < n; ++j) next.at(i, j) += v * m.at(l, j);
        }
      acc = std::move(next);
    }
    return traces;
  };

  const std::vector<double> tr_raw = powers(raw);
  const std::vector<double> tr_scaled = powers(scaled);
  std::vector<double> diffs(k_max);
  for (int k = 0; k < k_max; ++k) diffs[k] = tr_scaled[k] - tr_raw[k];
  return diffs;
}

double cycle_product_check(const SparseMatrix& A, const ScalingVector& x,
                           std::span<const int> cycle) {
  if (cycle.size() < 2)
    throw std::invalid_argument("a cycle needs at least two nodes");
  if (static_cast<int>(x.size()) != A.size())
    throw std::invalid_argument("scaling vector dimension mismatch");

  double ratio = 1.0;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const int from = cycle[k];
    const int to = cycle[(k + 1) % cycle.size()];
    if (from < 0 || from >= A.size() || to < 0 || to >= A.size())
      throw std::invalid_argument("cycle index out of range");
    bool found = false;
    for (int id : A.out_arcs(from)) {
      if (A.arc(id).to == to) {
        found = true;
        break;
      }
    }
    if (!found)
      throw std::invalid_argument("(" + std::to_string(from) + ", " +
                                  std::to_string(to) +
                                  ") is not an arc of the matrix");
    ratio *= std::exp(x[from] - x[to]);
  }
  return ratio;
}

}  // namespace osborne
