#include "osborne/sparse_matrix.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "osborne/errors.hpp"

namespace osborne {

SparseMatrix::SparseMatrix(int n, std::vector<Arc> arcs)
    : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw std::invalid_argument("matrix dimension must be >= 0");
  for (const Arc& a : arcs_) {
    if (a.from < 0 || a.from >= n || a.to < 0 || a.to >= n)
      throw std::invalid_argument("arc index out of range");
    if (a.from == a.to)
      throw std::invalid_argument("diagonal entry at index " +
                                  std::to_string(a.from));
    if (!(a.weight > 0.0))
      throw std::invalid_argument("entries must be positive");
  }
  std::sort(arcs_.begin(), arcs_.end(), [](const Arc& a, const Arc& b) {
    return a.from != b.from ? a.from < b.from : a.to < b.to;
  });
  for (std::size_t k = 1; k < arcs_.size(); ++k) {
    if (arcs_[k - 1].from == arcs_[k].from && arcs_[k - 1].to == arcs_[k].to)
      throw std::invalid_argument("duplicate entry (" +
                                  std::to_string(arcs_[k].from) + ", " +
                                  std::to_string(arcs_[k].to) + ")");
  }

  const int m = static_cast<int>(arcs_.size());
  out_start_.assign(n_ + 1, 0);
  in_start_.assign(n_ + 1, 0);
  for (const Arc& a : arcs_) {
    ++out_start_[a.from + 1];
    ++in_start_[a.to + 1];
  }
  for (int i = 0; i < n_; ++i) {
    out_start_[i + 1] += out_start_[i];
    in_start_[i + 1] += in_start_[i];
  }
  out_ids_.resize(m);
  in_ids_.resize(m);
  std::vector<int> out_fill(out_start_.begin(), out_start_.end() - 1);
  std::vector<int> in_fill(in_start_.begin(), in_start_.end() - 1);
  for (int id = 0; id < m; ++id) {
    out_ids_[out_fill[arcs_[id].from]++] = id;
    in_ids_[in_fill[arcs_[id].to]++] = id;
  }

  min_entry_ = 0.0;
  total_ = 0.0;
  for (const Arc& a : arcs_) {
    total_ += a.weight;
    if (min_entry_ == 0.0 || a.weight < min_entry_) min_entry_ = a.weight;
  }
}

double SparseMatrix::dynamic_range() const {
  if (arcs_.empty())
    throw StructuralError("dynamic range undefined for an empty matrix");
  return total_ / min_entry_;
}

}  // namespace osborne
