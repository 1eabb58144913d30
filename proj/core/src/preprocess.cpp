#include "osborne/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace osborne {

CanonicalInstance canonicalize(const DenseMatrix& raw, double p) {
  if (raw.n < 1) throw std::invalid_argument("matrix must be at least 1x1");
  if (static_cast<int>(raw.values.size()) != raw.n * raw.n)
    throw std::invalid_argument("dense matrix storage size mismatch");
  if (!(p >= 1.0)) throw std::invalid_argument("p must be >= 1");

  CanonicalInstance out;
  out.p = p;
  std::vector<Arc> arcs;
  for (int i = 0; i < raw.n; ++i) {
    for (int j = 0; j < raw.n; ++j) {
      const double v = raw.at(i, j);
      if (i == j) {
        if (v != 0.0) ++out.diagonal_dropped;
        continue;
      }
      if (v == 0.0) continue;
      if (v < 0.0) ++out.negatives_stripped;
      const double mag = std::abs(v);
      arcs.push_back({i, j, p == 1.0 ? mag : std::pow(mag, p)});
    }
  }
  out.matrix = SparseMatrix(raw.n, std::move(arcs));
  return out;
}

namespace {

// Iterative Tarjan; assignment order of completed components is reversed so
// that cross arcs run from lower to higher component ids.
struct TarjanState {
  const SparseMatrix& A;
  std::vector<int> index, lowlink, reverse_id;
  std::vector<char> on_stack;
  std::vector<int> stack;
  int next_index = 0;
  int components_done = 0;

  explicit TarjanState(const SparseMatrix& a)
      : A(a),
        index(a.size(), -1),
        lowlink(a.size(), 0),
        reverse_id(a.size(), -1),
        on_stack(a.size(), 0) {}

  void run(int root) {
    struct Frame {
      int node;
      std::size_t next_arc;
    };
    std::vector<Frame> frames;
    frames.push_back({root, 0});
    index[root] = lowlink[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;

    while (!frames.empty()) {
      Frame& f = frames.back();
      const auto out = A.out_arcs(f.node);
      if (f.next_arc < out.size()) {
        const int to = A.arc(out[f.next_arc++]).to;
        if (index[to] < 0) {
          index[to] = lowlink[to] = next_index++;
          stack.push_back(to);
          on_stack[to] = 1;
          frames.push_back({to, 0});
        } else if (on_stack[to]) {
          lowlink[f.node] = std::min(lowlink[f.node], index[to]);
        }
        continue;
      }
      if (lowlink[f.node] == index[f.node]) {
        while (true) {
          const int v = stack.back();
          stack.pop_back();
          on_stack[v] = 0;
          reverse_id[v] = components_done;
          if (v == f.node) break;
        }
        ++components_done;
      }
      const int done = f.node;
      frames.pop_back();
      if (!frames.empty())
        lowlink[frames.back().node] =
            std::min(lowlink[frames.back().node], lowlink[done]);
    }
  }
};

}  // namespace

SccDecomposition scc_decompose(const SparseMatrix& A) {
  TarjanState tarjan(A);
  for (int i = 0; i < A.size(); ++i)
    if (tarjan.index[i] < 0) tarjan.run(i);

  const int count = tarjan.components_done;
  SccDecomposition out;
  out.component_of.resize(A.size());
  for (int i = 0; i < A.size(); ++i)
    out.component_of[i] = count - 1 - tarjan.reverse_id[i];

  out.components.resize(count);
  for (int i = 0; i < A.size(); ++i)
    out.components[out.component_of[i]].nodes.push_back(i);

  std::vector<int> local(A.size(), -1);
  for (SccComponent& comp : out.components) {
    std::sort(comp.nodes.begin(), comp.nodes.end());
    for (std::size_t k = 0; k < comp.nodes.size(); ++k)
      local[comp.nodes[k]] = static_cast<int>(k);
  }

  std::vector<std::vector<Arc>> sub_arcs(count);
  for (const Arc& a : A.arcs()) {
    const int cf = out.component_of[a.from];
    const int ct = out.component_of[a.to];
    if (cf == ct)
      sub_arcs[cf].push_back({local[a.from], local[a.to], a.weight});
    else
      out.cross_arcs.push_back(a);
  }
  for (int c = 0; c < count; ++c)
    out.components[c].submatrix = SparseMatrix(
        static_cast<int>(out.components[c].nodes.size()), std::move(sub_arcs[c]));
  return out;
}

ScalingVector uncanonicalize_scaling(const ScalingVector& x, double p) {
  if (!(p > 0.0)) throw std::invalid_argument("p must be positive");
  ScalingVector y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] / p;
  return y;
}

}  // namespace osborne
