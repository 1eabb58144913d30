#include "support/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "osborne/objective.hpp"

namespace osborne::testsupport {

double Rng::log_uniform(double lo, double hi) {
  return std::exp(uniform(std::log(lo), std::log(hi)));
}

int Rng::below(int k) {
  const std::uint64_t n = static_cast<std::uint64_t>(k);
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = bits();
  } while (v >= limit);
  return static_cast<int>(v % n);
}

SparseMatrix two_by_two() {
  return SparseMatrix(2, {{0, 1, 4.0}, {1, 0, 1.0}});
}

SparseMatrix three_cycle() {
  return SparseMatrix(3, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 0, 4.0}});
}

SparseMatrix balanced_three_cycle() {
  return SparseMatrix(3, {{0, 1, 2.0}, {1, 2, 2.0}, {2, 0, 2.0}});
}

DenseMatrix dense_from(const SparseMatrix& A) {
  DenseMatrix m(A.size());
  for (const Arc& a : A.arcs()) m.at(a.from, a.to) = a.weight;
  return m;
}

SparseMatrix random_instance(int n, double density, std::uint64_t seed,
                             double lo, double hi,
                             std::vector<int>* hamiltonian) {
  Rng rng(seed);
  std::vector<double> dense(std::size_t(n) * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng.uniform() < density)
        dense[std::size_t(i) * n + j] = rng.log_uniform(lo, hi);

  // Random permutation cycle guarantees strong connectivity.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  for (int i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
  for (int k = 0; k < n; ++k) {
    const int from = perm[k];
    const int to = perm[(k + 1) % n];
    double& cell = dense[std::size_t(from) * n + to];
    if (cell == 0.0) cell = rng.log_uniform(lo, hi);
  }
  if (hamiltonian) *hamiltonian = perm;

  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dense[std::size_t(i) * n + j] != 0.0)
        arcs.push_back({i, j, dense[std::size_t(i) * n + j]});
  return SparseMatrix(n, std::move(arcs));
}

SparseMatrix random_digraph(int n, double density, std::uint64_t seed,
                            double lo, double hi) {
  Rng rng(seed);
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && rng.uniform() < density)
        arcs.push_back({i, j, rng.log_uniform(lo, hi)});
  return SparseMatrix(n, std::move(arcs));
}

SparseMatrix multiphase_instance(int core_n, int levels, double epsilon,
                                 std::uint64_t seed) {
  Rng rng(seed);
  const int n = core_n + levels;
  std::vector<double> dense(std::size_t(n) * n, 0.0);

  // Exact circulation: one Hamiltonian cycle plus random shorter cycles,
  // each adding equal in- and out-weight at every node it visits.
  std::vector<int> order(core_n);
  for (int i = 0; i < core_n; ++i) order[i] = i;
  auto add_cycle = [&](const std::vector<int>& cycle, double w) {
    for (std::size_t k = 0; k < cycle.size(); ++k)
      dense[std::size_t(cycle[k]) * n + cycle[(k + 1) % cycle.size()]] += w;
  };
  for (int i = core_n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  add_cycle(order, rng.log_uniform(1.0, 1000.0));
  for (int c = 0; c < 2 * core_n; ++c) {
    for (int i = core_n - 1; i > 0; --i)
      std::swap(order[i], order[rng.below(i + 1)]);
    const int len = 2 + rng.below(core_n - 1);
    add_cycle(std::vector<int>(order.begin(), order.begin() + len),
              rng.log_uniform(1.0, 1000.0));
  }
  double core_total = 0.0;
  for (double v : dense) core_total += v;

  // Pendant chain. Level weights shrink fast enough that each level stays
  // below the freeze threshold of every phase before its own.
  const double eps_prime = epsilon * epsilon / (64.0 * std::pow(n, 4.0));
  const double u = 2.0;  // per-level ratio u^2 = 4
  double scale = 0.3 * eps_prime * core_total;
  for (int k = 0; k < levels; ++k) {
    const int node = core_n + k;
    const int anchor = k == 0 ? 0 : node - 1;
    dense[std::size_t(node) * n + anchor] = scale * u;
    dense[std::size_t(anchor) * n + node] = scale / u;
    scale *= 0.1 * eps_prime;
  }

  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (dense[std::size_t(i) * n + j] != 0.0)
        arcs.push_back({i, j, dense[std::size_t(i) * n + j]});
  return SparseMatrix(n, std::move(arcs));
}

ScalingVector random_scaling(int n, std::uint64_t seed, double scale) {
  Rng rng(seed);
  ScalingVector x(n);
  for (double& v : x) v = rng.uniform(-scale, scale);
  return x;
}

ScalingVector fd_gradient(const SparseMatrix& A, const ScalingVector& x,
                          double step) {
  ScalingVector g(A.size());
  ScalingVector probe = x;
  for (int i = 0; i < A.size(); ++i) {
    probe[i] = x[i] + step;
    const double up = f_value(A, probe);
    probe[i] = x[i] - step;
    const double down = f_value(A, probe);
    probe[i] = x[i];
    g[i] = (up - down) / (2.0 * step);
  }
  return g;
}

double contraction_oracle_norm(const SparseMatrix& A, const ScalingVector& x,
                               std::span<const int> frozen) {
  const int n = A.size();
  std::vector<char> mask(n, 0);
  for (int i : frozen) mask[i] = 1;
  std::vector<int> contracted_id(n, -1);
  int actives = 0;
  for (int i = 0; i < n; ++i)
    if (!mask[i]) contracted_id[i] = actives++;
  if (actives == 0) throw std::invalid_argument("no active node");
  const int super = actives;  // present only when something is contracted
  const int p = actives + (actives < n ? 1 : 0);

  std::vector<double> in(p, 0.0), out(p, 0.0);
  for (const Arc& a : A.arcs()) {
    const int cf = mask[a.from] ? super : contracted_id[a.from];
    const int ct = mask[a.to] ? super : contracted_id[a.to];
    if (cf == ct) continue;  // self-loop at the super-node
    const double w = a.weight * std::exp(x[a.from] - x[a.to]);
    out[cf] += w;
    in[ct] += w;
  }
  double norm = 0.0;
  for (int i = 0; i < p; ++i) norm += std::abs(out[i] - in[i]);
  return norm;
}

std::vector<int> reachability_scc(const SparseMatrix& A) {
  const int n = A.size();
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i) reach[i][i] = 1;
  for (const Arc& a : A.arcs()) reach[a.from][a.to] = 1;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      if (reach[i][k])
        for (int j = 0; j < n; ++j)
          if (reach[k][j]) reach[i][j] = 1;

  std::vector<int> label(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    if (label[i] >= 0) continue;
    label[i] = next;
    for (int j = i + 1; j < n; ++j)
      if (reach[i][j] && reach[j][i]) label[j] = next;
    ++next;
  }
  return label;
}

double lp_worst_ratio(const DenseMatrix& raw, const ScalingVector& y,
                      double p) {
  const int n = raw.n;
  double worst = 1.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double rij = raw.at(i, j) * std::exp(y[i] - y[j]);
      const double rji = raw.at(j, i) * std::exp(y[j] - y[i]);
      row += std::pow(std::abs(rij), p);
      col += std::pow(std::abs(rji), p);
    }
    row = std::pow(row, 1.0 / p);
    col = std::pow(col, 1.0 / p);
    if (row == 0.0 && col == 0.0) continue;
    worst = std::max(worst, row > col ? row / col : col / row);
  }
  return worst;
}

}  // namespace osborne::testsupport
