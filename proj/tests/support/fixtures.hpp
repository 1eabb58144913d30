#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "osborne/dense_matrix.hpp"
#include "osborne/sparse_matrix.hpp"

namespace osborne::testsupport {

// Uniform draws built directly from mt19937_64 output so sequences replay
// across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t bits() { return gen_(); }
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double log_uniform(double lo, double hi);
  int below(int k);  // uniform over [0, k)

 private:
  std::mt19937_64 gen_;
};

// [[0,4],[1,0]]
SparseMatrix two_by_two();
// Directed triangle 0->1 (1), 1->2 (2), 2->0 (4).
SparseMatrix three_cycle();
// Directed triangle with all weights 2: exactly balanced.
SparseMatrix balanced_three_cycle();

DenseMatrix dense_from(const SparseMatrix& A);

// Strongly connected instance: every ordered pair kept with probability
// `density`, plus a random Hamiltonian cycle; weights log-uniform in
// [lo, hi]. The cycle (as a node sequence) is reported when requested.
SparseMatrix random_instance(int n, double density, std::uint64_t seed,
                             double lo = 1.0, double hi = 1000.0,
                             std::vector<int>* hamiltonian = nullptr);

// Plain random digraph, not necessarily strongly connected.
SparseMatrix random_digraph(int n, double density, std::uint64_t seed,
                            double lo = 1.0, double hi = 10.0);

// Instance whose strict run needs one phase per pendant level. The core is
// an exact circulation (sum of random weighted cycles, so every core index
// is balanced), and `levels` pendant nodes hang off it in a chain of
// two-cycles with ratio 4 and geometrically vanishing weight. The whole
// matrix starts inside the phase-one stopping rule for `epsilon`, but each
// pendant is too light for the running freeze threshold and is only
// balanced once its own phase reaches it.
SparseMatrix multiphase_instance(int core_n, int levels, double epsilon,
                                 std::uint64_t seed);

ScalingVector random_scaling(int n, std::uint64_t seed, double scale = 1.0);

// Central finite differences of f_value.
ScalingVector fd_gradient(const SparseMatrix& A, const ScalingVector& x,
                          double step);

// Gradient norm of the contracted objective computed by explicitly building
// the contracted graph (active nodes plus one super-node) and differencing
// its arc sums. Independent of the production implementation.
double contraction_oracle_norm(const SparseMatrix& A, const ScalingVector& x,
                               std::span<const int> frozen);

// SCC partition from a boolean reachability closure (n <= 12). Component
// labels are canonicalized by first occurrence.
std::vector<int> reachability_scc(const SparseMatrix& A);

// Max over indices of the L_p row/column norm ratio of the raw matrix
// scaled by diag(e^{y_i}).
double lp_worst_ratio(const DenseMatrix& raw, const ScalingVector& y, double p);

}  // namespace osborne::testsupport
