#pragma once

#include <cstdint>
#include <vector>

#include "osborne/report.hpp"
#include "osborne/sparse_matrix.hpp"
#include "osborne/trace.hpp"

namespace osborne {

// Phase bookkeeping for the strict run: the nested frozen sets B_1 = {} of
// phase 1 through B_s of the current phase, their thresholds tau_s, and the
// phase/step counters. Each frozen node is tagged with the phase that froze
// it; B_k is the set of nodes with tag <= k. Only nodes tagged with the
// current phase may be unfrozen, so earlier sets never shrink.
class FrozenSetState {
 public:
  // Requires epsilon in (0, 1/2]; eps_prime = epsilon^2 / (64 n^4).
  FrozenSetState(int n, double epsilon);

  int size() const { return n_; }
  double epsilon() const { return epsilon_; }
  double eps_prime() const { return eps_prime_; }

  int phase() const { return s_; }        // s >= 1
  std::int64_t step() const { return t_; }  // t >= 1; t - 1 steps completed
  std::int64_t completed_steps() const { return t_ - 1; }

  int frozen_count() const { return frozen_count_; }
  bool is_frozen(int i) const { return freeze_phase_[i] != 0; }
  // Phase that froze node i; 0 while active.
  int freeze_phase(int i) const { return freeze_phase_[i]; }

  // tau_k for 1 <= k <= phase(); tau_1 = 0.
  double tau(int k) const { return taus_[k - 1]; }
  double current_tau() const { return taus_[s_ - 1]; }

  // Members of B_k (tags in [1, k]), increasing order.
  std::vector<int> frozen_members(int k) const;
  std::vector<int> frozen_members() const { return frozen_members(s_); }

  std::int64_t advance_step() { return ++t_ - 1; }

  // Starts phase s+1 with threshold tau_next. Enforces the geometric decay
  // tau_{s+1} <= tau_s / (4 n^2) that holds for every phase after the
  // second; a violation means corrupted state.
  void advance_phase(double tau_next);

  void freeze(int i);    // requires i active; tags with the current phase
  void unfreeze(int i);  // requires freeze_phase(i) == phase()

 private:
  int n_;
  double epsilon_;
  double eps_prime_;
  int s_ = 1;
  std::int64_t t_ = 1;
  std::vector<int> freeze_phase_;
  std::vector<double> taus_;  // taus_[k-1] = tau_k
  int frozen_count_ = 0;
};

struct StrictOptions {
  // Optional user step cap; 0 means the hard safety valve alone governs.
  std::int64_t max_steps = 0;
};

// Balances A until every index has row/column ratio at most 1 + epsilon.
// Each phase runs greedy balancing over the active nodes until the relative
// contracted-gradient norm falls to eps_prime, then freezes every node
// whose weight reaches the new threshold; frozen nodes whose weight decays
// below the threshold of the phase that froze them are reactivated.
// Requires a strongly connected matrix, n >= 2 and epsilon in (0, 1/2].
RunReport run_strict(const SparseMatrix& A, double epsilon,
                     TraceSink* sink = nullptr, StrictOptions options = {});

}  // namespace osborne
