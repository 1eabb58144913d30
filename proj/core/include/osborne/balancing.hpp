#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "osborne/report.hpp"
#include "osborne/scaled_weights.hpp"
#include "osborne/sparse_matrix.hpp"
#include "osborne/trace.hpp"

namespace osborne {

enum class VariantKind { round_robin, greedy, uniform_random, strict };

struct VariantPolicy {
  VariantKind kind = VariantKind::strict;
  std::uint64_t seed = 0;  // consumed by uniform_random only
};

const char* variant_name(VariantKind kind);
VariantKind variant_from_name(const std::string& name);

// Membership mask over [n] with a running count.
class ActiveSet {
 public:
  explicit ActiveSet(int n, bool all_active = true)
      : active_(n, all_active ? 1 : 0), count_(all_active ? n : 0) {}

  int size() const { return static_cast<int>(active_.size()); }
  int count() const { return count_; }
  bool is_active(int i) const { return active_[i] != 0; }
  void deactivate(int i) {
    if (active_[i]) --count_;
    active_[i] = 0;
  }
  void activate(int i) {
    if (!active_[i]) ++count_;
    active_[i] = 1;
  }

 private:
  std::vector<char> active_;
  int count_ = 0;
};

// Stateful index chooser. Deterministic given (kind, seed, history):
//   greedy        argmax over active i of (sqrt(c_i) - sqrt(r_i))^2,
//                 ties broken by smallest index;
//   round_robin   cycles over active indices in increasing order;
//   uniform_random rejection-sampled draws from a seeded mt19937_64, so
//                 traces replay across platforms from the seed alone.
class IndexSelector {
 public:
  IndexSelector(VariantPolicy policy, int n);

  int select(const ScaledWeights& weights, const ActiveSet& active);

 private:
  VariantPolicy policy_;
  int cursor_;  // round_robin position
  std::mt19937_64 rng_;
};

// Runs the classic iteration: select an index, balance it, and stop once
// every index has row/column ratio at most 1 + epsilon (checked once per
// sweep of n steps) or when max_iters steps have been taken. Requires a
// strongly connected matrix with n >= 2.
RunReport run_classic(const SparseMatrix& A, VariantPolicy policy,
                      double epsilon, std::int64_t max_iters,
                      TraceSink* sink = nullptr);

}  // namespace osborne
