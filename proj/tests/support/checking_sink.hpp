#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osborne/sparse_matrix.hpp"
#include "osborne/trace.hpp"

namespace osborne::testsupport {

// Validates a strict run online, event by event. Per-step checks cover only
// the nodes and arcs the step touched (nothing else changes); full scans
// run at phase boundaries and on a fixed step cadence.
//
// Checks, keyed by the counters below:
//   drop_identity      |drop - (sqrt(c)-sqrt(r))^2| <= 1e-9 * f_before
//   envelope           every scaled arc weight within
//                      [(a_min/S)^n * S * (1-1e-9), S * (1+1e-9)]
//   weight_floor       a frozen node keeps weight >= tau_freeze / 2
//   frozen_balance     a frozen node stays epsilon-balanced
//   progress           per-step drop >= ||grad f^B||^2 / (16 n f^B) - 1e-9 f^B
//   regime_bound       in phases s > 1, f^B <= (n - |B|) tau_s
//   heavy_balance      nodes outside the previous frozen set with weight
//                      >= tau_s / 2 are epsilon-balanced
//   tau_decay          tau_s <= tau_{s-1} / (4 n^2) for s > 2
//   objective_decay    f^B at a phase end <= previous phase end / (4 n^2)
//   trace_consistency  recorded f^B matches a fresh recomputation
class CheckingSink : public TraceSink {
 public:
  CheckingSink(const SparseMatrix& A, double epsilon);

  struct Counts {
    std::int64_t steps = 0;
    std::int64_t drop_identity = 0;
    std::int64_t envelope = 0;
    std::int64_t weight_floor = 0;
    std::int64_t frozen_balance = 0;
    std::int64_t progress = 0;
    std::int64_t regime_bound = 0;
    std::int64_t heavy_balance = 0;
    std::int64_t tau_decay = 0;
    std::int64_t objective_decay = 0;
    std::int64_t trace_consistency = 0;
    std::int64_t tau_pairs = 0;        // decay relations actually compared
    std::int64_t objective_pairs = 0;

    std::int64_t failures() const {
      return drop_identity + envelope + weight_floor + frozen_balance +
             progress + regime_bound + heavy_balance + tau_decay +
             objective_decay + trace_consistency;
    }
  };

  const Counts& counts() const { return counts_; }
  bool clean() const { return counts_.failures() == 0; }
  int max_phase() const { return max_phase_; }
  // Describes the first failure observed, empty when clean.
  const std::string& first_failure() const { return first_failure_; }

  void on_step(const StepRecord&, const RunView&) override;
  void on_phase_start(const PhaseEvent&, const RunView&) override;
  void on_phase_end(const PhaseEvent&, const RunView&) override;
  void on_freeze(const FreezeEvent&, const RunView&) override;
  void on_reactivation(const ReactivationEvent&, const RunView&) override;

 private:
  void fail(std::int64_t Counts::*counter, const std::string& what);
  void check_node(int node, const RunView& view, int phase);
  void check_arc(int arc_id, const RunView& view);
  void full_scan(const RunView& view, int phase);

  const SparseMatrix& A_;
  double epsilon_;
  double envelope_lo_ = 0.0;
  double envelope_hi_ = 0.0;
  std::vector<double> freeze_tau_;     // 0 while active
  std::vector<double> tau_by_phase_;   // tau_by_phase_[s-1] = tau_s
  std::vector<double> end_objective_;  // phase s inner-loop exit value
  Counts counts_;
  int max_phase_ = 1;
  std::string first_failure_;
};

}  // namespace osborne::testsupport
