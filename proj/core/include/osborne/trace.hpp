#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace osborne {

class SparseMatrix;
class ScaledWeights;
class FrozenSetState;

struct StepRecord {
  std::int64_t t = 0;   // balancing steps completed, 1-based
  int phase = 1;        // s (always 1 for classic variants)
  int index = -1;       // balanced index
  double drop = 0.0;
  double predicted_drop = 0.0;
  double objective_before = 0.0;  // f^(B) just before the step
  double grad_norm_before = 0.0;
  double objective = 0.0;  // f^(B) after the step (and any reactivation)
  double grad_norm = 0.0;
  int active_count = 0;
  bool productive = false;  // drop >= 1e-15 * objective_before
};

struct PhaseEvent {
  int phase = 0;
  std::int64_t t = 0;
  double tau = 0.0;
  double objective = 0.0;  // f^(B_s) at the event
  int frozen_count = 0;
};

struct FreezeEvent {
  int phase = 0;  // phase the node is frozen for
  std::int64_t t = 0;
  int index = -1;
  double weight = 0.0;  // r_i + c_i when frozen
  double tau = 0.0;
};

struct ReactivationEvent {
  int phase = 0;
  std::int64_t t = 0;
  int index = -1;
  double weight = 0.0;  // weight that fell below tau
  double tau = 0.0;
};

// Read-only view of the live run handed to sinks with every event.
// `frozen` is null for classic variants.
struct RunView {
  const SparseMatrix* matrix = nullptr;
  const ScaledWeights* weights = nullptr;
  const FrozenSetState* frozen = nullptr;
};

class TraceSink {
 public:
  virtual ~TraceSink() = default;
  virtual void on_step(const StepRecord&, const RunView&) {}
  virtual void on_phase_start(const PhaseEvent&, const RunView&) {}
  virtual void on_phase_end(const PhaseEvent&, const RunView&) {}
  virtual void on_freeze(const FreezeEvent&, const RunView&) {}
  virtual void on_reactivation(const ReactivationEvent&, const RunView&) {}
};

// Collects every event verbatim. Test and diagnostics aid.
class RecordingSink : public TraceSink {
 public:
  void on_step(const StepRecord& r, const RunView&) override {
    steps.push_back(r);
  }
  void on_phase_start(const PhaseEvent& e, const RunView&) override {
    phase_starts.push_back(e);
  }
  void on_phase_end(const PhaseEvent& e, const RunView&) override {
    phase_ends.push_back(e);
  }
  void on_freeze(const FreezeEvent& e, const RunView&) override {
    freezes.push_back(e);
  }
  void on_reactivation(const ReactivationEvent& e, const RunView&) override {
    reactivations.push_back(e);
  }

  std::vector<StepRecord> steps;
  std::vector<PhaseEvent> phase_starts;
  std::vector<PhaseEvent> phase_ends;
  std::vector<FreezeEvent> freezes;
  std::vector<ReactivationEvent> reactivations;
};

// Writes "t,s,index,drop,f,grad_norm,active_count" rows. Every step is
// written for n <= 64; larger runs are sampled every n steps to keep trace
// files proportional to the problem size.
class CsvTraceWriter : public TraceSink {
 public:
  explicit CsvTraceWriter(std::ostream& os);
  void on_step(const StepRecord&, const RunView&) override;

 private:
  std::ostream& os_;
  bool header_written_ = false;
};

// Fans events out to two sinks.
class TeeSink : public TraceSink {
 public:
  TeeSink(TraceSink& a, TraceSink& b) : a_(a), b_(b) {}
  void on_step(const StepRecord& r, const RunView& v) override {
    a_.on_step(r, v);
    b_.on_step(r, v);
  }
  void on_phase_start(const PhaseEvent& e, const RunView& v) override {
    a_.on_phase_start(e, v);
    b_.on_phase_start(e, v);
  }
  void on_phase_end(const PhaseEvent& e, const RunView& v) override {
    a_.on_phase_end(e, v);
    b_.on_phase_end(e, v);
  }
  void on_freeze(const FreezeEvent& e, const RunView& v) override {
    a_.on_freeze(e, v);
    b_.on_freeze(e, v);
  }
  void on_reactivation(const ReactivationEvent& e, const RunView& v) override {
    a_.on_reactivation(e, v);
    b_.on_reactivation(e, v);
  }

 private:
  TraceSink& a_;
  TraceSink& b_;
};

}  // namespace osborne
