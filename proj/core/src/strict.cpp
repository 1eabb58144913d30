#include "osborne/strict.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "osborne/errors.hpp"
#include "osborne/preprocess.hpp"
#include "osborne/scaled_weights.hpp"

namespace osborne {

FrozenSetState::FrozenSetState(int n, double epsilon)
    : n_(n), epsilon_(epsilon) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (!(epsilon > 0.0) || epsilon > 0.5)
    throw std::invalid_argument("epsilon must lie in (0, 1/2]");
  const double n4 = static_cast<double>(n) * n * n * n;
  eps_prime_ = epsilon * epsilon / (64.0 * n4);
  freeze_phase_.assign(n, 0);
  taus_.push_back(0.0);  // tau_1
}

std::vector<int> FrozenSetState::frozen_members(int k) const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (freeze_phase_[i] != 0 && freeze_phase_[i] <= k) out.push_back(i);
  return out;
}

void FrozenSetState::advance_phase(double tau_next) {
  if (!(tau_next >= 0.0) || !std::isfinite(tau_next))
    throw std::invalid_argument("threshold must be finite and nonnegative");
  if (s_ >= 2) {
    const double bound = taus_[s_ - 1] / (4.0 * n_ * n_);
    if (tau_next > bound * (1.0 + 1e-9))
      throw std::logic_error("threshold decay violated at phase " +
                             std::to_string(s_ + 1));
  }
  taus_.push_back(tau_next);
  ++s_;
}

void FrozenSetState::freeze(int i) {
  if (freeze_phase_[i] != 0)
    throw std::logic_error("node " + std::to_string(i) + " already frozen");
  freeze_phase_[i] = s_;
  ++frozen_count_;
}

void FrozenSetState::unfreeze(int i) {
  if (freeze_phase_[i] != s_)
    throw std::logic_error(
        "only nodes frozen by the current phase may be reactivated");
  freeze_phase_[i] = 0;
  --frozen_count_;
}

namespace {

double max_ratio(const ScaledWeights& w) {
  double worst = 1.0;
  for (int i = 0; i < w.matrix().size(); ++i) {
    const double r = w.row_norm(i), c = w.col_norm(i);
    if (!(r > 0.0) || !(c > 0.0))
      throw StructuralError("zero norm at index " + std::to_string(i));
    const double ratio = r > c ? r / c : c / r;
    if (ratio > worst) worst = ratio;
  }
  return worst;
}

// Hard cap on total steps: ten times the worst-case step count with its
// constant set to one. Exceeding it means the iteration is stuck.
std::int64_t safety_valve(const SparseMatrix& A, double epsilon) {
  const double n = A.size();
  const double w = A.dynamic_range();
  const double bound = std::pow(n, 9.0) / (epsilon * epsilon) *
                       std::log(w * n / epsilon) * std::log(w) / std::log(n);
  const double capped = 10.0 * bound;
  if (!std::isfinite(capped) || capped > 4e18) return std::int64_t(4e18);
  return static_cast<std::int64_t>(capped) + 1;
}

struct StrictRun {
  const SparseMatrix& A;
  ScaledWeights weights;
  FrozenSetState frozen;
  TraceSink* sink;
  RunView view;

  // Incrementally maintained: the contracted objective and the active
  // nodes' absolute / signed imbalance sums. All three are rebuilt fresh at
  // membership changes and refreshes, so their rounding error stays at the
  // scale of the contracted objective rather than the full total, which can
  // be orders of magnitude larger in late phases.
  double objective_ = 0.0;
  double active_abs = 0.0;
  double active_signed = 0.0;

  std::vector<int> stamp;
  int stamp_token = 0;
  std::vector<int> touched;

  std::int64_t reactivations = 0;
  std::int64_t productive = 0;

  StrictRun(const SparseMatrix& a, double epsilon, TraceSink* s)
      : A(a), weights(a), frozen(a.size(), epsilon), sink(s) {
    view = {&A, &weights, &frozen};
    stamp.assign(A.size(), -1);
    rebuild_aggregates();
  }

  double objective() const { return objective_; }
  double grad_norm() const {
    return frozen.frozen_count() == 0 ? active_abs
                                      : active_abs + std::abs(active_signed);
  }

  void rebuild_aggregates() {
    objective_ = 0.0;
    for (int id = 0; id < A.arc_count(); ++id) {
      const Arc& a = A.arc(id);
      if (frozen.is_frozen(a.from) && frozen.is_frozen(a.to)) continue;
      objective_ += weights.arc_weight(id);
    }
    active_abs = 0.0;
    active_signed = 0.0;
    for (int i = 0; i < A.size(); ++i) {
      if (frozen.is_frozen(i)) continue;
      const double imb = weights.row_norm(i) - weights.col_norm(i);
      active_abs += std::abs(imb);
      active_signed += imb;
    }
  }

  // True when the phase stopping rule holds; a positive maintained test is
  // confirmed on freshly recomputed state before it is trusted.
  bool phase_done() {
    if (grad_norm() > frozen.eps_prime() * objective()) return false;
    if (weights.steps_since_refresh() == 0) return true;
    weights.refresh();
    rebuild_aggregates();
    return grad_norm() <= frozen.eps_prime() * objective();
  }

  int pick_greedy() const {
    int best = -1;
    double best_drop = -1.0;
    for (int i = 0; i < A.size(); ++i) {
      if (frozen.is_frozen(i)) continue;
      const double d =
          std::sqrt(weights.col_norm(i)) - std::sqrt(weights.row_norm(i));
      const double drop = d * d;
      if (drop > best_drop) {
        best_drop = drop;
        best = i;
      }
    }
    return best;
  }

  void collect_touched(int i) {
    touched.clear();
    ++stamp_token;
    auto add = [&](int k) {
      if (stamp[k] != stamp_token) {
        stamp[k] = stamp_token;
        touched.push_back(k);
      }
    };
    add(i);
    for (int id : A.out_arcs(i)) add(A.arc(id).to);
    for (int id : A.in_arcs(i)) add(A.arc(id).from);
  }

  void do_step() {
    const int i = pick_greedy();
    const double obj_before = objective();
    const double grad_before = grad_norm();

    collect_touched(i);
    for (int k : touched) {
      if (frozen.is_frozen(k)) continue;
      const double imb = weights.row_norm(k) - weights.col_norm(k);
      active_abs -= std::abs(imb);
      active_signed -= imb;
    }
    const BalanceOutcome out = weights.balance_index(i);
    if (out.refreshed) {
      rebuild_aggregates();
    } else {
      objective_ -= out.drop;
      for (int k : touched) {
        if (frozen.is_frozen(k)) continue;
        const double imb = weights.row_norm(k) - weights.col_norm(k);
        active_abs += std::abs(imb);
        active_signed += imb;
      }
    }
    const std::int64_t t = frozen.advance_step();

    // Reactivation: only nodes touched by this step can have crossed the
    // threshold, and only nodes frozen by the current phase may leave.
    if (frozen.phase() > 1) {
      const double tau_s = frozen.current_tau();
      bool removed = false;
      for (int k : touched) {
        if (frozen.freeze_phase(k) != frozen.phase()) continue;
        const double weight_k = weights.node_weight(k);
        if (weight_k < tau_s) {
          frozen.unfreeze(k);
          ++reactivations;
          removed = true;
          if (sink)
            sink->on_reactivation({frozen.phase(), t, k, weight_k, tau_s},
                                  view);
        }
      }
      if (removed) rebuild_aggregates();
    }

    const bool is_productive = out.drop >= 1e-15 * obj_before;
    if (is_productive) ++productive;
    if (sink) {
      StepRecord rec;
      rec.t = t;
      rec.phase = frozen.phase();
      rec.index = i;
      rec.drop = out.drop;
      rec.predicted_drop = out.predicted_drop;
      rec.objective_before = obj_before;
      rec.grad_norm_before = grad_before;
      rec.objective = objective();
      rec.grad_norm = grad_norm();
      rec.active_count = A.size() - frozen.frozen_count();
      rec.productive = is_productive;
      sink->on_step(rec, view);
    }
  }

  void freeze_heavy() {
    const double tau_next = objective() / (4.0 * std::pow(A.size(), 3.0));
    frozen.advance_phase(tau_next);
    const std::int64_t t = frozen.completed_steps();
    for (int i = 0; i < A.size(); ++i) {
      if (frozen.is_frozen(i)) continue;
      const double weight_i = weights.node_weight(i);
      if (weight_i >= tau_next) {
        frozen.freeze(i);
        if (sink)
          sink->on_freeze({frozen.phase(), t, i, weight_i, tau_next}, view);
      }
    }
    rebuild_aggregates();
  }

  std::string dump() const {
    std::ostringstream os;
    os << "n=" << A.size() << " eps=" << frozen.epsilon()
       << " t=" << frozen.completed_steps() << " s=" << frozen.phase()
       << " frozen=" << frozen.frozen_count() << " f=" << objective()
       << " grad=" << grad_norm();
    return os.str();
  }
};

}  // namespace

RunReport run_strict(const SparseMatrix& A, double epsilon, TraceSink* sink,
                     StrictOptions options) {
  if (A.size() < 2)
    throw std::invalid_argument("strict balancing needs n >= 2");
  if (!(epsilon > 0.0) || epsilon > 0.5)
    throw std::invalid_argument("epsilon must lie in (0, 1/2]");
  if (!scc_decompose(A).strongly_connected())
    throw StructuralError("matrix is not strongly connected");

  const auto t0 = std::chrono::steady_clock::now();
  const std::int64_t valve = safety_valve(A, epsilon);
  const double threshold = 1.0 + epsilon;

  StrictRun run(A, epsilon, sink);
  RunReport report;
  report.f_initial = run.weights.total();

  bool capped = false;
  std::string outer_exit;
  while (true) {
    if (run.frozen.frozen_count() == A.size()) {
      outer_exit = "frozen_all";
      break;
    }
    if (max_ratio(run.weights) <= threshold) {
      outer_exit = "all_balanced";
      break;
    }
    if (sink)
      sink->on_phase_start({run.frozen.phase(), run.frozen.completed_steps(),
                            run.frozen.current_tau(), run.objective(),
                            run.frozen.frozen_count()},
                           run.view);
    while (!run.phase_done()) {
      if (run.frozen.completed_steps() >= valve)
        throw ConvergenceError("step safety valve exceeded: " + run.dump());
      if (options.max_steps > 0 &&
          run.frozen.completed_steps() >= options.max_steps) {
        capped = true;
        break;
      }
      run.do_step();
    }
    if (sink)
      sink->on_phase_end({run.frozen.phase(), run.frozen.completed_steps(),
                          run.frozen.current_tau(), run.objective(),
                          run.frozen.frozen_count()},
                         run.view);
    if (capped) break;
    run.freeze_heavy();
  }

  run.weights.refresh();
  report.termination = capped ? "iteration_cap" : "balanced";
  report.outer_exit = capped ? "" : outer_exit;
  report.steps_total = run.frozen.completed_steps();
  report.steps_productive = run.productive;
  report.phases = run.frozen.phase() - 1;
  report.reactivations = run.reactivations;
  report.f_final = run.weights.total();
  report.max_imbalance = max_ratio(run.weights) - 1.0;
  report.x = run.weights.scaling();
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace osborne
