#include "osborne/driver.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <vector>

#include "osborne/objective.hpp"
#include "osborne/preprocess.hpp"
#include "osborne/strict.hpp"

namespace osborne {

namespace {

// Rewrites step indices from component-local to original numbering before
// forwarding.
class RemapSink : public TraceSink {
 public:
  RemapSink(TraceSink& inner, const std::vector<int>& nodes)
      : inner_(inner), nodes_(nodes) {}

  void on_step(const StepRecord& r, const RunView& v) override {
    StepRecord global = r;
    global.index = nodes_[r.index];
    inner_.on_step(global, v);
  }
  void on_phase_start(const PhaseEvent& e, const RunView& v) override {
    inner_.on_phase_start(e, v);
  }
  void on_phase_end(const PhaseEvent& e, const RunView& v) override {
    inner_.on_phase_end(e, v);
  }
  void on_freeze(const FreezeEvent& e, const RunView& v) override {
    FreezeEvent global = e;
    global.index = nodes_[e.index];
    inner_.on_freeze(global, v);
  }
  void on_reactivation(const ReactivationEvent& e, const RunView& v) override {
    ReactivationEvent global = e;
    global.index = nodes_[e.index];
    inner_.on_reactivation(global, v);
  }

 private:
  TraceSink& inner_;
  const std::vector<int>& nodes_;
};

}  // namespace

RunReport balance_matrix(const DenseMatrix& raw, const BalanceOptions& opt) {
  if (!(opt.epsilon > 0.0) || opt.epsilon > 0.5)
    throw std::invalid_argument("epsilon must lie in (0, 1/2]");
  if (!(opt.p >= 1.0)) throw std::invalid_argument("p must be >= 1");
  if (opt.max_iters <= 0)
    throw std::invalid_argument("max_iters must be positive");
  if (opt.workers < 1) throw std::invalid_argument("workers must be >= 1");

  const auto t0 = std::chrono::steady_clock::now();
  const CanonicalInstance canonical = canonicalize(raw, opt.p);
  const SccDecomposition scc = scc_decompose(canonical.matrix);

  // The user's epsilon applies to L_p norms of the raw matrix; the
  // canonical L1 run uses (1+eps)^p - 1. The strict variant caps the
  // derived value at 1/2, which only tightens the guarantee.
  double eps_canonical =
      opt.p == 1.0 ? opt.epsilon : std::pow(1.0 + opt.epsilon, opt.p) - 1.0;
  if (opt.policy.kind == VariantKind::strict)
    eps_canonical = std::min(eps_canonical, 0.5);

  std::vector<char> has_cross(canonical.matrix.size(), 0);
  for (const Arc& a : scc.cross_arcs) {
    has_cross[a.from] = 1;
    has_cross[a.to] = 1;
  }

  const int comp_count = static_cast<int>(scc.components.size());
  std::vector<ComponentReport> comp_reports(comp_count);
  std::vector<RunReport> comp_runs(comp_count);
  std::vector<int> nontrivial;
  for (int c = 0; c < comp_count; ++c) {
    const SccComponent& comp = scc.components[c];
    ComponentReport& rep = comp_reports[c];
    rep.id = c;
    rep.nodes = comp.nodes;
    if (comp.nodes.size() == 1) {
      rep.status = has_cross[comp.nodes[0]] ? "unbalanceable: cross-component"
                                            : "vacuously-balanced";
    } else {
      nontrivial.push_back(c);
    }
  }

  auto run_component = [&](int c, TraceSink* sink) {
    const SccComponent& comp = scc.components[c];
    if (opt.policy.kind == VariantKind::strict) {
      StrictOptions strict_opts;
      strict_opts.max_steps = opt.max_iters;
      comp_runs[c] = run_strict(comp.submatrix, eps_canonical, sink, strict_opts);
    } else {
      comp_runs[c] = run_classic(comp.submatrix, opt.policy, eps_canonical,
                                 opt.max_iters, sink);
    }
  };

  const int workers =
      opt.sink ? 1
               : std::min<int>(opt.workers, static_cast<int>(nontrivial.size()));
  if (workers <= 1) {
    for (int c : nontrivial) {
      if (opt.sink) {
        RemapSink remap(*opt.sink, scc.components[c].nodes);
        run_component(c, &remap);
      } else {
        run_component(c, nullptr);
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
      while (true) {
        const std::size_t k = next.fetch_add(1);
        if (k >= nontrivial.size()) return;
        try {
          run_component(nontrivial[k], nullptr);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (std::thread& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  RunReport report;
  report.variant = variant_name(opt.policy.kind);
  report.epsilon = opt.epsilon;
  report.p = opt.p;
  report.seed = opt.policy.seed;
  report.n = canonical.matrix.size();
  report.x.assign(canonical.matrix.size(), 0.0);

  bool any_cap = false;
  for (int c : nontrivial) {
    const RunReport& run = comp_runs[c];
    ComponentReport& rep = comp_reports[c];
    rep.status = run.termination;
    rep.steps_total = run.steps_total;
    rep.steps_productive = run.steps_productive;
    rep.phases = run.phases;
    rep.reactivations = run.reactivations;
    rep.max_imbalance = run.max_imbalance;
    rep.f_initial = run.f_initial;
    rep.f_final = run.f_final;

    report.steps_total += run.steps_total;
    report.steps_productive += run.steps_productive;
    report.phases += run.phases;
    report.reactivations += run.reactivations;
    report.max_imbalance = std::max(report.max_imbalance, run.max_imbalance);
    if (run.termination != "balanced") any_cap = true;
    if (report.outer_exit.empty()) report.outer_exit = run.outer_exit;

    const std::vector<int>& nodes = scc.components[c].nodes;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      report.x[nodes[k]] = run.x[k];
  }

  report.termination = any_cap ? "iteration_cap" : "balanced";
  report.exit_code = any_cap ? 2 : 0;
  report.components = std::move(comp_reports);
  report.x_user = uncanonicalize_scaling(report.x, opt.p);
  report.max_imbalance_user =
      opt.p == 1.0 ? report.max_imbalance
                   : std::pow(1.0 + report.max_imbalance, 1.0 / opt.p) - 1.0;
  if (canonical.matrix.arc_count() > 0) {
    report.f_initial = f_value(canonical.matrix, ScalingVector(report.n, 0.0));
    report.f_final = f_value(canonical.matrix, report.x);
  }
  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return report;
}

}  // namespace osborne
