#pragma once

#include <cstdint>

#include "osborne/balancing.hpp"
#include "osborne/dense_matrix.hpp"
#include "osborne/report.hpp"
#include "osborne/trace.hpp"

namespace osborne {

struct BalanceOptions {
  double p = 1.0;          // L_p norm of the raw matrix; >= 1
  double epsilon = 0.01;   // target in the user's norm; in (0, 1/2]
  VariantPolicy policy{};
  std::int64_t max_iters = 10'000'000;
  int workers = 1;         // components balanced concurrently
  TraceSink* sink = nullptr;  // forces sequential component order when set
};

// Full pipeline over a raw square matrix: canonicalize to |a_ij|^p with the
// diagonal dropped, split into strongly connected components, balance every
// nontrivial component with the chosen variant, and assemble the report.
// Singleton components are vacuously balanced; those with cross-component
// arcs are inherently unbalanceable and reported as such without failing
// the run. Exit code 0 when every nontrivial component balances, 2 when any
// hits the iteration cap.
RunReport balance_matrix(const DenseMatrix& raw, const BalanceOptions& options);

}  // namespace osborne
