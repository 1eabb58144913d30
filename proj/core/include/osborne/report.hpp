#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "osborne/sparse_matrix.hpp"

namespace osborne {

// Per-SCC outcome inside a full-matrix report.
struct ComponentReport {
  int id = 0;
  std::vector<int> nodes;  // original row/column indices, 0-based
  std::string status;      // balanced | iteration_cap | vacuously-balanced |
                           // unbalanceable: cross-component
  std::int64_t steps_total = 0;
  std::int64_t steps_productive = 0;
  int phases = 0;
  std::int64_t reactivations = 0;
  double max_imbalance = 0.0;
  double f_initial = 0.0;
  double f_final = 0.0;
};

// Outcome of one balancing execution. The scalar fields are filled by
// run_strict / run_classic for a single strongly connected matrix; the
// configuration echo and component list are filled by the full-matrix
// driver.
struct RunReport {
  std::string termination;  // balanced | iteration_cap
  std::string outer_exit;   // strict only: frozen_all | all_balanced
  std::int64_t steps_total = 0;
  std::int64_t steps_productive = 0;
  int phases = 0;               // strict only
  std::int64_t reactivations = 0;  // strict only
  double f_initial = 0.0;
  double f_final = 0.0;
  double max_imbalance = 0.0;  // max over indices of max{r,c}/min{r,c} - 1
  double wall_seconds = 0.0;
  ScalingVector x;

  // Filled by the driver.
  std::string variant;
  double epsilon = 0.0;
  double p = 1.0;
  std::uint64_t seed = 0;
  int n = 0;
  double max_imbalance_user = 0.0;  // in the user's L_p norm
  ScalingVector x_user;             // x / p
  std::vector<ComponentReport> components;
  int exit_code = 0;
};

// Stable field order, floats printed with 17 significant digits. Two runs
// with the same configuration serialize identically except for the
// wall_seconds field.
std::string report_to_json(const RunReport& report);

}  // namespace osborne
