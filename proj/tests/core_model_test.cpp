#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "osborne/errors.hpp"
#include "osborne/objective.hpp"
#include "osborne/oracle.hpp"
#include "osborne/scaled_weights.hpp"
#include "osborne/sparse_matrix.hpp"
#include "support/fixtures.hpp"

using namespace osborne;
namespace ts = osborne::testsupport;

TEST_CASE("sparse matrix validates its construction") {
  CHECK_THROWS_AS(SparseMatrix(2, {{0, 0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(2, {{0, 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(2, {{0, 1, -2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseMatrix(2, {{0, 1, 1.0}, {0, 1, 2.0}}),
                  std::invalid_argument);

  const SparseMatrix a = ts::three_cycle();
  CHECK(a.size() == 3);
  CHECK(a.arc_count() == 3);
  CHECK(a.min_entry() == 1.0);
  CHECK(a.total() == 7.0);
  CHECK(a.dynamic_range() == 7.0);
  CHECK(a.out_degree(0) == 1);
  CHECK(a.in_degree(0) == 1);
  CHECK(a.arc(a.out_arcs(1)[0]).to == 2);

  CHECK_THROWS_AS(SparseMatrix(3, {}).dynamic_range(), StructuralError);
}

TEST_CASE("f_value on pinned examples") {
  const SparseMatrix sym(2, {{0, 1, 1.0}, {1, 0, 1.0}});
  CHECK(f_value(sym, {0.0, 0.0}) == 2.0);

  const SparseMatrix two = ts::two_by_two();
  CHECK(f_value(two, {std::log(0.5), 0.0}) == doctest::Approx(4.0).epsilon(1e-12));

  CHECK_THROWS_AS(f_value(two, {0.0, 0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(f_value(ts::three_cycle(), {800.0, -800.0, 0.0}),
                  OverflowError);
}

TEST_CASE("f at the three-cycle optimum is 6 with all arcs at 2") {
  // Cycle products are scaling-invariant, so at the optimum all three arcs
  // sit at (1*2*4)^(1/3) = 2.
  const SparseMatrix a = ts::three_cycle();
  const OracleSolution sol = brute_minimize(a, 1e-12);
  CHECK(sol.f == doctest::Approx(6.0).epsilon(1e-9));
  const ScaledWeights w(a, sol.x);
  for (int id = 0; id < a.arc_count(); ++id)
    CHECK(w.arc_weight(id) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("gradient on pinned examples") {
  const ScalingVector zero3(3, 0.0);
  const ScalingVector g0 = gradient(ts::balanced_three_cycle(), zero3);
  for (double v : g0) CHECK(std::abs(v) <= 1e-15);

  const ScalingVector g = gradient(ts::two_by_two(), {0.0, 0.0});
  CHECK(g[0] == 3.0);
  CHECK(g[1] == -3.0);
}

TEST_CASE("gradient matches central finite differences") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 6;
    const SparseMatrix a =
        ts::random_instance(n, 0.5, 7000 + trial, 0.1, 10.0);
    const ScalingVector x = ts::random_scaling(n, 900 + trial, 0.5);
    const ScalingVector g = gradient(a, x);
    const ScalingVector fd = ts::fd_gradient(a, x, 1e-6);
    const double f = f_value(a, x);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const double scale =
          std::max({std::abs(g[i]), std::abs(fd[i]), 1e-9 * f});
      CHECK(std::abs(g[i] - fd[i]) <= 1e-6 * scale);
      sum += g[i];
    }
    CHECK(std::abs(sum) <= 1e-12 * f);
  }
}

TEST_CASE("contracted objective on pinned examples") {
  const SparseMatrix a = ts::three_cycle();
  const ScalingVector x = ts::random_scaling(3, 41, 0.7);
  CHECK(contracted_f(a, x, std::vector<int>{}) ==
        doctest::Approx(f_value(a, x)).epsilon(1e-15));

  const std::vector<int> all{0, 1, 2};
  CHECK(contracted_f(a, ScalingVector(3, 0.0), all) == 0.0);

  const std::vector<int> third{2};
  CHECK(contracted_f(a, ScalingVector(3, 0.0), third) == 7.0);

  CHECK_THROWS_AS(contracted_f(a, x, std::vector<int>{5}),
                  std::invalid_argument);
}

TEST_CASE("contracted objective is non-increasing under set inclusion") {
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 4 + trial % 5;
    const SparseMatrix a = ts::random_instance(n, 0.4, 1300 + trial);
    const ScalingVector x = ts::random_scaling(n, 77 + trial, 1.0);
    ts::Rng rng(500 + trial);
    std::vector<int> small, large;
    for (int i = 0; i < n; ++i) {
      const int draw = rng.below(3);
      if (draw == 0) small.push_back(i);
      if (draw != 2) large.push_back(i);  // small is a subset of large
    }
    CHECK(contracted_f(a, x, large) <=
          contracted_f(a, x, small) * (1.0 + 1e-12));
  }
}

TEST_CASE("contracted gradient norm agrees with an explicit contraction") {
  const SparseMatrix a = ts::three_cycle();
  const ScalingVector zero(3, 0.0);

  // Empty contraction: plain gradient norm, no super-node term.
  const ScalingVector g = gradient(a, zero);
  double l1 = 0.0;
  for (double v : g) l1 += std::abs(v);
  CHECK(contracted_gradient_norm(a, zero, std::vector<int>{}) ==
        doctest::Approx(l1).epsilon(1e-15));

  // Balanced matrix: zero for any contraction.
  const SparseMatrix b = ts::balanced_three_cycle();
  CHECK(contracted_gradient_norm(b, zero, std::vector<int>{1}) <= 1e-15);

  // Four-node fixture against the explicitly built contracted graph.
  const SparseMatrix four(4, {{0, 1, 2.0},
                              {1, 2, 5.0},
                              {2, 3, 1.5},
                              {3, 0, 4.0},
                              {0, 2, 0.5},
                              {2, 0, 3.0},
                              {1, 3, 2.5}});
  const std::vector<int> frozen{3};
  const ScalingVector x = ts::random_scaling(4, 99, 0.6);
  CHECK(contracted_gradient_norm(four, x, frozen) ==
        doctest::Approx(ts::contraction_oracle_norm(four, x, frozen))
            .epsilon(1e-12));

  CHECK_THROWS_AS(
      contracted_gradient_norm(a, zero, std::vector<int>{0, 1, 2}),
      std::invalid_argument);
}

TEST_CASE("contracted gradient norm matches the oracle on random instances") {
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 3 + trial % 7;
    const SparseMatrix a = ts::random_instance(n, 0.5, 2200 + trial);
    const ScalingVector x = ts::random_scaling(n, 31 + trial, 0.8);
    ts::Rng rng(800 + trial);
    std::vector<int> frozen;
    for (int i = 0; i < n; ++i)
      if (rng.below(3) == 0 && static_cast<int>(frozen.size()) < n - 1)
        frozen.push_back(i);
    const double got = contracted_gradient_norm(a, x, frozen);
    const double want = ts::contraction_oracle_norm(a, x, frozen);
    CHECK(got == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("convexity probe") {
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 3 + trial % 6;
    const SparseMatrix a = ts::random_instance(n, 0.5, 3100 + trial);
    const ScalingVector x = ts::random_scaling(n, 11 + trial, 1.2);
    const ScalingVector y = ts::random_scaling(n, 12 + trial, 1.2);
    ts::Rng rng(13 + trial);
    const double lambda = rng.uniform(0.01, 0.99);
    ScalingVector mix(n);
    for (int i = 0; i < n; ++i) mix[i] = lambda * x[i] + (1 - lambda) * y[i];
    const double fx = f_value(a, x), fy = f_value(a, y);
    CHECK(f_value(a, mix) <= lambda * fx + (1 - lambda) * fy + 1e-9 * (fx + fy));
  }
}

TEST_CASE("scaled weights stay consistent with fresh recomputation") {
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 4 + trial % 4;
    const SparseMatrix a = ts::random_instance(n, 0.5, 4400 + trial);
    ScaledWeights w(a);
    ts::Rng rng(21 + trial);
    for (int step = 0; step < 400; ++step) {
      w.balance_index(rng.below(n));
      if (step % 37 != 0) continue;
      const ScaledWeights fresh(a, w.scaling());
      CHECK(w.total() == doctest::Approx(fresh.total()).epsilon(1e-9));
      double row_sum = 0.0, col_sum = 0.0;
      for (int i = 0; i < n; ++i) {
        CHECK(w.row_norm(i) ==
              doctest::Approx(fresh.row_norm(i)).epsilon(1e-9));
        CHECK(w.col_norm(i) ==
              doctest::Approx(fresh.col_norm(i)).epsilon(1e-9));
        row_sum += w.row_norm(i);
        col_sum += w.col_norm(i);
      }
      CHECK(row_sum == doctest::Approx(w.total()).epsilon(1e-9));
      CHECK(col_sum == doctest::Approx(w.total()).epsilon(1e-9));
    }
  }
}

TEST_CASE("scaled arc weights stay inside the dynamic-range envelope") {
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 4 + trial;
    const SparseMatrix a = ts::random_instance(n, 0.4, 5500 + trial);
    const double s = a.total();
    const double lo =
        std::exp(n * (std::log(a.min_entry()) - std::log(s)) + std::log(s));
    ScaledWeights w(a);
    ts::Rng rng(61 + trial);
    for (int step = 0; step < 300; ++step) {
      w.balance_index(rng.below(n));
      if (step % 10 != 0) continue;
      for (int id = 0; id < a.arc_count(); ++id) {
        CHECK(w.arc_weight(id) >= lo * (1.0 - 1e-9));
        CHECK(w.arc_weight(id) <= s * (1.0 + 1e-9));
      }
    }
  }
}
