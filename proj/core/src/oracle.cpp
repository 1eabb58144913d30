#include "osborne/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "osborne/errors.hpp"
#include "osborne/preprocess.hpp"

namespace osborne {

OracleSolution brute_minimize(const SparseMatrix& A, double tolerance,
                              const ScalingVector* start) {
  const int n = A.size();
  if (n < 2 || n > 16)
    throw std::invalid_argument("oracle handles 2 <= n <= 16");
  if (!(tolerance > 0.0))
    throw std::invalid_argument("tolerance must be positive");
  if (!scc_decompose(A).strongly_connected())
    throw StructuralError("matrix is not strongly connected");

  std::vector<double> a(std::size_t(n) * n, 0.0);
  for (const Arc& arc : A.arcs()) a[std::size_t(arc.from) * n + arc.to] = arc.weight;

  ScalingVector x(n, 0.0);
  if (start) {
    if (static_cast<int>(start->size()) != n)
      throw std::invalid_argument("start vector dimension mismatch");
    x = *start;
  }

  auto row_sum = [&](int i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (a[std::size_t(i) * n + j] != 0.0)
        s += a[std::size_t(i) * n + j] * std::exp(x[i] - x[j]);
    return s;
  };
  auto col_sum = [&](int i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j)
      if (a[std::size_t(j) * n + i] != 0.0)
        s += a[std::size_t(j) * n + i] * std::exp(x[j] - x[i]);
    return s;
  };
  auto f_and_grad = [&](double& f, double& grad) {
    f = 0.0;
    grad = 0.0;
    for (int i = 0; i < n; ++i) {
      const double r = row_sum(i);
      const double c = col_sum(i);
      f += r;
      grad += std::abs(r - c);
    }
  };

  constexpr std::int64_t kMaxSteps = 1000000000;
  OracleSolution sol;
  while (true) {
    double f, grad;
    f_and_grad(f, grad);
    if (!std::isfinite(f)) throw OverflowError("oracle objective overflowed");
    if (grad <= tolerance * f) {
      sol.f = f;
      sol.grad_norm = grad;
      break;
    }
    for (int i = 0; i < n; ++i) {
      x[i] += 0.5 * (std::log(col_sum(i)) - std::log(row_sum(i)));
      ++sol.iterations;
    }
    if (sol.iterations > kMaxSteps)
      throw ConvergenceError("oracle failed to converge within 1e9 steps");
  }

  const double shift = x[0];
  for (double& v : x) v -= shift;
  x[0] = 0.0;
  sol.x = std::move(x);
  return sol;
}

}  // namespace osborne
