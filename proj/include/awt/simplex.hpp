// Dense two-phase primal simplex for equality-form LPs:
//   min c'x  s.t.  A x = b,  x >= 0.
// Deterministic pivoting: largest-reduced-cost entering with lowest-index
// ties, Bland's rule after a degenerate run; used by the bicausal LP oracle
// and as an independent cross-check of the transportation solver.
#pragma once

#include <cstdint>
#include <vector>

namespace awt {

struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded, IterLimit };
  Status status = Status::Optimal;
  double objective = 0.0;
  std::vector<double> x;
};

// A is row-major (rows x nvars).
LpResult solve_lp_equality(int nvars, int rows, const std::vector<double>& A,
                           const std::vector<double>& b,
                           const std::vector<double>& c,
                           long max_iters = 200000);

}  // namespace awt
