#include "awt/simplex.hpp"

#include <cmath>
#include <stdexcept>

namespace awt {

namespace {

struct Tableau {
  int rows;
  int cols;  // nvars + rows artificials + 1 rhs
  std::vector<double> t;
  std::vector<int> basis;
  std::vector<double> rc;  // reduced-cost row
  double obj = 0.0;

  double& at(int r, int c) { return t[static_cast<std::size_t>(r) * cols + c]; }
  double at(int r, int c) const {
    return t[static_cast<std::size_t>(r) * cols + c];
  }
};

void pivot(Tableau& tb, int pr, int pc) {
  const double pivot_val = tb.at(pr, pc);
  const double inv = 1.0 / pivot_val;
  for (int c = 0; c < tb.cols; ++c) tb.at(pr, c) *= inv;
  tb.at(pr, pc) = 1.0;
  for (int r = 0; r < tb.rows; ++r) {
    if (r == pr) continue;
    const double f = tb.at(r, pc);
    if (f == 0.0) continue;
    for (int c = 0; c < tb.cols; ++c) tb.at(r, c) -= f * tb.at(pr, c);
    tb.at(r, pc) = 0.0;
  }
  const double f = tb.rc[pc];
  if (f != 0.0) {
    for (int c = 0; c < tb.cols - 1; ++c) tb.rc[c] -= f * tb.at(pr, c);
    tb.rc[pc] = 0.0;
    tb.obj += f * tb.at(pr, tb.cols - 1);
  }
  tb.basis[pr] = pc;
}

enum class RunStatus { Optimal, Unbounded, IterLimit };

RunStatus optimize(Tableau& tb, int active_cols, double rc_tol, double piv_tol,
                   long max_iters) {
  const int rhs = tb.cols - 1;
  long degenerate_run = 0;
  bool bland = false;
  for (long it = 0; it < max_iters; ++it) {
    int entering = -1;
    if (bland) {
      for (int c = 0; c < active_cols; ++c)
        if (tb.rc[c] < -rc_tol) {
          entering = c;
          break;
        }
    } else {
      double best = -rc_tol;
      for (int c = 0; c < active_cols; ++c)
        if (tb.rc[c] < best) {
          best = tb.rc[c];
          entering = c;
        }
    }
    if (entering < 0) return RunStatus::Optimal;
    // Prefer driving a zero-rhs artificial row out on any nonzero pivot so
    // artificials can never regain mass.
    int leaving = -1;
    for (int r = 0; r < tb.rows; ++r) {
      if (tb.basis[r] >= active_cols && std::fabs(tb.at(r, rhs)) <= piv_tol &&
          std::fabs(tb.at(r, entering)) > piv_tol) {
        leaving = r;
        break;
      }
    }
    if (leaving < 0) {
      double best_ratio = 0.0;
      for (int r = 0; r < tb.rows; ++r) {
        const double coeff = tb.at(r, entering);
        if (coeff <= piv_tol) continue;
        const double ratio = tb.at(r, rhs) / coeff;
        if (leaving < 0 || ratio < best_ratio - 1e-15 ||
            (std::fabs(ratio - best_ratio) <= 1e-15 &&
             tb.basis[r] < tb.basis[leaving])) {
          best_ratio = ratio;
          leaving = r;
        }
      }
      if (leaving < 0) return RunStatus::Unbounded;
      if (best_ratio <= piv_tol) {
        if (++degenerate_run > tb.rows + active_cols) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
    }
    pivot(tb, leaving, entering);
  }
  return RunStatus::IterLimit;
}

}  // namespace

LpResult solve_lp_equality(int nvars, int rows, const std::vector<double>& A,
                           const std::vector<double>& b,
                           const std::vector<double>& c, long max_iters) {
  if (nvars < 1 || rows < 1)
    throw std::invalid_argument("solve_lp_equality: empty problem");
  if (A.size() != static_cast<std::size_t>(nvars) * rows ||
      b.size() != static_cast<std::size_t>(rows) ||
      c.size() != static_cast<std::size_t>(nvars))
    throw std::invalid_argument("solve_lp_equality: shape mismatch");

  double scale = 1.0;
  for (const double v : A) scale = std::max(scale, std::fabs(v));
  for (const double v : b) scale = std::max(scale, std::fabs(v));
  const double piv_tol = 1e-11 * scale;
  const double rc_tol = 1e-10 * scale;

  Tableau tb;
  tb.rows = rows;
  tb.cols = nvars + rows + 1;
  tb.t.assign(static_cast<std::size_t>(rows) * tb.cols, 0.0);
  tb.basis.resize(rows);
  const int rhs = tb.cols - 1;
  for (int r = 0; r < rows; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (int v = 0; v < nvars; ++v)
      tb.at(r, v) = sign * A[static_cast<std::size_t>(r) * nvars + v];
    tb.at(r, nvars + r) = 1.0;
    tb.at(r, rhs) = sign * b[r];
    tb.basis[r] = nvars + r;
  }

  // Phase 1: minimize the sum of artificials.
  tb.rc.assign(tb.cols - 1, 0.0);
  tb.obj = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (int v = 0; v < nvars; ++v) tb.rc[v] -= tb.at(r, v);
    tb.obj += tb.at(r, rhs);
  }
  RunStatus rs = optimize(tb, nvars, rc_tol, piv_tol, max_iters);
  if (rs == RunStatus::IterLimit)
    return {LpResult::Status::IterLimit, 0.0, {}};
  if (tb.obj > 1e-7 * scale) return {LpResult::Status::Infeasible, 0.0, {}};

  // Phase 2 with the real costs; artificial columns stay barred.
  tb.rc.assign(tb.cols - 1, 0.0);
  for (int v = 0; v < nvars; ++v) tb.rc[v] = c[v];
  tb.obj = 0.0;
  for (int r = 0; r < rows; ++r) {
    const int bv = tb.basis[r];
    if (bv >= nvars) continue;
    const double cb = c[bv];
    if (cb == 0.0) continue;
    for (int v = 0; v < tb.cols - 1; ++v) tb.rc[v] -= cb * tb.at(r, v);
    tb.obj += cb * tb.at(r, rhs);
  }
  for (int v = nvars; v < tb.cols - 1; ++v) tb.rc[v] = 0.0;
  rs = optimize(tb, nvars, rc_tol, piv_tol, max_iters);
  if (rs == RunStatus::IterLimit)
    return {LpResult::Status::IterLimit, 0.0, {}};
  if (rs == RunStatus::Unbounded)
    return {LpResult::Status::Unbounded, 0.0, {}};

  LpResult out;
  out.status = LpResult::Status::Optimal;
  out.x.assign(nvars, 0.0);
  for (int r = 0; r < rows; ++r)
    if (tb.basis[r] < nvars) out.x[tb.basis[r]] = tb.at(r, rhs);
  out.objective = tb.obj;
  return out;
}

}  // namespace awt
