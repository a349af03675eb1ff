#include "awt/nested.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "awt/ot.hpp"
#include "awt/simplex.hpp"
#include "awt/transport.hpp"

namespace awt {

namespace {

double path_cost_pow(const double* x, const double* y, int d, int T,
                     double p) {
  double acc = 0.0;
  for (int t = 0; t < T; ++t) {
    double sq = 0.0;
    for (int c = 0; c < d; ++c) {
      const double diff = x[t * d + c] - y[t * d + c];
      sq += diff * diff;
    }
    acc += p == 2.0 ? sq : (p == 1.0 ? std::sqrt(sq) : std::pow(std::sqrt(sq), p));
  }
  return acc;
}

struct ScaledPair {
  std::vector<double> a, b;
  double mass_scale = 1.0;
};

// Conditional child weights count/parent_count on both sides, brought to the
// least common denominator (child counts stay well inside exact range).
ScaledPair scale_conditional(std::span<const std::int64_t> ca,
                             std::int64_t dena,
                             std::span<const std::int64_t> cb,
                             std::int64_t denb) {
  const std::int64_t g = std::gcd(dena, denb);
  const std::int64_t hi = dena / g;
  constexpr std::int64_t kMaxExact = std::int64_t{1} << 53;
  if (hi > kMaxExact / denb)
    throw std::overflow_error("aw_nested: conditional weight scale overflow");
  const std::int64_t lcm = hi * denb;
  const std::int64_t fa = lcm / dena;
  const std::int64_t fb = lcm / denb;
  ScaledPair s;
  s.a.reserve(ca.size());
  s.b.reserve(cb.size());
  for (const std::int64_t c : ca) s.a.push_back(static_cast<double>(c * fa));
  for (const std::int64_t c : cb) s.b.push_back(static_cast<double>(c * fb));
  s.mass_scale = static_cast<double>(lcm);
  return s;
}

// Exact 1-D W1 between the child measures of two nodes: CDF sweep with
// cumulative counts compared in integer units 1/(dena*denb).
double w1_children_sweep(const PathMeasureTree& A, int child_level,
                         std::int32_t ia, std::int32_t ib, std::int64_t dena,
                         const PathMeasureTree& B, std::int32_t ja,
                         std::int32_t jb, std::int64_t denb) {
  const auto& la = A.level(child_level);
  const auto& lb = B.level(child_level);
  std::int32_t i = ia, j = ja;
  __int128 ca = 0, cb = 0;
  const double unit = static_cast<double>(dena) * static_cast<double>(denb);
  double total = 0.0, prev = 0.0;
  bool have_prev = false;
  while (i < ib || j < jb) {
    double x;
    const double xa =
        i < ib ? A.node_point(child_level, i)[0] : 0.0;
    const double xb =
        j < jb ? B.node_point(child_level, j)[0] : 0.0;
    if (j >= jb || (i < ib && xa <= xb))
      x = xa;
    else
      x = xb;
    if (have_prev) {
      const __int128 diff = ca * denb - cb * dena;
      total += (static_cast<double>(diff < 0 ? -diff : diff) / unit) *
               (x - prev);
    }
    while (i < ib && A.node_point(child_level, i)[0] == x)
      ca += la.counts[i++];
    while (j < jb && B.node_point(child_level, j)[0] == x)
      cb += lb.counts[j++];
    prev = x;
    have_prev = true;
  }
  return total;
}

}  // namespace

AwResult aw_nested(const PathMeasureTree& A, const PathMeasureTree& B,
                   const AwOptions& opt) {
  if (!(A.dims() == B.dims()))
    throw std::invalid_argument("aw_nested: dims mismatch");
  if (opt.p < 1.0) throw std::invalid_argument("aw_nested: p must be >= 1");
  const int T = A.dims().T;
  const int d = A.dims().d;

  // Cost model: levels solved by the flow solver contribute their full arc
  // count, the final-level 1-D sweep contributes linearly.
  {
    std::int64_t effective = 0;
    for (int t = 1; t <= T; ++t) {
      const std::int64_t na = static_cast<std::int64_t>(A.node_count(t));
      const std::int64_t nb = static_cast<std::int64_t>(B.node_count(t));
      const bool fast = opt.fast_1d && d == 1 && opt.p == 1.0 && t == T;
      effective += fast ? na + nb : na * nb;
      if (effective > opt.pair_budget)
        throw BudgetExceeded("aw_nested: node-pair budget exceeded", effective,
                             opt.pair_budget);
    }
  }

  AwResult out;
  if (opt.keep_tables) {
    out.tables.levels.resize(T);
    out.tables.shapes.resize(T);
    out.tables.shapes[T - 1] = {A.node_count(T), B.node_count(T)};
    // V_T is identically zero and kept empty.
  }

  std::vector<double> vnext;  // V_{t+1}, row-major over next-level nodes
  std::vector<double> v;
  for (int t = T - 1; t >= 1; --t) {
    const auto& la = A.level(t);
    const auto& lb = B.level(t);
    const std::size_t na = la.node_count();
    const std::size_t nb = lb.node_count();
    const std::size_t stride_next = B.node_count(t + 1);
    const bool fast_level =
        opt.fast_1d && d == 1 && opt.p == 1.0 && t == T - 1;
    v.assign(na * nb, 0.0);
    for (std::size_t i = 0; i < na; ++i) {
      const std::int32_t ia = la.child_begin[i], ib = la.child_end[i];
      for (std::size_t j = 0; j < nb; ++j) {
        const std::int32_t ja = lb.child_begin[j], jb = lb.child_end[j];
        if (fast_level) {
          v[i * nb + j] = w1_children_sweep(A, t + 1, ia, ib, la.counts[i], B,
                                            ja, jb, lb.counts[j]);
          continue;
        }
        const ScaledPair s = scale_conditional(
            std::span<const std::int64_t>(A.level(t + 1).counts)
                .subspan(ia, ib - ia),
            la.counts[i],
            std::span<const std::int64_t>(B.level(t + 1).counts)
                .subspan(ja, jb - ja),
            lb.counts[j]);
        const bool last_level = t == T - 1;  // V_T = 0, not materialized
        const auto sol = solve_transport(
            std::span<const double>(s.a), std::span<const double>(s.b),
            [&](int ci, int cj) {
              const double step = euclid_pow(A.node_point(t + 1, ia + ci),
                                             B.node_point(t + 1, ja + cj),
                                             opt.p);
              return last_level
                         ? step
                         : step + vnext[(ia + ci) * stride_next + (ja + cj)];
            });
        v[i * nb + j] = sol.objective / s.mass_scale;
      }
    }
    if (opt.keep_tables) {
      out.tables.levels[t - 1] = v;
      out.tables.shapes[t - 1] = {na, nb};
    }
    vnext.swap(v);
  }

  // Root: couple the level-1 marginals with the level-1 value-to-go.
  {
    const auto& la = A.level(1);
    const auto& lb = B.level(1);
    const std::size_t nb = lb.node_count();
    const ScaledPair s = scale_conditional(la.counts, A.total(), lb.counts,
                                           B.total());
    const auto sol =
        solve_transport(std::span<const double>(s.a),
                        std::span<const double>(s.b), [&](int i, int j) {
                          return euclid_pow(A.node_point(1, i),
                                            B.node_point(1, j), opt.p) +
                                 (vnext.empty() ? 0.0 : vnext[i * nb + j]);
                        });
    const double objective = sol.objective / s.mass_scale;
    out.value = opt.p == 1.0 ? objective
                             : std::pow(std::max(objective, 0.0), 1.0 / opt.p);
  }
  return out;
}

double bicausal_lp_oracle(const PathMeasureTree& A, const PathMeasureTree& B,
                          double p, std::size_t leaf_pair_cap) {
  if (!(A.dims() == B.dims()))
    throw std::invalid_argument("bicausal_lp_oracle: dims mismatch");
  const std::size_t ka = A.leaf_count(), kb = B.leaf_count();
  if (ka * kb > leaf_pair_cap)
    throw std::invalid_argument("bicausal_lp_oracle: leaf pair cap exceeded");
  const int T = A.dims().T;
  const int d = A.dims().d;
  const int nvars = static_cast<int>(ka * kb);

  std::vector<double> rows_flat;
  std::vector<double> rhs;
  const auto add_row = [&](const std::vector<double>& row, double b) {
    rows_flat.insert(rows_flat.end(), row.begin(), row.end());
    rhs.push_back(b);
  };

  std::vector<double> row(nvars, 0.0);
  // Marginals.
  for (std::size_t u = 0; u < ka; ++u) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t vv = 0; vv < kb; ++vv) row[u * kb + vv] = 1.0;
    add_row(row, static_cast<double>(A.leaf_counts()[u]) /
                     static_cast<double>(A.total()));
  }
  for (std::size_t vv = 0; vv < kb; ++vv) {
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t u = 0; u < ka; ++u) row[u * kb + vv] = 1.0;
    add_row(row, static_cast<double>(B.leaf_counts()[vv]) /
                     static_cast<double>(B.total()));
  }

  // Causality, both directions. For each time t, level-t node pair (i, j)
  // and child a of i:
  //   count(i) * pi(L(a) x L(j)) - count(a) * pi(L(i) x L(j)) = 0,
  // which is the linearized kernel-marginal constraint.
  const auto add_causality = [&](const PathMeasureTree& X,
                                 const PathMeasureTree& Y, bool x_is_rows) {
    for (int t = 1; t < T; ++t) {
      const auto& lx = X.level(t);
      const auto& ly = Y.level(t);
      const auto& lxn = X.level(t + 1);
      for (std::size_t i = 0; i < lx.node_count(); ++i) {
        const std::int32_t ua = lx.row_begin[i], ub = lx.row_begin[i + 1];
        for (std::int32_t a = lx.child_begin[i]; a < lx.child_end[i]; ++a) {
          const std::int32_t ca = lxn.row_begin[a], cb2 = lxn.row_begin[a + 1];
          for (std::size_t j = 0; j < ly.node_count(); ++j) {
            const std::int32_t va = ly.row_begin[j], vb = ly.row_begin[j + 1];
            std::fill(row.begin(), row.end(), 0.0);
            const double wi = static_cast<double>(lx.counts[i]);
            const double wa = static_cast<double>(lxn.counts[a]);
            for (std::int32_t u = ca; u < cb2; ++u)
              for (std::int32_t vv = va; vv < vb; ++vv)
                row[x_is_rows ? u * kb + vv : vv * kb + u] += wi;
            for (std::int32_t u = ua; u < ub; ++u)
              for (std::int32_t vv = va; vv < vb; ++vv)
                row[x_is_rows ? u * kb + vv : vv * kb + u] -= wa;
            add_row(row, 0.0);
          }
        }
      }
    }
  };
  add_causality(A, B, true);
  add_causality(B, A, false);

  std::vector<double> cost(nvars);
  const int F = A.dims().flat();
  for (std::size_t u = 0; u < ka; ++u)
    for (std::size_t vv = 0; vv < kb; ++vv)
      cost[u * kb + vv] = path_cost_pow(A.leaf_rows().data() + u * F,
                                        B.leaf_rows().data() + vv * F, d, T, p);

  const int nrows = static_cast<int>(rhs.size());
  const LpResult res =
      solve_lp_equality(nvars, nrows, rows_flat, rhs, cost);
  if (res.status != LpResult::Status::Optimal)
    throw std::runtime_error("bicausal_lp_oracle: LP not solved to optimality");
  return p == 1.0 ? res.objective
                  : std::pow(std::max(res.objective, 0.0), 1.0 / p);
}

double w_flat(const PathMeasureTree& A, const PathMeasureTree& B, double p,
              std::int64_t pair_budget) {
  if (!(A.dims() == B.dims()))
    throw std::invalid_argument("w_flat: dims mismatch");
  const std::int64_t arcs =
      static_cast<std::int64_t>(A.leaf_count()) * B.leaf_count();
  if (arcs > pair_budget)
    throw BudgetExceeded("w_flat: leaf-pair budget exceeded", arcs,
                         pair_budget);
  const int d = A.dims().d, T = A.dims().T, F = A.dims().flat();
  const ScaledPair s =
      scale_conditional(A.leaf_counts(), A.total(), B.leaf_counts(), B.total());
  const auto sol = solve_transport(
      std::span<const double>(s.a), std::span<const double>(s.b),
      [&](int i, int j) {
        return path_cost_pow(A.leaf_rows().data() + static_cast<std::size_t>(i) * F,
                             B.leaf_rows().data() + static_cast<std::size_t>(j) * F,
                             d, T, p);
      });
  const double objective = sol.objective / s.mass_scale;
  return p == 1.0 ? objective : std::pow(std::max(objective, 0.0), 1.0 / p);
}

}  // namespace awt
