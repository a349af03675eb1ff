// Exact balanced transportation solver (network simplex on the bipartite
// supply/demand graph).
//
// Supplies may be real; when they are integer-valued every pivot moves an
// integer amount, so flows and the marginal constraints are exact. The
// solver is deterministic: entering arcs come from a cyclic first-improving
// scan with a fixed cursor, leaving-arc ties break on the lowest arc index,
// and Bland's rule (lowest-index entering) engages after a long degenerate
// run to rule out cycling.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace awt {

struct PlanEntry {
  std::int32_t i = 0;
  std::int32_t j = 0;
  double mass = 0.0;
};

struct TransportSolution {
  double objective = 0.0;               // sum of flow * cost, in supply units
  std::vector<PlanEntry> plan;          // nonzero flows, arc-index order
  std::vector<double> row_potential;    // duals: u_i + v_j <= c(i,j)
  std::vector<double> col_potential;
  long pivots = 0;
};

namespace detail {

struct BasisWorkspace {
  std::vector<std::int32_t> arc_i, arc_j;  // basic arcs (n+m-1)
  std::vector<double> flow;
  std::vector<std::int32_t> adj_head, adj_next, adj_arc;  // adjacency over arcs
  std::vector<std::int32_t> parent, parent_arc, order;
  std::vector<std::int32_t> depth;
  std::vector<double> pot;  // rows 0..n-1, cols n..n+m-1
};

}  // namespace detail

template <class Cost>
TransportSolution solve_transport(std::span<const double> a,
                                  std::span<const double> b, Cost&& cost) {
  const int n = static_cast<int>(a.size());
  const int m = static_cast<int>(b.size());
  if (n == 0 || m == 0) throw std::invalid_argument("transport: empty side");
  const int nodes = n + m;
  const std::int64_t narcs = static_cast<std::int64_t>(n) * m;

  detail::BasisWorkspace ws;
  ws.arc_i.reserve(nodes);
  ws.arc_j.reserve(nodes);
  ws.flow.reserve(nodes);

  // Northwest-corner start. With lexicographically sorted atoms and
  // near-separable costs this is close to optimal already.
  {
    int i = 0, j = 0;
    double ra = a[0], rb = b[0];
    for (;;) {
      const double f = std::min(ra, rb);
      ws.arc_i.push_back(i);
      ws.arc_j.push_back(j);
      ws.flow.push_back(f);
      ra -= f;
      rb -= f;
      if (i == n - 1 && j == m - 1) break;
      if ((ra <= rb && i < n - 1) || j == m - 1) {
        ++i;
        ra = a[i];
      } else {
        ++j;
        rb = b[j];
      }
    }
    if (static_cast<int>(ws.flow.size()) != nodes - 1)
      throw std::logic_error("transport: bad initial basis");
  }

  ws.adj_head.assign(nodes, -1);
  ws.parent.assign(nodes, -1);
  ws.parent_arc.assign(nodes, -1);
  ws.depth.assign(nodes, 0);
  ws.pot.assign(nodes, 0.0);
  ws.order.resize(nodes);

  const auto rebuild = [&]() {
    const int nb = static_cast<int>(ws.flow.size());
    ws.adj_next.assign(2 * nb, -1);
    ws.adj_arc.assign(2 * nb, -1);
    std::fill(ws.adj_head.begin(), ws.adj_head.end(), -1);
    for (int k = 0; k < nb; ++k) {
      const int u = ws.arc_i[k];
      const int v = n + ws.arc_j[k];
      ws.adj_arc[2 * k] = k;
      ws.adj_next[2 * k] = ws.adj_head[u];
      ws.adj_head[u] = 2 * k;
      ws.adj_arc[2 * k + 1] = k;
      ws.adj_next[2 * k + 1] = ws.adj_head[v];
      ws.adj_head[v] = 2 * k + 1;
    }
    // BFS from node 0 (a spanning tree by basis invariant).
    int head = 0, tail = 0;
    ws.order[tail++] = 0;
    ws.parent[0] = -1;
    ws.parent_arc[0] = -1;
    ws.depth[0] = 0;
    std::vector<char> seen(nodes, 0);
    seen[0] = 1;
    while (head < tail) {
      const int u = ws.order[head++];
      for (int e = ws.adj_head[u]; e != -1; e = ws.adj_next[e]) {
        const int k = ws.adj_arc[e];
        const int other = (ws.arc_i[k] == u && e % 2 == 0) ? n + ws.arc_j[k]
                                                           : ws.arc_i[k];
        if (seen[other]) continue;
        seen[other] = 1;
        ws.parent[other] = u;
        ws.parent_arc[other] = k;
        ws.depth[other] = ws.depth[u] + 1;
        ws.order[tail++] = other;
      }
    }
    if (tail != nodes) throw std::logic_error("transport: basis not spanning");
    ws.pot[0] = 0.0;
    for (int idx = 1; idx < nodes; ++idx) {
      const int w = ws.order[idx];
      const int k = ws.parent_arc[w];
      const double c = cost(ws.arc_i[k], ws.arc_j[k]);
      ws.pot[w] = c - ws.pot[ws.parent[w]];
    }
  };

  rebuild();

  double cmax_seen = 1.0;
  std::int64_t cursor = 0;
  long degenerate_run = 0;
  bool bland = false;
  long pivots = 0;
  const long max_pivots = 200000 + 400L * nodes;

  std::vector<std::int32_t> path_arcs;
  std::vector<std::int8_t> path_sign;
  path_arcs.reserve(nodes);
  path_sign.reserve(nodes);

  for (;;) {
    // Entering arc.
    const double tol = 1e-11 * cmax_seen;
    std::int64_t entering = -1;
    const std::int64_t start = bland ? 0 : cursor;
    for (std::int64_t s = 0; s < narcs; ++s) {
      const std::int64_t k = bland ? s : (start + s) % narcs;
      const int i = static_cast<int>(k / m);
      const int j = static_cast<int>(k % m);
      const double c = cost(i, j);
      const double ac = std::fabs(c);
      if (ac > cmax_seen) cmax_seen = ac;
      if (c - ws.pot[i] - ws.pot[n + j] < -tol) {
        entering = k;
        break;
      }
    }
    if (entering < 0) break;  // optimal
    cursor = (entering + 1) % narcs;

    // Cycle: tree path from row node to col node plus the entering arc.
    const int ei = static_cast<int>(entering / m);
    const int ej = static_cast<int>(entering % m);
    path_arcs.clear();
    path_sign.clear();
    {
      int u = ei, v = n + ej;
      // Collect u-side and v-side arcs up to the LCA; u-side signs start at -.
      static thread_local std::vector<std::int32_t> up_u, up_v;
      up_u.clear();
      up_v.clear();
      int du = ws.depth[u], dv = ws.depth[v];
      while (du > dv) {
        up_u.push_back(ws.parent_arc[u]);
        u = ws.parent[u];
        --du;
      }
      while (dv > du) {
        up_v.push_back(ws.parent_arc[v]);
        v = ws.parent[v];
        --dv;
      }
      while (u != v) {
        up_u.push_back(ws.parent_arc[u]);
        u = ws.parent[u];
        up_v.push_back(ws.parent_arc[v]);
        v = ws.parent[v];
      }
      // Full node path row(ei) .. lca .. col(ej): arcs alternate -,+,-,...
      int sgn = -1;
      for (const int k : up_u) {
        path_arcs.push_back(k);
        path_sign.push_back(static_cast<std::int8_t>(sgn));
        sgn = -sgn;
      }
      // Signs on the v side continue the alternation from the far end:
      // the arc adjacent to col(ej) must be -, then alternate upward.
      const std::size_t lv = up_v.size();
      for (std::size_t r = 0; r < lv; ++r) {
        const int k = up_v[lv - 1 - r];  // from LCA down to v
        path_arcs.push_back(k);
        path_sign.push_back(static_cast<std::int8_t>(sgn));
        sgn = -sgn;
      }
      if (!path_sign.empty() && path_sign.back() != -1)
        throw std::logic_error("transport: cycle parity");
    }

    // Ratio test over minus arcs; ties on lowest arc index.
    double theta = std::numeric_limits<double>::infinity();
    int leaving_pos = -1;
    std::int64_t leaving_arc_index = -1;
    for (std::size_t s = 0; s < path_arcs.size(); ++s) {
      if (path_sign[s] != -1) continue;
      const int k = path_arcs[s];
      const double f = ws.flow[k];
      const std::int64_t aidx =
          static_cast<std::int64_t>(ws.arc_i[k]) * m + ws.arc_j[k];
      if (f < theta || (f == theta && aidx < leaving_arc_index)) {
        theta = f;
        leaving_pos = static_cast<int>(s);
        leaving_arc_index = aidx;
      }
    }
    if (leaving_pos < 0) throw std::logic_error("transport: no leaving arc");

    for (std::size_t s = 0; s < path_arcs.size(); ++s)
      ws.flow[path_arcs[s]] += path_sign[s] * theta;
    const int lk = path_arcs[leaving_pos];
    ws.arc_i[lk] = ei;
    ws.arc_j[lk] = ej;
    ws.flow[lk] = theta;

    if (theta == 0.0) {
      if (++degenerate_run > nodes) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }
    if (++pivots > max_pivots)
      throw std::runtime_error("transport: pivot limit exceeded");
    rebuild();
  }

  TransportSolution out;
  out.pivots = pivots;
  out.row_potential.assign(ws.pot.begin(), ws.pot.begin() + n);
  out.col_potential.assign(ws.pot.begin() + n, ws.pot.end());
  // Deterministic plan: basic arcs in arc-index order, zero flows dropped.
  std::vector<int> idx(ws.flow.size());
  for (std::size_t k = 0; k < idx.size(); ++k) idx[k] = static_cast<int>(k);
  std::sort(idx.begin(), idx.end(), [&](int x, int y) {
    return static_cast<std::int64_t>(ws.arc_i[x]) * m + ws.arc_j[x] <
           static_cast<std::int64_t>(ws.arc_i[y]) * m + ws.arc_j[y];
  });
  double obj = 0.0;
  for (const int k : idx) {
    const double f = ws.flow[k];
    if (f <= 0.0) continue;
    obj += f * cost(ws.arc_i[k], ws.arc_j[k]);
    out.plan.push_back(PlanEntry{ws.arc_i[k], ws.arc_j[k], f});
  }
  out.objective = obj;
  return out;
}

}  // namespace awt
