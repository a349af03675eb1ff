#include "awt/ot.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace awt {

double euclid_pow(std::span<const double> x, std::span<const double> y,
                  double p) {
  double sq = 0.0;
  for (std::size_t c = 0; c < x.size(); ++c) {
    const double diff = x[c] - y[c];
    sq += diff * diff;
  }
  if (p == 2.0) return sq;
  const double dist = std::sqrt(sq);
  if (p == 1.0) return dist;
  return std::pow(dist, p);
}

double w1_exact_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (mu.d != 1 || nu.d != 1)
    throw std::invalid_argument("w1_exact_1d: measures must be 1-D");
  // Atoms are ascending by canonical construction; integrate |F_mu - F_nu|
  // over the merged support. Cumulative weights are compared exactly in
  // integer units 1/(denom_mu*denom_nu) when both sides are rational.
  const std::size_t n = mu.size(), m = nu.size();
  std::size_t i = 0, j = 0;
  double total = 0.0;
  double prev = 0.0;
  bool have_prev = false;
  if (mu.exact && nu.exact) {
    const double unit =
        static_cast<double>(mu.denom) * static_cast<double>(nu.denom);
    __int128 ca = 0, cb = 0;
    while (i < n || j < m) {
      double x;
      if (j >= m || (i < n && mu.atoms[i] <= nu.atoms[j]))
        x = mu.atoms[i];
      else
        x = nu.atoms[j];
      if (have_prev) {
        const __int128 diff = ca * nu.denom - cb * mu.denom;
        const double gap =
            static_cast<double>(diff < 0 ? -diff : diff) / unit;
        total += gap * (x - prev);
      }
      while (i < n && mu.atoms[i] == x) ca += mu.counts[i++];
      while (j < m && nu.atoms[j] == x) cb += nu.counts[j++];
      prev = x;
      have_prev = true;
    }
    return total;
  }
  double fa = 0.0, fb = 0.0;
  while (i < n || j < m) {
    double x;
    if (j >= m || (i < n && mu.atoms[i] <= nu.atoms[j]))
      x = mu.atoms[i];
    else
      x = nu.atoms[j];
    if (have_prev) total += std::fabs(fa - fb) * (x - prev);
    while (i < n && mu.atoms[i] == x) fa += mu.weights[i++];
    while (j < m && nu.atoms[j] == x) fb += nu.weights[j++];
    prev = x;
    have_prev = true;
  }
  return total;
}

namespace {

struct Supplies {
  std::vector<double> a, b;
  double mass_scale = 1.0;  // masses = flow / mass_scale
  bool exact = true;
};

// Integer supplies on the least common denominator when that stays within
// exact double range; otherwise real weights with the documented tolerance.
Supplies scale_supplies(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  Supplies s;
  if (mu.exact && nu.exact) {
    const std::int64_t g = std::gcd(mu.denom, nu.denom);
    const std::int64_t hi = mu.denom / g;
    constexpr std::int64_t kMaxExact = std::int64_t{1} << 53;
    if (hi <= kMaxExact / nu.denom) {
      const std::int64_t lcm = hi * nu.denom;
      const std::int64_t fa = lcm / mu.denom;
      const std::int64_t fb = lcm / nu.denom;
      s.a.reserve(mu.size());
      s.b.reserve(nu.size());
      for (const std::int64_t c : mu.counts)
        s.a.push_back(static_cast<double>(c * fa));
      for (const std::int64_t c : nu.counts)
        s.b.push_back(static_cast<double>(c * fb));
      s.mass_scale = static_cast<double>(lcm);
      s.exact = true;
      return s;
    }
  }
  s.a = mu.weights;
  s.b = nu.weights;
  s.mass_scale = 1.0;
  s.exact = false;
  return s;
}

// Deterministic total preorder on measures; used to canonicalize the
// orientation of a solve so that wp(mu, nu) and wp(nu, mu) run the exact
// same pivots and return bit-identical values.
bool measure_less(const DiscreteMeasure& a, const DiscreteMeasure& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.atoms != b.atoms) return a.atoms < b.atoms;
  return a.weights < b.weights;
}

template <class Cost>
WpResult run_transport(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                       Cost&& cost) {
  const bool transpose = measure_less(nu, mu);
  const DiscreteMeasure& lhs = transpose ? nu : mu;
  const DiscreteMeasure& rhs = transpose ? mu : nu;
  const Supplies s = scale_supplies(lhs, rhs);
  TransportSolution sol = solve_transport(
      std::span<const double>(s.a), std::span<const double>(s.b),
      [&](int i, int j) { return transpose ? cost(j, i) : cost(i, j); });
  WpResult out;
  out.exact = s.exact;
  out.objective = sol.objective / s.mass_scale;
  if (transpose) {
    out.row_potential = std::move(sol.col_potential);
    out.col_potential = std::move(sol.row_potential);
    for (auto& e : sol.plan) std::swap(e.i, e.j);
    std::sort(sol.plan.begin(), sol.plan.end(),
              [&](const PlanEntry& x, const PlanEntry& y) {
                return static_cast<std::int64_t>(x.i) * nu.size() + x.j <
                       static_cast<std::int64_t>(y.i) * nu.size() + y.j;
              });
  }
  out.plan.entries = std::move(sol.plan);
  for (auto& e : out.plan.entries) e.mass /= s.mass_scale;
  out.plan.value = out.objective;
  return out;
}

}  // namespace

WpResult wp_discrete(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     double p) {
  if (mu.d != nu.d) throw std::invalid_argument("wp_discrete: dims mismatch");
  if (p < 1.0) throw std::invalid_argument("wp_discrete: p must be >= 1");
  WpResult out = run_transport(mu, nu, [&](int i, int j) {
    return euclid_pow(mu.atom(i), nu.atom(j), p);
  });
  out.value = p == 1.0 ? out.objective
                       : std::pow(std::max(out.objective, 0.0), 1.0 / p);
  return out;
}

WpResult wp_with_value_to_go(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, double p,
                             const std::vector<double>& vtg) {
  if (mu.d != nu.d)
    throw std::invalid_argument("wp_with_value_to_go: dims mismatch");
  if (vtg.size() != mu.size() * nu.size())
    throw std::invalid_argument("wp_with_value_to_go: vtg shape mismatch");
  const std::size_t stride = nu.size();
  WpResult out = run_transport(mu, nu, [&](int i, int j) {
    return euclid_pow(mu.atom(i), nu.atom(j), p) + vtg[i * stride + j];
  });
  out.value = out.objective;  // unrooted by contract
  return out;
}

}  // namespace awt
