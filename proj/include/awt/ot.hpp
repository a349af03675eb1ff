// Exact discrete optimal transport between finitely supported measures:
// closed-form 1-D W1 and general-d W_p via the transportation solver.
#pragma once

#include <cstdint>
#include <vector>

#include "awt/measure.hpp"
#include "awt/transport.hpp"

namespace awt {

struct Coupling {
  std::vector<PlanEntry> entries;  // masses, arc-index order
  double value = 0.0;              // objective attained (sum cost * mass)
};

struct WpResult {
  double value = 0.0;      // (objective)^(1/p)
  double objective = 0.0;  // sum of cost * mass (unrooted)
  Coupling plan;
  bool exact = true;       // solved on integer-scaled supplies
  std::vector<double> row_potential;  // duals of the mass-unit problem
  std::vector<double> col_potential;
};

// W1 between 1-D measures by a sorted sweep over the merged CDFs,
// cumulative weights compared exactly in integer arithmetic.
double w1_exact_1d(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

// W_p with cost |x_i - y_j|_2^p. Supplies are scaled to a common integer
// denominator when that fits exact double range; otherwise the solver runs
// on real weights and the result is flagged exact=false.
WpResult wp_discrete(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                     double p);

// Same solver with cost |x_i - y_j|^p + vtg(i,j); returns the unrooted
// objective in `objective` (value is left equal to objective; root-taking
// is the caller's step). vtg is row-major size(mu) x size(nu).
WpResult wp_with_value_to_go(const DiscreteMeasure& mu,
                             const DiscreteMeasure& nu, double p,
                             const std::vector<double>& vtg);

// |x - y|_2 on R^d raised to p (p == 1 and p == 2 fast-pathed).
double euclid_pow(std::span<const double> x, std::span<const double> y,
                  double p);

}  // namespace awt
