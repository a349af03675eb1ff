// Shared helpers for the test suites: seeded random trees and measures.
#pragma once

#include <cstdint>
#include <vector>

#include "awt/measure.hpp"
#include "awt/rng.hpp"

namespace awt::testutil {

// Random path-measure tree with frequent shared prefixes: coordinates come
// from a small dyadic set so trees really branch. Counts are small integers,
// so costs and masses stay exactly representable.
inline PathMeasureTree random_tree(Rng& rng, Dims dims, int max_leaves = 12,
                                   int grid_halfrange = 4) {
  const int leaves =
      1 + static_cast<int>(rng.uniform01() * max_leaves);
  std::vector<double> paths;
  std::vector<std::int64_t> counts;
  for (int k = 0; k < leaves; ++k) {
    for (int c = 0; c < dims.flat(); ++c) {
      const int step =
          static_cast<int>(rng.uniform01() * (2 * grid_halfrange + 1)) -
          grid_halfrange;
      paths.push_back(step / 4.0);
    }
    counts.push_back(1 + static_cast<std::int64_t>(rng.uniform01() * 8));
  }
  return PathMeasureTree(dims, std::move(paths), std::move(counts));
}

// Tree pair of the same dims with bounded leaf-pair product (for LP-oracle
// scale); regenerates deterministically until the cap holds.
inline std::pair<PathMeasureTree, PathMeasureTree> random_tree_pair(
    Rng& rng, Dims dims, std::size_t pair_cap = 400, int max_leaves = 12) {
  for (;;) {
    PathMeasureTree a = random_tree(rng, dims, max_leaves);
    PathMeasureTree b = random_tree(rng, dims, max_leaves);
    if (a.leaf_count() * b.leaf_count() <= pair_cap)
      return {std::move(a), std::move(b)};
  }
}

inline DiscreteMeasure random_measure(Rng& rng, int d, int max_atoms = 8,
                                      bool dyadic = true) {
  const int atoms = 1 + static_cast<int>(rng.uniform01() * max_atoms);
  std::vector<double> points;
  std::vector<std::int64_t> counts;
  std::int64_t denom = 0;
  for (int i = 0; i < atoms; ++i) {
    for (int c = 0; c < d; ++c) {
      if (dyadic) {
        const int step = static_cast<int>(rng.uniform01() * 33) - 16;
        points.push_back(step / 8.0);
      } else {
        points.push_back(rng.uniform(-2.0, 2.0));
      }
    }
    const std::int64_t w = 1 + static_cast<std::int64_t>(rng.uniform01() * 9);
    counts.push_back(w);
    denom += w;
  }
  // Duplicate atoms merge in the constructor; denom stays the sum.
  return make_discrete_measure(d, std::move(points), std::move(counts), denom);
}

// Shift every coordinate of every leaf by the same per-coordinate offset.
inline PathMeasureTree shifted(const PathMeasureTree& tree,
                               const std::vector<double>& offset) {
  std::vector<double> rows = tree.leaf_rows();
  const int F = tree.dims().flat();
  for (std::size_t r = 0; r < tree.leaf_count(); ++r)
    for (int c = 0; c < F; ++c) rows[r * F + c] += offset[c % offset.size()];
  return PathMeasureTree(tree.dims(), std::move(rows), tree.leaf_counts());
}

inline PathMeasureTree scaled(const PathMeasureTree& tree, double factor) {
  std::vector<double> rows = tree.leaf_rows();
  for (double& v : rows) v *= factor;
  return PathMeasureTree(tree.dims(), std::move(rows), tree.leaf_counts());
}

}  // namespace awt::testutil
