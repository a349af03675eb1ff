// Finitely supported measures: single-time discrete measures and
// path-measure trees (successive conditional kernels of a path law).
//
// Weights are kept as integer counts over a common denominator so that
// marginal and kernel sums are exact; real-valued views are materialized
// at solver boundaries.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "awt/core.hpp"
#include "awt/grid.hpp"

namespace awt {

// Finitely supported probability measure on R^d, atoms in lexicographic
// order, pairwise distinct; weights[i] = counts[i]/denom when exact.
struct DiscreteMeasure {
  int d = 1;
  std::vector<double> atoms;         // size() * d
  std::vector<std::int64_t> counts;  // empty when !exact
  std::int64_t denom = 0;
  std::vector<double> weights;       // real view, always populated
  bool exact = true;

  std::size_t size() const { return weights.size(); }
  std::span<const double> atom(std::size_t i) const {
    return std::span<const double>(atoms).subspan(i * d, d);
  }
};

// Canonicalizes: sorts atoms lexicographically and merges duplicates by
// summing counts. Requires counts > 0 after merge.
DiscreteMeasure make_discrete_measure(int d, std::vector<double> atoms,
                                      std::vector<std::int64_t> counts,
                                      std::int64_t denom);

// Non-rational weights (must be positive and sum to 1 within 1e-9); the
// result is marked exact=false and is solved with the tolerance-based
// transport fallback.
DiscreteMeasure make_discrete_measure_real(int d, std::vector<double> atoms,
                                           std::vector<double> weights);

// Tries to recover exact rational weights k_i/D from decimal values
// (continued fractions, per-weight denominator cap). Returns counts+denom
// only if the reconstruction is exact: counts sum to denom and every
// count/denom matches its input within 1e-12.
std::optional<std::pair<std::vector<std::int64_t>, std::int64_t>>
rationalize_weights(const std::vector<double>& weights,
                    std::int64_t max_denom = 10'000'000);

// Declarative regularity metadata of a model (never estimated from data).
struct ModelMetadata {
  std::optional<double> lipschitz_L;
  std::optional<double> growth_r;
  std::optional<double> moment_p;
  std::optional<double> moment_q;
  std::optional<double> exp_alpha;
  std::optional<double> exp_gamma;
};

// Depth-T tree encoding of a finitely supported path measure. Nodes at
// level t (1-based) are the distinct length-t prefixes of the support, in
// lexicographic order; a node's children partition its paths by the next
// value. Leaf rows (merged distinct paths) are kept alongside the levels.
class PathMeasureTree {
 public:
  struct Level {
    // Node k at this level spans merged leaf rows [row_begin[k], row_begin[k+1]).
    std::vector<std::int32_t> row_begin;       // size node_count+1
    std::vector<std::int64_t> counts;          // paths through each node
    std::vector<std::int32_t> child_begin;     // into next level (empty at T)
    std::vector<std::int32_t> child_end;
    std::size_t node_count() const { return counts.size(); }
  };

  // Builds the canonical tree from (path, count) pairs; duplicate paths are
  // merged. counts must be positive.
  PathMeasureTree(Dims dims, std::vector<double> paths,
                  std::vector<std::int64_t> counts);

  const Dims& dims() const { return dims_; }
  std::int64_t total() const { return total_; }
  std::size_t leaf_count() const { return leaf_counts_.size(); }
  const std::vector<double>& leaf_rows() const { return rows_; }
  const std::vector<std::int64_t>& leaf_counts() const { return leaf_counts_; }

  // Level t in 1..T.
  const Level& level(int t) const { return levels_[t - 1]; }
  std::size_t node_count(int t) const { return levels_[t - 1].node_count(); }

  // Point of node k at level t (d doubles).
  std::span<const double> node_point(int t, std::size_t k) const;

  // Full length-t prefix of node k at level t (t*d doubles).
  std::span<const double> node_prefix(int t, std::size_t k) const;

  bool operator==(const PathMeasureTree& other) const;

 private:
  Dims dims_;
  std::int64_t total_ = 0;
  std::vector<double> rows_;                // leaf_count * d*T, lexicographic
  std::vector<std::int64_t> leaf_counts_;   // positive, sum = total
  std::vector<Level> levels_;               // levels_[t-1]
};

// Classical empirical measure of the sample (paths grouped by bit-exact
// equality).
PathMeasureTree empirical_tree(const PathSample& sample);

// Adapted empirical measure: every path is midpoint-projected on the grid
// before grouping.
PathMeasureTree adapted_empirical_tree(const PathSample& sample,
                                       const GridSpec& spec);

// Pushforward of the leaf weights onto the level-t coordinate (t in 1..T),
// atoms merged by equality.
DiscreteMeasure marginal(const PathMeasureTree& tree, int t);

// Flattened view: leaf paths as a measure on R^{d*T} (atoms of dimension
// d*T); used by the non-adapted distance.
DiscreteMeasure flatten_to_measure(const PathMeasureTree& tree);

// M_p = sum w * sum_norm(x)^p; E_{alpha,gamma} = sum w * exp(gamma*|x|^alpha).
double moment(const DiscreteMeasure& mu, double p);
double moment(const PathMeasureTree& tree, double p);
double exp_moment(const DiscreteMeasure& mu, double alpha, double gamma);
double exp_moment(const PathMeasureTree& tree, double alpha, double gamma);

// Total weight of level-t prefixes with sup-coordinate in ring j
// (ring 0: sup <= 1; ring j: sup in (2^{j-1}, 2^j]).
double ring_mass(const PathMeasureTree& tree, int t, int j);

// Line-oriented interchange format, one leaf per line:
//   count/N;x_1;...;x_T   (each x_t a comma-separated d-vector)
void write_tree(const PathMeasureTree& tree, std::ostream& os);
void write_tree_file(const PathMeasureTree& tree, const std::string& path);
PathMeasureTree read_tree(std::istream& is);
PathMeasureTree read_tree_file(const std::string& path);

}  // namespace awt
