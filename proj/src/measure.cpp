#include "awt/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "awt/io.hpp"

namespace awt {

namespace {

// Lexicographic order on fixed-width rows of doubles (no NaN by contract;
// 0.0 and -0.0 compare equal so they land in one group).
struct RowLess {
  const double* data;
  int width;
  bool operator()(std::int32_t a, std::int32_t b) const {
    const double* ra = data + static_cast<std::size_t>(a) * width;
    const double* rb = data + static_cast<std::size_t>(b) * width;
    for (int c = 0; c < width; ++c) {
      if (ra[c] < rb[c]) return true;
      if (ra[c] > rb[c]) return false;
    }
    return false;
  }
};

bool rows_equal(const double* a, const double* b, int width) {
  for (int c = 0; c < width; ++c)
    if (a[c] != b[c]) return false;
  return true;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b, const char* what) {
  std::int64_t out = 0;
  if (__builtin_add_overflow(a, b, &out))
    throw std::overflow_error(std::string(what) + ": count overflow");
  return out;
}

}  // namespace

DiscreteMeasure make_discrete_measure(int d, std::vector<double> atoms,
                                      std::vector<std::int64_t> counts,
                                      std::int64_t denom) {
  if (d < 1) throw std::invalid_argument("DiscreteMeasure: d must be >= 1");
  if (counts.empty()) throw std::invalid_argument("DiscreteMeasure: empty");
  if (atoms.size() != counts.size() * static_cast<std::size_t>(d))
    throw std::invalid_argument("DiscreteMeasure: atom size mismatch");
  if (denom < 1) throw std::invalid_argument("DiscreteMeasure: bad denom");
  require_finite(atoms, "DiscreteMeasure");

  std::vector<std::int32_t> idx(counts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), RowLess{atoms.data(), d});

  DiscreteMeasure mu;
  mu.d = d;
  mu.denom = denom;
  std::int64_t sum = 0;
  for (const std::int32_t i : idx) {
    if (counts[i] <= 0)
      throw std::invalid_argument("DiscreteMeasure: nonpositive count");
    sum = checked_add(sum, counts[i], "DiscreteMeasure");
    const double* row = atoms.data() + static_cast<std::size_t>(i) * d;
    if (!mu.counts.empty() &&
        rows_equal(row, mu.atoms.data() + mu.atoms.size() - d, d)) {
      mu.counts.back() += counts[i];
    } else {
      mu.atoms.insert(mu.atoms.end(), row, row + d);
      mu.counts.push_back(counts[i]);
    }
  }
  if (sum != denom)
    throw std::invalid_argument("DiscreteMeasure: counts must sum to denom");
  mu.weights.resize(mu.counts.size());
  for (std::size_t i = 0; i < mu.counts.size(); ++i)
    mu.weights[i] =
        static_cast<double>(mu.counts[i]) / static_cast<double>(denom);
  mu.exact = true;
  return mu;
}

DiscreteMeasure make_discrete_measure_real(int d, std::vector<double> atoms,
                                           std::vector<double> weights) {
  if (d < 1) throw std::invalid_argument("DiscreteMeasure: d must be >= 1");
  if (weights.empty()) throw std::invalid_argument("DiscreteMeasure: empty");
  if (atoms.size() != weights.size() * static_cast<std::size_t>(d))
    throw std::invalid_argument("DiscreteMeasure: atom size mismatch");
  require_finite(atoms, "DiscreteMeasure");

  std::vector<std::int32_t> idx(weights.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), RowLess{atoms.data(), d});

  DiscreteMeasure mu;
  mu.d = d;
  mu.denom = 0;
  mu.exact = false;
  double sum = 0.0;
  for (const std::int32_t i : idx) {
    if (!(weights[i] > 0.0))
      throw std::invalid_argument("DiscreteMeasure: nonpositive weight");
    sum += weights[i];
    const double* row = atoms.data() + static_cast<std::size_t>(i) * d;
    if (!mu.weights.empty() &&
        rows_equal(row, mu.atoms.data() + mu.atoms.size() - d, d)) {
      mu.weights.back() += weights[i];
    } else {
      mu.atoms.insert(mu.atoms.end(), row, row + d);
      mu.weights.push_back(weights[i]);
    }
  }
  if (std::fabs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("DiscreteMeasure: weights must sum to 1");
  return mu;
}

std::optional<std::pair<std::vector<std::int64_t>, std::int64_t>>
rationalize_weights(const std::vector<double>& weights,
                    std::int64_t max_denom) {
  // Best rational p/q with q <= max_denom via continued fractions.
  const auto approx = [max_denom](double w) -> std::pair<std::int64_t,
                                                         std::int64_t> {
    std::int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    double x = w;
    for (int iter = 0; iter < 64; ++iter) {
      const double fa = std::floor(x);
      if (fa > 9e17) break;
      const std::int64_t a = static_cast<std::int64_t>(fa);
      if (q0 > 0 && a > (max_denom - q0) / std::max<std::int64_t>(q1, 1))
        break;
      const std::int64_t p2 = a * p1 + p0;
      const std::int64_t q2 = a * q1 + q0;
      if (q2 > max_denom) break;
      p0 = p1; q0 = q1; p1 = p2; q1 = q2;
      const double rem = x - fa;
      if (rem < 1e-15) break;
      x = 1.0 / rem;
    }
    return {p1, q1};
  };

  std::int64_t denom = 1;
  std::vector<std::pair<std::int64_t, std::int64_t>> fracs;
  fracs.reserve(weights.size());
  for (const double w : weights) {
    if (!(w > 0.0) || !(w <= 1.0)) return std::nullopt;
    const auto [p, q] = approx(w);
    if (q < 1 || p < 1) return std::nullopt;
    if (std::fabs(w - static_cast<double>(p) / static_cast<double>(q)) > 1e-12)
      return std::nullopt;
    fracs.push_back({p, q});
    const std::int64_t g = std::gcd(denom, q);
    const std::int64_t mult = q / g;
    if (denom > (std::int64_t{1} << 40) / std::max<std::int64_t>(mult, 1))
      return std::nullopt;
    denom *= mult;
  }
  std::vector<std::int64_t> counts;
  counts.reserve(weights.size());
  std::int64_t sum = 0;
  for (const auto& [p, q] : fracs) {
    const std::int64_t k = p * (denom / q);
    counts.push_back(k);
    sum += k;
  }
  if (sum != denom) return std::nullopt;
  return std::make_pair(std::move(counts), denom);
}

PathMeasureTree::PathMeasureTree(Dims dims, std::vector<double> paths,
                                 std::vector<std::int64_t> counts)
    : dims_(dims) {
  const int F = dims.flat();
  if (counts.empty()) throw std::invalid_argument("PathMeasureTree: empty");
  if (paths.size() != counts.size() * static_cast<std::size_t>(F))
    throw std::invalid_argument("PathMeasureTree: path size mismatch");
  require_finite(paths, "PathMeasureTree");

  std::vector<std::int32_t> idx(counts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), RowLess{paths.data(), F});

  rows_.reserve(paths.size());
  leaf_counts_.reserve(counts.size());
  for (const std::int32_t i : idx) {
    if (counts[i] <= 0)
      throw std::invalid_argument("PathMeasureTree: nonpositive count");
    const double* row = paths.data() + static_cast<std::size_t>(i) * F;
    if (!leaf_counts_.empty() &&
        rows_equal(row, rows_.data() + rows_.size() - F, F)) {
      leaf_counts_.back() =
          checked_add(leaf_counts_.back(), counts[i], "PathMeasureTree");
    } else {
      rows_.insert(rows_.end(), row, row + F);
      leaf_counts_.push_back(counts[i]);
    }
    total_ = checked_add(total_, counts[i], "PathMeasureTree");
  }

  const std::int32_t K = static_cast<std::int32_t>(leaf_counts_.size());
  const int d = dims.d;
  levels_.resize(dims.T);
  for (int t = 1; t <= dims.T; ++t) {
    Level& lvl = levels_[t - 1];
    const int width = t * d;
    lvl.row_begin.push_back(0);
    for (std::int32_t r = 1; r < K; ++r) {
      const double* prev = rows_.data() + static_cast<std::size_t>(r - 1) * F;
      const double* cur = rows_.data() + static_cast<std::size_t>(r) * F;
      if (!rows_equal(prev, cur, width)) lvl.row_begin.push_back(r);
    }
    lvl.row_begin.push_back(K);
    const std::size_t nodes = lvl.row_begin.size() - 1;
    lvl.counts.resize(nodes);
    for (std::size_t k = 0; k < nodes; ++k) {
      std::int64_t c = 0;
      for (std::int32_t r = lvl.row_begin[k]; r < lvl.row_begin[k + 1]; ++r)
        c += leaf_counts_[r];
      lvl.counts[k] = c;
    }
  }
  // Child ranges: nodes at level t+1 nest inside level-t nodes.
  for (int t = 1; t < dims.T; ++t) {
    Level& lvl = levels_[t - 1];
    const Level& next = levels_[t];
    const std::size_t nodes = lvl.node_count();
    lvl.child_begin.resize(nodes);
    lvl.child_end.resize(nodes);
    std::size_t c = 0;
    for (std::size_t k = 0; k < nodes; ++k) {
      lvl.child_begin[k] = static_cast<std::int32_t>(c);
      while (c < next.node_count() &&
             next.row_begin[c] < lvl.row_begin[k + 1])
        ++c;
      lvl.child_end[k] = static_cast<std::int32_t>(c);
    }
  }
}

std::span<const double> PathMeasureTree::node_point(int t,
                                                    std::size_t k) const {
  const Level& lvl = level(t);
  const std::size_t row = lvl.row_begin[k];
  return std::span<const double>(rows_).subspan(
      row * dims_.flat() + static_cast<std::size_t>(t - 1) * dims_.d,
      dims_.d);
}

std::span<const double> PathMeasureTree::node_prefix(int t,
                                                     std::size_t k) const {
  const Level& lvl = level(t);
  const std::size_t row = lvl.row_begin[k];
  return std::span<const double>(rows_).subspan(
      row * dims_.flat(), static_cast<std::size_t>(t) * dims_.d);
}

bool PathMeasureTree::operator==(const PathMeasureTree& other) const {
  return dims_ == other.dims_ && total_ == other.total_ &&
         rows_ == other.rows_ && leaf_counts_ == other.leaf_counts_;
}

PathMeasureTree empirical_tree(const PathSample& sample) {
  if (sample.n < 1) throw std::invalid_argument("empirical_tree: empty sample");
  return PathMeasureTree(
      sample.dims, sample.data,
      std::vector<std::int64_t>(static_cast<std::size_t>(sample.n), 1));
}

PathMeasureTree adapted_empirical_tree(const PathSample& sample,
                                       const GridSpec& spec) {
  if (sample.n < 1)
    throw std::invalid_argument("adapted_empirical_tree: empty sample");
  if (!(spec.dims == sample.dims))
    throw std::invalid_argument("adapted_empirical_tree: dims mismatch");
  std::vector<double> projected;
  projected.reserve(sample.data.size());
  for (std::int64_t i = 0; i < sample.n; ++i) {
    auto [cell, mid] = project_path(spec, sample.path(i));
    projected.insert(projected.end(), mid.begin(), mid.end());
  }
  return PathMeasureTree(
      sample.dims, std::move(projected),
      std::vector<std::int64_t>(static_cast<std::size_t>(sample.n), 1));
}

DiscreteMeasure marginal(const PathMeasureTree& tree, int t) {
  if (t < 1 || t > tree.dims().T)
    throw std::invalid_argument("marginal: t out of range");
  const auto& lvl = tree.level(t);
  const int d = tree.dims().d;
  std::vector<double> atoms;
  std::vector<std::int64_t> counts;
  atoms.reserve(lvl.node_count() * d);
  counts.reserve(lvl.node_count());
  for (std::size_t k = 0; k < lvl.node_count(); ++k) {
    const auto pt = tree.node_point(t, k);
    atoms.insert(atoms.end(), pt.begin(), pt.end());
    counts.push_back(lvl.counts[k]);
  }
  return make_discrete_measure(d, std::move(atoms), std::move(counts),
                               tree.total());
}

DiscreteMeasure flatten_to_measure(const PathMeasureTree& tree) {
  return make_discrete_measure(tree.dims().flat(), tree.leaf_rows(),
                               tree.leaf_counts(), tree.total());
}

double moment(const DiscreteMeasure& mu, double p) {
  if (p < 1.0) throw std::invalid_argument("moment: p must be >= 1");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    acc += mu.weights[i] * std::pow(sum_norm(mu.atom(i), mu.d), p);
  return acc;
}

double moment(const PathMeasureTree& tree, double p) {
  if (p < 1.0) throw std::invalid_argument("moment: p must be >= 1");
  const int F = tree.dims().flat();
  double acc = 0.0;
  for (std::size_t r = 0; r < tree.leaf_count(); ++r) {
    const auto row = std::span<const double>(tree.leaf_rows()).subspan(
        r * F, F);
    const double w = static_cast<double>(tree.leaf_counts()[r]) /
                     static_cast<double>(tree.total());
    acc += w * std::pow(sum_norm(row, tree.dims().d), p);
  }
  return acc;
}

double exp_moment(const DiscreteMeasure& mu, double alpha, double gamma) {
  if (!(alpha > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("exp_moment: alpha, gamma must be > 0");
  double acc = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    acc += mu.weights[i] *
           std::exp(gamma * std::pow(sum_norm(mu.atom(i), mu.d), alpha));
  return acc;
}

double exp_moment(const PathMeasureTree& tree, double alpha, double gamma) {
  if (!(alpha > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("exp_moment: alpha, gamma must be > 0");
  const int F = tree.dims().flat();
  double acc = 0.0;
  for (std::size_t r = 0; r < tree.leaf_count(); ++r) {
    const auto row = std::span<const double>(tree.leaf_rows()).subspan(
        r * F, F);
    const double w = static_cast<double>(tree.leaf_counts()[r]) /
                     static_cast<double>(tree.total());
    acc += w * std::exp(gamma * std::pow(sum_norm(row, tree.dims().d), alpha));
  }
  return acc;
}

double ring_mass(const PathMeasureTree& tree, int t, int j) {
  if (t < 1 || t > tree.dims().T)
    throw std::invalid_argument("ring_mass: t out of range");
  if (j < 0) throw std::invalid_argument("ring_mass: j must be >= 0");
  const auto& lvl = tree.level(t);
  std::int64_t hits = 0;
  for (std::size_t k = 0; k < lvl.node_count(); ++k) {
    if (ring_of_sup(sup_coord(tree.node_prefix(t, k))) == j)
      hits += lvl.counts[k];
  }
  return static_cast<double>(hits) / static_cast<double>(tree.total());
}

void write_tree(const PathMeasureTree& tree, std::ostream& os) {
  const int d = tree.dims().d;
  const int T = tree.dims().T;
  const int F = tree.dims().flat();
  for (std::size_t r = 0; r < tree.leaf_count(); ++r) {
    os << tree.leaf_counts()[r] << '/' << tree.total();
    const double* row = tree.leaf_rows().data() + r * F;
    for (int t = 0; t < T; ++t) {
      os << ';';
      for (int c = 0; c < d; ++c) {
        if (c) os << ',';
        os << format_double17(row[t * d + c]);
      }
    }
    os << '\n';
  }
}

void write_tree_file(const PathMeasureTree& tree, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open for write: " + path);
  write_tree(tree, os);
}

PathMeasureTree read_tree(std::istream& is) {
  std::vector<double> paths;
  std::vector<std::int64_t> counts;
  std::int64_t denom = -1;
  int d = -1, T = -1;
  std::string line;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> segments;
    std::size_t start = 0;
    for (;;) {
      const std::size_t pos = line.find(';', start);
      if (pos == std::string::npos) {
        segments.push_back(line.substr(start));
        break;
      }
      segments.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (segments.size() < 3)
      throw std::invalid_argument("tree dump: need count and >= 2 steps");
    const std::size_t slash = segments[0].find('/');
    if (slash == std::string::npos)
      throw std::invalid_argument("tree dump: bad weight field");
    const std::int64_t count = std::stoll(segments[0].substr(0, slash));
    const std::int64_t den = std::stoll(segments[0].substr(slash + 1));
    if (denom < 0) denom = den;
    if (den != denom)
      throw std::invalid_argument("tree dump: inconsistent denominator");
    const int steps = static_cast<int>(segments.size()) - 1;
    const auto first = split_csv_line(segments[1]);
    if (d < 0) {
      d = static_cast<int>(first.size());
      T = steps;
    }
    if (steps != T)
      throw std::invalid_argument("tree dump: inconsistent T");
    for (int t = 1; t <= T; ++t) {
      const auto coords = split_csv_line(segments[t]);
      if (static_cast<int>(coords.size()) != d)
        throw std::invalid_argument("tree dump: inconsistent d");
      for (const auto& cstr : coords)
        paths.push_back(parse_double_strict(cstr));
    }
    counts.push_back(count);
  }
  if (counts.empty()) throw std::invalid_argument("tree dump: empty");
  std::int64_t sum = 0;
  for (const std::int64_t c : counts) sum += c;
  if (sum != denom)
    throw std::invalid_argument("tree dump: weights do not sum to 1");
  return PathMeasureTree(Dims(d, T), std::move(paths), std::move(counts));
}

PathMeasureTree read_tree_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open: " + path);
  return read_tree(is);
}

}  // namespace awt
