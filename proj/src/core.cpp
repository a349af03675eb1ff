#include "awt/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace awt {

Dims::Dims(int d_, int T_) : d(d_), T(T_) {
  if (d < 1) throw std::invalid_argument("Dims: d must be >= 1");
  if (T < 2) throw std::invalid_argument("Dims: T must be >= 2");
}

PathSample make_path_sample(Dims dims, std::int64_t n, std::uint64_t seed,
                            std::vector<double> data) {
  if (n < 1) throw std::invalid_argument("PathSample: n must be >= 1");
  if (data.size() != static_cast<std::size_t>(n) * dims.flat())
    throw std::invalid_argument("PathSample: data size mismatch");
  require_finite(data, "PathSample");
  return PathSample{dims, n, seed, std::move(data)};
}

bool all_finite(std::span<const double> x) {
  for (const double v : x)
    if (!std::isfinite(v)) return false;
  return true;
}

void require_finite(std::span<const double> x, const char* what) {
  if (!all_finite(x))
    throw std::invalid_argument(std::string(what) + ": non-finite value");
}

double sum_norm(std::span<const double> x, int d) {
  require_finite(x, "sum_norm");
  if (d < 1 || x.size() % d != 0)
    throw std::invalid_argument("sum_norm: size not a multiple of d");
  double total = 0.0;
  for (std::size_t off = 0; off < x.size(); off += d) {
    double sq = 0.0;
    for (int c = 0; c < d; ++c) sq += x[off + c] * x[off + c];
    total += std::sqrt(sq);
  }
  return total;
}

double sum_norm(PathView x, const Dims& dims) { return sum_norm(x, dims.d); }

double sum_norm_diff(std::span<const double> x, std::span<const double> y,
                     int d) {
  if (x.size() != y.size() || d < 1 || x.size() % d != 0)
    throw std::invalid_argument("sum_norm_diff: shape mismatch");
  double total = 0.0;
  for (std::size_t off = 0; off < x.size(); off += d) {
    double sq = 0.0;
    for (int c = 0; c < d; ++c) {
      const double diff = x[off + c] - y[off + c];
      sq += diff * diff;
    }
    total += std::sqrt(sq);
  }
  return total;
}

double sup_coord(std::span<const double> x) {
  require_finite(x, "sup_coord");
  double best = 0.0;
  for (const double v : x) best = std::max(best, std::fabs(v));
  return best;
}

}  // namespace awt
