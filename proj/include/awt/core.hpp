// Path-space primitives: dimensions, flat path storage, norms.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace awt {

// State dimension d and number of time steps T (>= 2) of the path space.
struct Dims {
  int d = 1;
  int T = 2;

  Dims() = default;
  Dims(int d_, int T_);

  int flat() const { return d * T; }
  bool operator==(const Dims&) const = default;
};

// Paths are flat, time-major: x_1[0..d), x_2[0..d), ..., x_T[0..d).
using PathView = std::span<const double>;

// N sampled paths plus the seed they were drawn with.
struct PathSample {
  Dims dims;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<double> data;  // n * T * d

  PathView path(std::int64_t i) const {
    return PathView(data).subspan(static_cast<std::size_t>(i) * dims.flat(),
                                  dims.flat());
  }
};

// Validates shape and finiteness.
PathSample make_path_sample(Dims dims, std::int64_t n, std::uint64_t seed,
                            std::vector<double> data);

// Sum over time steps of the Euclidean norm of each d-dimensional point.
// Accepts full paths or prefixes (x.size() must be a multiple of d).
double sum_norm(std::span<const double> x, int d);
double sum_norm(PathView x, const Dims& dims);

// sum_norm(x - y), without materializing the difference.
double sum_norm_diff(std::span<const double> x, std::span<const double> y,
                     int d);

// Largest absolute scalar coordinate.
double sup_coord(std::span<const double> x);

bool all_finite(std::span<const double> x);
void require_finite(std::span<const double> x, const char* what);

}  // namespace awt
