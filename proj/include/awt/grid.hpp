// Uniform and non-uniform (dyadic ring) partitions of the path space and
// the midpoint projection maps used to build adapted empirical measures.
#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "awt/core.hpp"

namespace awt {

enum class GridKind { Uniform, NonUniform };

// Cube partition tuned to a sample size n: cell scale delta = n^(-1/(d*T)),
// m = ceil(1/delta). Uniform grids tile R^{dT} with cubes of side 1/m.
// Non-uniform grids split the cubic ring A_j (sup-coordinate in (2^{j-1},2^j],
// A_0 the unit cube) into cubes of side 2^{j-1}/m.
struct GridSpec {
  GridKind kind = GridKind::Uniform;
  Dims dims;
  std::int64_t n = 1;
  double delta = 1.0;
  std::int64_t m = 1;

  static GridSpec make(GridKind kind, Dims dims, std::int64_t n);

  // Side length of the cubes used in ring `ring` (ring is ignored for
  // uniform grids, which use side 1/m everywhere).
  double cell_side(int ring) const;
};

// One cube of the partition: ring index (0 for uniform grids) and the
// integer lattice position of the cube.
struct CellId {
  std::int32_t ring = 0;
  std::vector<std::int64_t> index;

  bool operator==(const CellId&) const = default;
};

// Smallest j >= 0 with sup <= 2^j; boundary values belong to the inner ring.
// Rejects scales above 2^1023.
int ring_of_sup(double sup);

// Ring of a whole path under a non-uniform grid.
int ring_index(const GridSpec& spec, PathView x);

// Midpoint projection. Uniform: per coordinate z = floor(c*m), midpoint
// (z+0.5)/m. Non-uniform: ring j from the whole path, side s = 2^{j-1}/m,
// z = floor(c/s) clamped into the ring's lattice range so the cube stays
// inside A_j (points on the outer face map inward), midpoint s*(z+0.5).
std::pair<CellId, std::vector<double>> project_path(const GridSpec& spec,
                                                    PathView x);

// Exact sum-norm diameter of a time-t prefix cell: t*sqrt(d)*side.
double cell_diameter(const GridSpec& spec, int ring, int t);

}  // namespace awt
