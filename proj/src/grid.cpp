#include "awt/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace awt {

GridSpec GridSpec::make(GridKind kind, Dims dims, std::int64_t n) {
  if (n < 1) throw std::invalid_argument("GridSpec: n must be >= 1");
  GridSpec spec;
  spec.kind = kind;
  spec.dims = dims;
  spec.n = n;
  spec.delta =
      std::pow(static_cast<double>(n), -1.0 / static_cast<double>(dims.flat()));
  spec.m = static_cast<std::int64_t>(std::ceil(1.0 / spec.delta));
  if (spec.m < 1) spec.m = 1;
  return spec;
}

double GridSpec::cell_side(int ring) const {
  if (kind == GridKind::Uniform) return 1.0 / static_cast<double>(m);
  return std::ldexp(1.0, ring - 1) / static_cast<double>(m);
}

int ring_of_sup(double sup) {
  if (!(sup >= 0.0) || !std::isfinite(sup))
    throw std::invalid_argument("ring_of_sup: bad scale");
  if (sup <= 1.0) return 0;
  int j = 0;
  double p = 1.0;
  while (sup > p) {
    if (j >= 1023)
      throw std::invalid_argument("ring_of_sup: scale beyond 2^1023");
    p *= 2.0;
    ++j;
  }
  return j;
}

int ring_index(const GridSpec& spec, PathView x) {
  if (spec.kind != GridKind::NonUniform)
    throw std::invalid_argument("ring_index: grid is not non-uniform");
  return ring_of_sup(sup_coord(x));
}

std::pair<CellId, std::vector<double>> project_path(const GridSpec& spec,
                                                    PathView x) {
  require_finite(x, "project_path");
  if (static_cast<int>(x.size()) != spec.dims.flat())
    throw std::invalid_argument("project_path: dims mismatch");
  CellId cell;
  std::vector<double> mid(x.size());
  const double md = static_cast<double>(spec.m);
  if (spec.kind == GridKind::Uniform) {
    cell.ring = 0;
    cell.index.resize(x.size());
    for (std::size_t c = 0; c < x.size(); ++c) {
      const double z = std::floor(x[c] * md);
      cell.index[c] = static_cast<std::int64_t>(z);
      mid[c] = (z + 0.5) / md;
    }
    return {std::move(cell), std::move(mid)};
  }
  const int j = ring_of_sup(sup_coord(x));
  const double side = spec.cell_side(j);
  // Lattice range of ring j is [-2m, 2m); outer-face points are clamped
  // inward so the cube stays inside the ring and midpoints re-project to
  // the same cell.
  const double zmax = 2.0 * md - 1.0;
  const double zmin = -2.0 * md;
  cell.ring = j;
  cell.index.resize(x.size());
  for (std::size_t c = 0; c < x.size(); ++c) {
    double z = std::floor(x[c] / side);
    if (z > zmax) z = zmax;
    if (z < zmin) z = zmin;
    cell.index[c] = static_cast<std::int64_t>(z);
    mid[c] = side * (z + 0.5);
  }
  return {std::move(cell), std::move(mid)};
}

double cell_diameter(const GridSpec& spec, int ring, int t) {
  if (t < 0 || t > spec.dims.T)
    throw std::invalid_argument("cell_diameter: bad prefix length");
  if (ring < 0) throw std::invalid_argument("cell_diameter: bad ring");
  return static_cast<double>(t) * std::sqrt(static_cast<double>(spec.dims.d)) *
         spec.cell_side(ring);
}

}  // namespace awt
