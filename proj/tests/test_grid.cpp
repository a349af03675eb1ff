#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "awt/grid.hpp"
#include "awt/rng.hpp"

using namespace awt;

namespace {

std::vector<double> random_path(Rng& rng, const Dims& dims, double scale) {
  std::vector<double> x(dims.flat());
  for (double& v : x) v = rng.normal() * scale;
  return x;
}

}  // namespace

TEST_CASE("grid spec scale") {
  const GridSpec g = GridSpec::make(GridKind::Uniform, Dims(1, 2), 16);
  CHECK(g.delta == 0.25);  // 16^(-1/2), exact in doubles
  CHECK(g.m == 4);
  const GridSpec g2 = GridSpec::make(GridKind::Uniform, Dims(1, 2), 4);
  CHECK(g2.delta == 0.5);
  CHECK(g2.m == 2);
  for (const std::int64_t n : {1, 2, 7, 100, 4096, 131072}) {
    const GridSpec s = GridSpec::make(GridKind::NonUniform, Dims(2, 3), n);
    CHECK(s.delta ==
          std::pow(static_cast<double>(n), -1.0 / s.dims.flat()));
    CHECK(s.m == static_cast<std::int64_t>(std::ceil(1.0 / s.delta)));
    CHECK(s.m >= 1);
  }
}

TEST_CASE("ring index") {
  CHECK(ring_of_sup(0.0) == 0);
  CHECK(ring_of_sup(0.5) == 0);
  CHECK(ring_of_sup(1.0) == 0);  // boundary assigned inward
  CHECK(ring_of_sup(1.0000001) == 1);
  CHECK(ring_of_sup(2.0) == 1);
  CHECK(ring_of_sup(3.0) == 2);  // 2 < 3 <= 4
  CHECK(ring_of_sup(4.0) == 2);
  CHECK(ring_of_sup(5.0) == 3);
  CHECK(ring_of_sup(std::ldexp(1.0, 900)) == 900);
  CHECK_THROWS_AS(ring_of_sup(std::ldexp(1.0, 1023) * 1.5),
                  std::invalid_argument);

  const GridSpec g = GridSpec::make(GridKind::NonUniform, Dims(1, 2), 16);
  const std::vector<double> x = {3.0, 0.5};
  CHECK(ring_index(g, x) == 2);
  const GridSpec gu = GridSpec::make(GridKind::Uniform, Dims(1, 2), 16);
  CHECK_THROWS_AS(ring_index(gu, x), std::invalid_argument);
}

TEST_CASE("uniform projection example") {
  const GridSpec g = GridSpec::make(GridKind::Uniform, Dims(1, 2), 16);
  const std::vector<double> x = {0.1, 0.6};
  const auto [cell, mid] = project_path(g, x);
  CHECK(cell.ring == 0);
  CHECK(cell.index == std::vector<std::int64_t>{0, 2});
  CHECK(mid[0] == 0.125);
  CHECK(mid[1] == 0.625);
}

TEST_CASE("non-uniform projection example") {
  const GridSpec g = GridSpec::make(GridKind::NonUniform, Dims(1, 2), 16);
  // m = 4, sup = 3 => ring 2, side 0.5; 3.0 -> cell 6 -> midpoint 3.25.
  const std::vector<double> x = {3.0, 0.5};
  const auto [cell, mid] = project_path(g, x);
  CHECK(cell.ring == 2);
  CHECK(cell.index[0] == 6);
  CHECK(mid[0] == 3.25);
  CHECK(mid[1] == 0.75);  // 0.5/0.5 -> cell 1 -> 0.5*1.5
}

TEST_CASE("projection is idempotent") {
  Rng rng(501);
  for (const GridKind kind : {GridKind::Uniform, GridKind::NonUniform}) {
    for (int rep = 0; rep < 4000; ++rep) {
      const Dims dims(1 + static_cast<int>(rng.uniform01() * 3),
                      2 + static_cast<int>(rng.uniform01() * 3));
      const std::int64_t n =
          1 + static_cast<std::int64_t>(rng.uniform01() * 5000);
      const GridSpec g = GridSpec::make(kind, dims, n);
      const double scale = std::exp(rng.uniform(-2.0, 4.0));
      const auto x = random_path(rng, dims, scale);
      const auto [cell, mid] = project_path(g, x);
      const auto [cell2, mid2] = project_path(g, mid);
      CHECK(mid2 == mid);
      CHECK(cell2 == cell);
    }
  }
}

TEST_CASE("idempotence on ring and face boundaries") {
  for (const std::int64_t n : {4, 16, 100}) {
    const GridSpec g = GridSpec::make(GridKind::NonUniform, Dims(1, 2), n);
    for (const double b : {1.0, 2.0, 4.0, 8.0, 16.0}) {
      for (const double c : {b, -b, std::nextafter(b, 0.0)}) {
        const std::vector<double> x = {c, 0.25};
        const auto [cell, mid] = project_path(g, x);
        const auto [cell2, mid2] = project_path(g, mid);
        CHECK(mid2 == mid);
        CHECK(cell2 == cell);
        // the projected point stays in the source ring
        CHECK(ring_of_sup(sup_coord(mid)) == ring_of_sup(sup_coord(x)));
      }
    }
  }
}

TEST_CASE("projection displacement bounds") {
  Rng rng(777);
  int checked = 0;
  while (checked < 20000) {
    const Dims dims(1 + static_cast<int>(rng.uniform01() * 3),
                    2 + static_cast<int>(rng.uniform01() * 3));
    const std::int64_t n =
        1 + static_cast<std::int64_t>(rng.uniform01() * 100000);
    const double scale = std::exp(rng.uniform(-3.0, 5.0));
    const auto x = random_path(rng, dims, scale);
    const double limit =
        dims.T * std::sqrt(static_cast<double>(dims.d));
    {
      const GridSpec g = GridSpec::make(GridKind::Uniform, dims, n);
      const auto [cell, mid] = project_path(g, x);
      CHECK(sum_norm_diff(mid, x, dims.d) <= limit * g.delta);
    }
    {
      const GridSpec g = GridSpec::make(GridKind::NonUniform, dims, n);
      const int j = ring_index(g, x);
      const auto [cell, mid] = project_path(g, x);
      CHECK(sum_norm_diff(mid, x, dims.d) <=
            limit * std::ldexp(1.0, j) * g.delta);
    }
    ++checked;
  }
}

TEST_CASE("cells partition: same midpoint iff same cell id") {
  Rng rng(8080);
  for (const GridKind kind : {GridKind::Uniform, GridKind::NonUniform}) {
    const Dims dims(1, 2);
    const GridSpec g = GridSpec::make(kind, dims, 9);  // m = 3, coarse
    for (int rep = 0; rep < 5000; ++rep) {
      const std::vector<double> x = {rng.uniform(-3.0, 3.0),
                                     rng.uniform(-3.0, 3.0)};
      const std::vector<double> y = {rng.uniform(-3.0, 3.0),
                                     rng.uniform(-3.0, 3.0)};
      const auto [cx, mx] = project_path(g, x);
      const auto [cy, my] = project_path(g, y);
      CHECK((mx == my) == (cx == cy));
    }
  }
}

TEST_CASE("ring index is monotone in sup") {
  Rng rng(99);
  std::vector<double> sups;
  for (int i = 0; i < 1000; ++i)
    sups.push_back(std::exp(rng.uniform(-4.0, 8.0)));
  std::sort(sups.begin(), sups.end());
  int prev = 0;
  for (const double s : sups) {
    const int j = ring_of_sup(s);
    CHECK(j >= prev);
    prev = j;
  }
}

TEST_CASE("ring boundaries align with cell faces") {
  // Innermost/outermost cells of every ring stay strictly inside it, for all
  // small m and rings up to 20.
  for (std::int64_t m = 1; m <= 64; ++m) {
    for (int j = 0; j <= 20; ++j) {
      const double side = std::ldexp(1.0, j - 1) / static_cast<double>(m);
      const double inner = 2.0 * side * static_cast<double>(m) / 2.0;
      const double outer_mid = side * (2.0 * m - 1 + 0.5);
      const double inner_mid = side * (m + 0.5);
      CHECK(outer_mid < std::ldexp(1.0, j));
      if (j >= 1) {
        CHECK(inner_mid > std::ldexp(1.0, j - 1));
        CHECK(inner == doctest::Approx(std::ldexp(1.0, j - 1)).epsilon(1e-15));
      }
    }
  }
}

TEST_CASE("cell diameter") {
  const GridSpec gu = GridSpec::make(GridKind::Uniform, Dims(1, 2), 16);
  CHECK(cell_diameter(gu, 0, 2) == 0.5);  // 2 * sqrt(1) * 1/4
  CHECK(cell_diameter(gu, 0, 0) == 0.0);
  const GridSpec gn = GridSpec::make(GridKind::NonUniform, Dims(1, 2), 16);
  CHECK(cell_diameter(gn, 2, 1) == 0.5);  // side 2/4
  // paper-form inequality: exact diameter is within the delta-based bound
  Rng rng(15);
  for (int rep = 0; rep < 500; ++rep) {
    const Dims dims(1 + static_cast<int>(rng.uniform01() * 3),
                    2 + static_cast<int>(rng.uniform01() * 3));
    const std::int64_t n =
        1 + static_cast<std::int64_t>(rng.uniform01() * 100000);
    const int t = 1 + static_cast<int>(rng.uniform01() * dims.T);
    const double ts = t * std::sqrt(static_cast<double>(dims.d));
    const GridSpec gu2 = GridSpec::make(GridKind::Uniform, dims, n);
    CHECK(cell_diameter(gu2, 0, t) <= ts * gu2.delta * (1 + 1e-12));
    const GridSpec gn2 = GridSpec::make(GridKind::NonUniform, dims, n);
    const int j = static_cast<int>(rng.uniform01() * 8);
    CHECK(cell_diameter(gn2, j, t) <=
          ts * std::ldexp(1.0, j) * gn2.delta * (1 + 1e-12));
  }
}
