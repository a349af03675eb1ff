#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "awt/ot.hpp"
#include "awt/rng.hpp"
#include "awt/simplex.hpp"
#include "test_util.hpp"

using namespace awt;

namespace {

// Independent route: the transportation problem as a dense equality LP.
double lp_transport_oracle(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           double p) {
  const int n = static_cast<int>(mu.size());
  const int m = static_cast<int>(nu.size());
  const int nvars = n * m;
  const int rows = n + m;
  std::vector<double> A(static_cast<std::size_t>(rows) * nvars, 0.0);
  std::vector<double> b(rows, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) A[static_cast<std::size_t>(i) * nvars + i * m + j] = 1.0;
    b[i] = mu.weights[i];
  }
  for (int j = 0; j < m; ++j) {
    for (int i = 0; i < n; ++i)
      A[static_cast<std::size_t>(n + j) * nvars + i * m + j] = 1.0;
    b[n + j] = nu.weights[j];
  }
  std::vector<double> c(nvars);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j)
      c[i * m + j] = euclid_pow(mu.atom(i), nu.atom(j), p);
  const LpResult res = solve_lp_equality(nvars, rows, A, b, c);
  REQUIRE(res.status == LpResult::Status::Optimal);
  return res.objective;
}

}  // namespace

TEST_CASE("w1 1-D examples") {
  const DiscreteMeasure a = make_discrete_measure(1, {0.0, 1.0}, {1, 1}, 2);
  const DiscreteMeasure d0 = make_discrete_measure(1, {0.0}, {1}, 1);
  const DiscreteMeasure d3 = make_discrete_measure(1, {-3.0}, {1}, 1);
  CHECK(w1_exact_1d(a, a) == 0.0);
  CHECK(w1_exact_1d(d0, d3) == 3.0);
  CHECK(w1_exact_1d(a, d0) == 0.5);
  CHECK(w1_exact_1d(a, d0) ==
        doctest::Approx(lp_transport_oracle(a, d0, 1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(
      w1_exact_1d(d0, make_discrete_measure(2, {0.0, 0.0}, {1}, 1)),
      std::invalid_argument);
}

TEST_CASE("wp identity and first-step marginals") {
  Rng rng(21);
  const DiscreteMeasure mu = testutil::random_measure(rng, 2);
  const WpResult self = wp_discrete(mu, mu, 1.0);
  CHECK(self.value == 0.0);
  for (const auto& e : self.plan.entries) CHECK(e.i == e.j);

  // delta_0 against the split pair: any coupling moves eps in total.
  for (const double eps : {0.01, 0.25, 0.75}) {
    const DiscreteMeasure one = make_discrete_measure(1, {0.0}, {1}, 1);
    const DiscreteMeasure two =
        make_discrete_measure(1, {eps, -eps}, {1, 1}, 2);
    const WpResult res = wp_discrete(one, two, 1.0);
    CHECK(res.value == doctest::Approx(eps).epsilon(1e-15));
    CHECK(res.exact);
  }
}

TEST_CASE("w1 sweep agrees with the flow solver on random 1-D pairs") {
  Rng rng(22);
  for (int rep = 0; rep < 2000; ++rep) {
    const DiscreteMeasure mu = testutil::random_measure(rng, 1, 10, false);
    const DiscreteMeasure nu = testutil::random_measure(rng, 1, 10, false);
    const double sweep = w1_exact_1d(mu, nu);
    const double flow = wp_discrete(mu, nu, 1.0).value;
    CHECK(std::fabs(sweep - flow) <= 1e-10);
  }
}

TEST_CASE("flow solver agrees with the dense LP oracle in d=2") {
  Rng rng(23);
  for (int rep = 0; rep < 150; ++rep) {
    const DiscreteMeasure mu = testutil::random_measure(rng, 2, 7, false);
    const DiscreteMeasure nu = testutil::random_measure(rng, 2, 6, false);
    const double p = rep % 3 == 0 ? 2.0 : 1.0;
    const WpResult res = wp_discrete(mu, nu, p);
    const double lp = lp_transport_oracle(mu, nu, p);
    CHECK(res.objective == doctest::Approx(lp).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("metric properties on random measures") {
  Rng rng(24);
  for (int rep = 0; rep < 300; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform01() * 2);
    const DiscreteMeasure a = testutil::random_measure(rng, d);
    const DiscreteMeasure b = testutil::random_measure(rng, d);
    const DiscreteMeasure c = testutil::random_measure(rng, d);
    const double ab = wp_discrete(a, b, 1.0).value;
    const double ba = wp_discrete(b, a, 1.0).value;
    CHECK(ab == ba);  // dyadic data: both directions are exact
    const double ac = wp_discrete(a, c, 1.0).value;
    const double cb = wp_discrete(c, b, 1.0).value;
    CHECK(ab <= ac + cb + 1e-9);
  }
}

TEST_CASE("plan feasibility and support size") {
  Rng rng(25);
  for (int rep = 0; rep < 200; ++rep) {
    const DiscreteMeasure mu = testutil::random_measure(rng, 2, 9, false);
    const DiscreteMeasure nu = testutil::random_measure(rng, 2, 9, false);
    const WpResult res = wp_discrete(mu, nu, 1.0);
    CHECK(res.exact);
    CHECK(res.plan.entries.size() <= mu.size() + nu.size() - 1);
    std::vector<double> row(mu.size(), 0.0), col(nu.size(), 0.0);
    for (const auto& e : res.plan.entries) {
      CHECK(e.mass >= 0.0);
      row[e.i] += e.mass;
      col[e.j] += e.mass;
    }
    for (std::size_t i = 0; i < mu.size(); ++i)
      CHECK(std::fabs(row[i] - mu.weights[i]) <= 1e-12);
    for (std::size_t j = 0; j < nu.size(); ++j)
      CHECK(std::fabs(col[j] - nu.weights[j]) <= 1e-12);
  }
}

TEST_CASE("zero duality gap") {
  Rng rng(26);
  for (int rep = 0; rep < 200; ++rep) {
    const int d = 1 + static_cast<int>(rng.uniform01() * 2);
    const DiscreteMeasure mu = testutil::random_measure(rng, d, 8, false);
    const DiscreteMeasure nu = testutil::random_measure(rng, d, 8, false);
    const WpResult res = wp_discrete(mu, nu, 1.0);
    double dual = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i)
      dual += mu.weights[i] * res.row_potential[i];
    for (std::size_t j = 0; j < nu.size(); ++j)
      dual += nu.weights[j] * res.col_potential[j];
    CHECK(std::fabs(dual - res.objective) <= 1e-9);
  }
}

TEST_CASE("value-to-go costs") {
  const DiscreteMeasure d0 = make_discrete_measure(1, {0.0}, {1}, 1);
  const WpResult res = wp_with_value_to_go(d0, d0, 1.0, {1.0});
  CHECK(res.objective == 1.0);  // pure continuation cost

  Rng rng(27);
  for (int rep = 0; rep < 100; ++rep) {
    const DiscreteMeasure mu = testutil::random_measure(rng, 1, 5, false);
    const DiscreteMeasure nu = testutil::random_measure(rng, 1, 5, false);
    // zero vtg reduces to the plain distance
    const std::vector<double> zeros(mu.size() * nu.size(), 0.0);
    CHECK(wp_with_value_to_go(mu, nu, 1.0, zeros).objective ==
          doctest::Approx(wp_discrete(mu, nu, 1.0).objective)
              .epsilon(1e-12).scale(1.0));
  }

  // 2x2 uniform marginals with a value-to-go that favors the diagonal
  const DiscreteMeasure u2 = make_discrete_measure(1, {0.0, 1.0}, {1, 1}, 2);
  const std::vector<double> vtg = {0.0, 5.0, 5.0, 0.0};
  const WpResult res2 = wp_with_value_to_go(u2, u2, 1.0, vtg);
  CHECK(res2.objective == 0.0);  // identity coupling avoids all cost
  CHECK_THROWS_AS(wp_with_value_to_go(u2, u2, 1.0, {1.0}),
                  std::invalid_argument);
}

TEST_CASE("real-weight fallback path") {
  // weights that do not rationalize force the tolerance-based route
  const DiscreteMeasure mu = make_discrete_measure_real(
      1, {0.0, 1.0}, {0.123456789012345, 0.876543210987655});
  const DiscreteMeasure nu = make_discrete_measure_real(
      1, {0.25, 2.0}, {0.333333333301111, 0.666666666698889});
  CHECK(!mu.exact);
  const WpResult res = wp_discrete(mu, nu, 1.0);
  CHECK(!res.exact);
  std::vector<double> row(mu.size(), 0.0), col(nu.size(), 0.0);
  for (const auto& e : res.plan.entries) {
    row[e.i] += e.mass;
    col[e.j] += e.mass;
  }
  for (std::size_t i = 0; i < mu.size(); ++i)
    CHECK(std::fabs(row[i] - mu.weights[i]) <= 1e-9);
  for (std::size_t j = 0; j < nu.size(); ++j)
    CHECK(std::fabs(col[j] - nu.weights[j]) <= 1e-9);
  CHECK(res.value == doctest::Approx(w1_exact_1d(mu, nu)).epsilon(1e-9));
}

TEST_CASE("dimension mismatch rejected") {
  const DiscreteMeasure a = make_discrete_measure(1, {0.0}, {1}, 1);
  const DiscreteMeasure b = make_discrete_measure(2, {0.0, 0.0}, {1}, 1);
  CHECK_THROWS_AS(wp_discrete(a, b, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(wp_discrete(a, a, 0.5), std::invalid_argument);
}
