#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <limits>

#include "oracles.hpp"
#include "walsh/dyadic.hpp"
#include "walsh/transform.hpp"

using namespace walsh;

TEST_CASE("group_add is XOR on cells") {
  const Resolution r3(3);
  CHECK(group_add(DyadicPoint(5, r3), DyadicPoint(6, r3)).cell == 3);
  for (std::uint64_t x = 0; x < 8; ++x) {
    CHECK(group_add(DyadicPoint(x, r3), DyadicPoint(x, r3)).cell == 0);
    for (std::uint64_t y = 0; y < 8; ++y)
      CHECK(group_add(DyadicPoint(x, r3), DyadicPoint(y, r3)) == group_add(DyadicPoint(y, r3), DyadicPoint(x, r3)));
  }
  CHECK(group_add(DyadicPoint::unit(0, r3), DyadicPoint::unit(1, r3)).cell == 3);
  CHECK_THROWS_AS(group_add(DyadicPoint(1, Resolution(2)), DyadicPoint(1, r3)), std::invalid_argument);
  CHECK_THROWS_AS(DyadicPoint(8, r3), std::invalid_argument);
}

TEST_CASE("interval_cells") {
  const Resolution r3(3);
  CHECK(interval_cells(0, DyadicPoint(3, r3)).size() == 8);
  CHECK(interval_cells(2, DyadicPoint(0, r3)) == std::vector<std::uint64_t>{0, 4});
  CHECK(interval_cells(3, DyadicPoint(5, r3)) == std::vector<std::uint64_t>{5});
  CHECK_THROWS_AS(interval_cells(4, DyadicPoint(0, r3)), std::invalid_argument);

  const Resolution r5(5);
  for (int n = 0; n <= 5; ++n) {
    std::vector<int> hits(32, 0);
    for (std::uint64_t base = 0; base < (std::uint64_t{1} << n); ++base) {
      const auto cells = interval_cells(n, DyadicPoint(base, r5));
      CHECK(cells.size() == (std::size_t{1} << (5 - n)));
      for (auto c : cells) {
        CHECK((c & ((1u << n) - 1)) == base);
        ++hits[c];
      }
    }
    for (int h : hits) CHECK(h == 1);
  }
}

TEST_CASE("integrate") {
  CHECK(integrate(Grid1D(Resolution(4), 1.0)) == 1.0);
  CHECK(integrate(Grid2D(Resolution(3), 1.0)) == 1.0);
  CHECK(integrate(dirichlet_kernel(4, Resolution(3))) == 1.0);
  const Grid1D d3(Resolution(2), {3.0, 1.0, 1.0, -1.0});
  CHECK(integrate(d3) == 1.0);
}

TEST_CASE("grids reject non-finite values and shape mismatches") {
  CHECK_THROWS_AS(Grid1D(Resolution(1), {1.0, std::numeric_limits<double>::quiet_NaN()}), std::invalid_argument);
  CHECK_THROWS_AS(Grid2D(Resolution(1), {1.0, 2.0, std::numeric_limits<double>::infinity(), 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Grid1D(Resolution(2), {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS(Resolution(kMaxResolution + 1), std::invalid_argument);
}

TEST_CASE("lp and weak-lp worked examples") {
  const Resolution r3(3);
  const Grid1D d4 = dirichlet_kernel(4, r3);
  CHECK(lp_quasinorm(d4, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(weak_lp_quasinorm(d4, 0.5) == doctest::Approx(0.25).epsilon(1e-15));
  for (double p : {0.25, 0.5, 1.0, 2.0}) {
    CHECK(lp_quasinorm(Grid1D(r3, 1.0), p) == 1.0);
    CHECK(weak_lp_quasinorm(Grid2D(r3, -2.5), p) == 2.5);
    for (std::uint64_t n = 0; n < 8; ++n) CHECK(lp_quasinorm(walsh_function(n, r3), p) == 1.0);
  }
  CHECK_THROWS_AS(lp_quasinorm(d4, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(weak_lp_quasinorm(d4, -1.0), std::invalid_argument);
}

TEST_CASE("quasinorms agree with brute-force definitions") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Resolution r(1 + seed % 4);
    // Integer values give ties, which the weak formula must handle.
    const auto ints = oracle::random_integers(r.cells() * r.cells(), seed, -3, 3);
    const Grid2D f = oracle::integer_grid(r, ints);
    const auto vals = oracle::to_vector(f.values());
    const double m = r.cell_measure() * r.cell_measure();
    for (double p : {0.25, 0.5, 0.75}) {
      const double weak = weak_lp_quasinorm(f, p);
      const double strong = lp_quasinorm(f, p);
      CHECK(weak == doctest::Approx(oracle::weak_lp(vals, m, p)).epsilon(1e-12));
      CHECK(strong == doctest::Approx(oracle::lp(vals, m, p)).epsilon(1e-12));
      CHECK(weak <= strong * (1 + 1e-12));
    }
  }
}

TEST_CASE("weak <= strong on random real grids") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Grid2D f = oracle::random_grid(Resolution(4), seed);
    for (double p : {0.25, 0.5, 0.75}) CHECK(weak_lp_quasinorm(f, p) <= lp_quasinorm(f, p));
  }
}

TEST_CASE("p = 2 gives the mean square") {
  const Grid2D f = oracle::random_grid(Resolution(4), 7);
  double acc = 0.0;
  for (double v : f.values()) acc += v * v;
  acc /= 256.0;
  const double l2 = lp_quasinorm(f, 2.0);
  CHECK(l2 * l2 == doctest::Approx(acc).epsilon(1e-14));
}

TEST_CASE("refinement preserves integrals and quasinorms exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Grid2D f = oracle::random_grid(Resolution(3), seed);
    const Grid2D g = refine(f, Resolution(4));
    for (std::size_t x = 0; x < 16; ++x)
      for (std::size_t y = 0; y < 16; ++y) CHECK(g(x, y) == f(x & 7, y & 7));
    CHECK(integrate(g) == integrate(f));
    const Grid2D fi = oracle::integer_grid(Resolution(3), oracle::random_integers(64, seed));
    const Grid2D gi = refine(fi, Resolution(5));
    CHECK(integrate(gi) == integrate(fi));
    CHECK(weak_lp_quasinorm(gi, 0.5) == weak_lp_quasinorm(fi, 0.5));
    CHECK(lp_quasinorm(gi, 0.5) == lp_quasinorm(fi, 0.5));
    CHECK(lp_quasinorm(g, 0.75) == lp_quasinorm(f, 0.75));
    CHECK(weak_lp_quasinorm(g, 0.75) == weak_lp_quasinorm(f, 0.75));
  }
  const Grid1D h(Resolution(2), {1.0, -2.0, 3.0, 0.5});
  const Grid1D hr = refine(h, Resolution(4));
  CHECK(integrate(hr) == integrate(h));
  CHECK(lp_quasinorm(hr, 0.3) == lp_quasinorm(h, 0.3));
  CHECK(weak_lp_quasinorm(hr, 0.5) == weak_lp_quasinorm(h, 0.5));
  CHECK_THROWS_AS(refine(hr, Resolution(3)), std::invalid_argument);
}
