#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracles.hpp"
#include "walsh/identities.hpp"
#include "walsh/transform.hpp"

using namespace walsh;

TEST_CASE("binary index helpers") {
  CHECK(top_bit(1) == 0);
  CHECK(top_bit(5) == 2);
  CHECK(top_bit(8) == 3);
  CHECK(ceil_log2(0) == 0);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(5) == 3);
  CHECK(ceil_log2(8) == 3);
  for (std::uint64_t n = 1; n < 1000; ++n) {
    CHECK((std::uint64_t{1} << top_bit(n)) <= n);
    CHECK(n < (std::uint64_t{2} << top_bit(n)));
  }
  CHECK_THROWS_AS(top_bit(0), std::invalid_argument);
}

TEST_CASE("walsh functions") {
  const Grid1D w0 = walsh_function(0, Resolution(3));
  for (double v : w0.values()) CHECK(v == 1.0);
  CHECK(oracle::to_vector(walsh_function(1, Resolution(1)).values()) == std::vector<double>{1, -1});
  CHECK(oracle::to_vector(walsh_function(3, Resolution(2)).values()) == std::vector<double>{1, -1, -1, 1});
  // Rademacher r_k(x) = (-1)^{x_k}.
  for (int k = 0; k < 4; ++k) {
    const auto r = walsh_function(std::uint64_t{1} << k, Resolution(4));
    for (std::size_t c = 0; c < 16; ++c) CHECK(r[c] == (((c >> k) & 1) ? -1.0 : 1.0));
  }
  CHECK_THROWS_AS(walsh_function(8, Resolution(3)), std::invalid_argument);
}

TEST_CASE("dirichlet kernel examples") {
  const Resolution r3(3);
  CHECK(oracle::to_vector(dirichlet_kernel(4, r3).values()) == std::vector<double>{4, 0, 0, 0, 4, 0, 0, 0});
  const Grid1D d1 = dirichlet_kernel(1, r3);
  for (double v : d1.values()) CHECK(v == 1.0);
  CHECK(oracle::to_vector(dirichlet_kernel(3, Resolution(2), KernelMode::direct).values()) ==
        std::vector<double>{3, 1, 1, -1});
  CHECK(oracle::to_vector(dirichlet_kernel(3, Resolution(2), KernelMode::closed).values()) ==
        std::vector<double>{3, 1, 1, -1});
  CHECK_THROWS_AS(dirichlet_kernel(9, r3), std::invalid_argument);
}

TEST_CASE("kernel identities hold exactly for N <= 8") {
  for (int n = 0; n <= 8; ++n)
    for (const auto& r : kernel_identities(Resolution(n))) {
      CAPTURE(n);
      CAPTURE(r.name);
      CHECK(r.failures == 0);
    }
  // The identity suite checks every n ≤ 2^N.
  const auto at3 = kernel_identities(Resolution(3));
  CHECK(at3.front().checked == 9 * 8);
}

TEST_CASE("kernel identity suite detects a corrupted kernel") {
  const auto res = kernel_identities(Resolution(5), true);
  std::uint64_t failures = 0;
  for (const auto& r : res) failures += r.failures;
  CHECK(failures > 0);
}

TEST_CASE("forward transform of a Walsh function is a unit vector") {
  for (std::uint64_t m = 0; m < 8; ++m) {
    const auto s = forward(walsh_function(m, Resolution(3)));
    for (std::size_t i = 0; i < 8; ++i) CHECK(s.coeffs[i] == (i == m ? 1.0 : 0.0));
  }
}

TEST_CASE("forward transform equals direct coefficient integrals exactly (integer-scaled)") {
  for (int bits = 0; bits <= 4; ++bits) {
    const Resolution r(bits);
    const std::size_t side = r.cells();
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const auto ints = oracle::random_integers(side * side, seed * 31 + bits);
      const Spectrum2D s = forward(oracle::integer_grid(r, ints));
      for (std::uint64_t i = 0; i < side; ++i)
        for (std::uint64_t j = 0; j < side; ++j) {
          // 4^N f^ is an integer; the scaling by a power of two is exact.
          const double scaled = s(i, j) * static_cast<double>(side * side);
          CHECK(scaled == static_cast<double>(oracle::scaled_coefficient(ints, side, i, j)));
        }
    }
  }
}

TEST_CASE("round trip and Parseval on random grids") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Resolution r(1 + seed % 6);
    const Grid2D f = oracle::random_grid(r, seed);
    const Spectrum2D s = forward(f);
    const Grid2D back = inverse(s);
    CHECK(oracle::max_rel_diff(oracle::to_vector(back.values()), oracle::to_vector(f.values())) <= 1e-12);
    double energy = 0.0, spectral = 0.0;
    for (double v : f.values()) energy += v * v;
    energy *= r.cell_measure() * r.cell_measure();
    for (double c : s.coeffs) spectral += c * c;
    CHECK(spectral == doctest::Approx(energy).epsilon(1e-9));
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Grid2D f = oracle::random_grid(Resolution(6), 1000 + seed);
    double energy = 0.0, spectral = 0.0;
    for (double v : f.values()) energy += v * v;
    energy /= 4096.0;
    for (double c : forward(f).coeffs) spectral += c * c;
    CHECK(spectral == doctest::Approx(energy).epsilon(1e-9));
  }
  const Grid1D g(Resolution(3), {1, 2, -3, 4, 0.5, 0, -1, 2});
  CHECK(oracle::max_rel_diff(oracle::to_vector(inverse(forward(g)).values()), oracle::to_vector(g.values())) <= 1e-15);
}

TEST_CASE("butterfly rejects lengths that are not powers of two") {
  std::vector<double> v(6, 1.0);
  CHECK_THROWS_AS(butterfly(std::span<double>(v)), std::invalid_argument);
  CHECK_THROWS_AS(butterfly_2d(std::span<double>(v), 2), std::invalid_argument);
}

TEST_CASE("rectangular partial sums") {
  const Resolution r3(3);
  const Grid2D f = oracle::random_grid(r3, 11);
  CHECK(oracle::max_rel_diff(oracle::to_vector(partial_sum_rect(f, 8, 8).values()), oracle::to_vector(f.values())) <=
        1e-15);
  const double mean = integrate(f);
  const Grid2D s11 = partial_sum_rect(f, 1, 1);
  for (double v : s11.values()) CHECK(v == doctest::Approx(mean).epsilon(1e-14));

  const Grid2D w23 = Grid2D::outer(walsh_function(2, r3), walsh_function(3, r3));
  CHECK(partial_sum_rect(w23, 3, 4) == w23);
  const Grid2D s33 = partial_sum_rect(w23, 3, 3);
  for (double v : s33.values()) CHECK(v == 0.0);
  CHECK_THROWS_AS(partial_sum_rect(f, 9, 1), std::invalid_argument);

  // Against direct coefficient sums at small N.
  const Grid2D h = oracle::random_grid(Resolution(3), 5);
  for (std::uint64_t m = 0; m <= 8; ++m)
    for (std::uint64_t n2 = 0; n2 <= 8; n2 += 3) {
      const auto fast = oracle::to_vector(partial_sum_rect(h, m, n2).values());
      const auto slow = oracle::partial_sum(h, m, n2);
      for (std::size_t c = 0; c < fast.size(); ++c) CHECK(fast[c] == doctest::Approx(slow[c]).epsilon(1e-12).scale(1));
    }
}

TEST_CASE("compact partial sums refine to the full-resolution ones") {
  const Grid2D f = oracle::random_grid(Resolution(5), 3);
  const Spectrum2D s = forward(f);
  for (std::uint64_t n : {1u, 3u, 4u, 7u, 13u, 32u}) {
    const int level = ceil_log2(n);
    const auto compact = partial_sum_compact(s, n, n, level);
    const Grid2D full = partial_sum_rect(s, n, n);
    const std::size_t side = std::size_t{1} << level;
    const std::size_t mask = side - 1;
    for (std::size_t x = 0; x < 32; ++x)
      for (std::size_t y = 0; y < 32; ++y)
        CHECK(compact[(x & mask) * side + (y & mask)] == doctest::Approx(full(x, y)).epsilon(1e-12).scale(1));
  }
}

TEST_CASE("marginal partial sums") {
  const Resolution r3(3);
  const Grid2D w23 = Grid2D::outer(walsh_function(2, r3), walsh_function(3, r3));
  CHECK(marginal_partial_sum(w23, 3, Axis::first) == w23);
  const Grid2D m2 = marginal_partial_sum(w23, 2, Axis::first);
  for (double v : m2.values()) CHECK(v == 0.0);
  const Grid2D f = oracle::random_grid(r3, 9);
  CHECK(marginal_partial_sum(f, 8, Axis::first) == partial_sum_rect(f, 8, 8));
  for (std::uint64_t m = 0; m <= 8; ++m)
    for (std::uint64_t n2 = 0; n2 <= 8; ++n2) {
      const Grid2D composed = marginal_partial_sum(marginal_partial_sum(f, m, Axis::first), n2, Axis::second);
      const Grid2D direct = partial_sum_rect(f, m, n2);
      CHECK(oracle::max_rel_diff(oracle::to_vector(composed.values()), oracle::to_vector(direct.values())) <= 1e-14);
    }
  CHECK_THROWS_AS(marginal_partial_sum(f, 9, Axis::second), std::invalid_argument);
}

TEST_CASE("quad_sweep") {
  const Resolution r4(4);
  const auto ones = quad_sweep(Grid2D(r4, 1.0), 0.5, 1, 16);
  REQUIRE(ones.size() == 16);
  for (const auto& row : ones) {
    CHECK(row.strong_norm == 1.0);
    CHECK(row.weak_norm == 1.0);
  }

  // Spectrum inside [0,4)^2: norms freeze from n = 4 on.
  std::vector<double> coeffs(256, 0.0);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) coeffs[i * 16 + j] = static_cast<double>((i * 7 + j * 3) % 5) - 2.0;
  const Spectrum2D s{r4, coeffs};
  const auto rows = quad_sweep(s, 0.5, 1, 16);
  for (std::size_t k = 4; k < rows.size(); ++k) {
    CHECK(rows[k].strong_norm == doctest::Approx(rows[3].strong_norm).epsilon(1e-12));
    CHECK(rows[k].weak_norm == doctest::Approx(rows[3].weak_norm).epsilon(1e-12));
  }

  const Grid2D f = oracle::random_grid(r4, 21);
  const auto all = quad_sweep(f, 0.75, 1, 16);
  for (const auto& row : all) {
    const Grid2D sn = partial_sum_rect(f, row.n, row.n);
    CHECK(row.strong_norm == doctest::Approx(lp_quasinorm(sn, 0.75)).epsilon(1e-12));
    CHECK(row.weak_norm == doctest::Approx(weak_lp_quasinorm(sn, 0.75)).epsilon(1e-12));
  }
  const auto odd = quad_sweep(f, 0.75, 1, 16, SweepOptions{Parity::odd, 1, true});
  REQUIRE(odd.size() == 8);
  for (std::size_t k = 0; k < odd.size(); ++k) {
    CHECK(odd[k].n == 2 * k + 1);
    CHECK(odd[k].strong_norm == all[2 * k].strong_norm);
  }
  CHECK_THROWS_AS(quad_sweep(f, 0.5, 5, 4), std::invalid_argument);
  CHECK_THROWS_AS(quad_sweep(f, 0.5, 0, 4), std::invalid_argument);
  CHECK_THROWS_AS(quad_sweep(f, 0.5, 1, 17), std::invalid_argument);
  CHECK_THROWS_AS(quad_sweep(f, 0.5, 2, 2, SweepOptions{Parity::odd, 1, true}), std::invalid_argument);
}

TEST_CASE("quad_sweep is bit-identical across thread counts") {
  const Grid2D f = oracle::random_grid(Resolution(6), 77);
  const auto one = quad_sweep(f, 0.5, 1, 64, SweepOptions{Parity::all, 1, true});
  for (unsigned t : {2u, 3u, 8u}) {
    const auto many = quad_sweep(f, 0.5, 1, 64, SweepOptions{Parity::all, t, true});
    REQUIRE(many.size() == one.size());
    for (std::size_t k = 0; k < one.size(); ++k) {
      CHECK(many[k].n == one[k].n);
      CHECK(many[k].lp_integral == one[k].lp_integral);
      CHECK(many[k].weak_norm == one[k].weak_norm);
    }
  }
}

TEST_CASE("one-dimensional partial sums") {
  const Grid1D g(Resolution(3), {1, 2, -3, 4, 0.5, 0, -1, 2});
  const Spectrum1D s = forward(g);
  for (std::uint64_t m = 0; m <= 8; ++m) {
    const Grid1D sm = partial_sum(g, m);
    for (std::size_t x = 0; x < 8; ++x) {
      double acc = 0.0;
      for (std::uint64_t i = 0; i < m; ++i) acc += s.coeffs[i] * oracle::sign(i, x);
      CHECK(sm[x] == doctest::Approx(acc).epsilon(1e-13).scale(1));
    }
  }
  const auto rows = partial_sweep_1d(g, 0.5, 1, 8);
  for (const auto& row : rows)
    CHECK(row.strong_norm == doctest::Approx(lp_quasinorm(partial_sum(g, row.n), 0.5)).epsilon(1e-12));
}
