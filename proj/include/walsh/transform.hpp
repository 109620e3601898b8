#pragma once

// Walsh–Paley functions, Dirichlet kernels and partial-sum operators.
//
// Paley order throughout: w_n(c) = (-1)^{popcount(n & c)}. Spectra are stored
// in the same index order as grids, coeffs(i, j) = f^(i, j).

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "walsh/dyadic.hpp"

namespace walsh {

/// |n| = position of the highest set bit; n must be positive.
int top_bit(std::uint64_t n);
/// Smallest level ℓ with n ≤ 2^ℓ (0 for n ≤ 1).
int ceil_log2(std::uint64_t n);

constexpr int walsh_sign(std::uint64_t n, std::uint64_t cell) {
  return (__builtin_popcountll(n & cell) & 1) ? -1 : 1;
}

struct Spectrum1D {
  Resolution resolution;
  std::vector<double> coeffs;
};

struct Spectrum2D {
  Resolution resolution;
  std::vector<double> coeffs;

  std::size_t side() const { return resolution.cells(); }
  double operator()(std::size_t i, std::size_t j) const { return coeffs[i * side() + j]; }
};

Grid1D walsh_function(std::uint64_t n, Resolution r);

enum class KernelMode { direct, closed };

/// D_n as exact integers over the 2^N cells.
std::vector<std::int64_t> dirichlet_kernel_int(std::uint64_t n, Resolution r, KernelMode mode);
Grid1D dirichlet_kernel(std::uint64_t n, Resolution r, KernelMode mode = KernelMode::closed);

// In-place radix-2 butterflies. Length must be a power of two.
void butterfly(std::span<double> data);
void butterfly(std::span<std::int64_t> data);
/// Row then column butterflies on a side x side matrix.
void butterfly_2d(std::span<double> data, std::size_t side);
void butterfly_2d(std::span<std::int64_t> data, std::size_t side);

Spectrum1D forward(const Grid1D& f);
Spectrum2D forward(const Grid2D& f);
Grid1D inverse(const Spectrum1D& s);
Grid2D inverse(const Spectrum2D& s);

/// Smallest k such that every nonzero coefficient has both indices < 2^k.
/// Beyond that level every partial sum S_{n,n} with n ≥ 2^k equals f.
int spectral_extent(const Spectrum2D& s);
int spectral_extent(const Spectrum1D& s);

/// S_{M,N2} f evaluated on level-`level` cells (2^level x 2^level values).
/// Requires M, N2 ≤ 2^level ≤ 2^N. The full-resolution grid is the
/// refinement of this one.
std::vector<double> partial_sum_compact(const Spectrum2D& s, std::uint64_t m, std::uint64_t n2, int level);
std::vector<double> partial_sum_compact(const Spectrum1D& s, std::uint64_t m, int level);

Grid2D partial_sum_rect(const Grid2D& f, std::uint64_t m, std::uint64_t n2);
Grid2D partial_sum_rect(const Spectrum2D& s, std::uint64_t m, std::uint64_t n2);
Grid1D partial_sum(const Grid1D& g, std::uint64_t m);

enum class Axis { first = 1, second = 2 };
Grid2D marginal_partial_sum(const Grid2D& f, std::uint64_t m, Axis axis);

enum class Parity { all, odd };

struct SweepRow {
  std::uint64_t n = 0;
  double lp_integral = 0.0;  ///< ∫|S_{n,n}f|^p
  double strong_norm = 0.0;  ///< ‖S_{n,n}f‖_p
  double weak_norm = 0.0;    ///< ‖S_{n,n}f‖_{weak-L_p}
};

struct SweepOptions {
  Parity parity = Parity::all;
  unsigned threads = 1;
  bool weak = true;  ///< skip the sort when only strong norms are needed
};

/// Quasinorms of S_{n,n}f for n in [n_lo, n_hi]. n_hi may exceed 2^N: those
/// partial sums equal f. Rows come out in increasing n regardless of
/// thread count.
std::vector<SweepRow> quad_sweep(const Spectrum2D& s, double p, std::uint64_t n_lo, std::uint64_t n_hi,
                                 const SweepOptions& opts = {});
std::vector<SweepRow> quad_sweep(const Grid2D& f, double p, std::uint64_t n_lo, std::uint64_t n_hi,
                                 const SweepOptions& opts = {});

/// One-dimensional analogue over S_k g.
std::vector<SweepRow> partial_sweep_1d(const Grid1D& g, double p, std::uint64_t k_lo, std::uint64_t k_hi,
                                       const SweepOptions& opts = {});

}  // namespace walsh
