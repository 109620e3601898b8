#include "walsh/transform.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "walsh/parallel.hpp"

namespace walsh {
namespace {

template <class T>
void butterfly_impl(std::span<T> data) {
  const std::size_t n = data.size();
  if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("transform length must be a power of two");
  for (std::size_t h = 1; h < n; h <<= 1) {
    for (std::size_t i = 0; i < n; i += h << 1) {
      for (std::size_t j = i; j < i + h; ++j) {
        const T a = data[j];
        const T b = data[j + h];
        data[j] = a + b;
        data[j + h] = a - b;
      }
    }
  }
}

void require_kernel_index(std::uint64_t n, Resolution r) {
  if (n > r.cells()) throw std::invalid_argument("kernel index exceeds 2^N");
}

double mask_scale(Resolution r) { return std::ldexp(1.0, -r.bits); }

}  // namespace

int top_bit(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("top_bit of zero");
  return std::bit_width(n) - 1;
}

int ceil_log2(std::uint64_t n) { return n <= 1 ? 0 : std::bit_width(n - 1); }

Grid1D walsh_function(std::uint64_t n, Resolution r) {
  if (n >= r.cells()) throw std::invalid_argument("Walsh index must be below 2^N");
  Grid1D out(r);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = walsh_sign(n, c);
  return out;
}

std::vector<std::int64_t> dirichlet_kernel_int(std::uint64_t n, Resolution r, KernelMode mode) {
  require_kernel_index(n, r);
  const std::size_t cells = r.cells();
  std::vector<std::int64_t> d(cells, 0);
  if (mode == KernelMode::direct) {
    for (std::uint64_t k = 0; k < n; ++k)
      for (std::size_t c = 0; c < cells; ++c) d[c] += walsh_sign(k, c);
    return d;
  }
  if (n == 0) return d;
  if (std::has_single_bit(n)) {
    const int k = top_bit(n);
    for (std::size_t c = 0; c < cells; ++c)
      if (in_null_interval(c, k)) d[c] = static_cast<std::int64_t>(n);
    return d;
  }
  // D_n = w_n Σ_j n_j w_{2^j} D_{2^j}
  for (std::size_t c = 0; c < cells; ++c) {
    std::int64_t acc = 0;
    for (int j = 0; j < r.bits; ++j) {
      if (!((n >> j) & 1)) continue;
      if (!in_null_interval(c, j)) continue;
      acc += walsh_sign(std::uint64_t{1} << j, c) * (std::int64_t{1} << j);
    }
    d[c] = walsh_sign(n, c) * acc;
  }
  return d;
}

Grid1D dirichlet_kernel(std::uint64_t n, Resolution r, KernelMode mode) {
  const auto d = dirichlet_kernel_int(n, r, mode);
  return Grid1D(r, std::vector<double>(d.begin(), d.end()));
}

void butterfly(std::span<double> data) { butterfly_impl(data); }
void butterfly(std::span<std::int64_t> data) { butterfly_impl(data); }

namespace {

template <class T>
void butterfly_2d_impl(std::span<T> data, std::size_t side) {
  if (data.size() != side * side) throw std::invalid_argument("2D transform needs a square array");
  for (std::size_t x = 0; x < side; ++x) butterfly_impl(data.subspan(x * side, side));
  // Column pass done as the same butterfly over whole rows: row blocks combine
  // elementwise, which is the column transform without a transpose.
  for (std::size_t h = 1; h < side; h <<= 1) {
    for (std::size_t i = 0; i < side; i += h << 1) {
      for (std::size_t x = i; x < i + h; ++x) {
        T* a = data.data() + x * side;
        T* b = data.data() + (x + h) * side;
        for (std::size_t y = 0; y < side; ++y) {
          const T u = a[y];
          const T v = b[y];
          a[y] = u + v;
          b[y] = u - v;
        }
      }
    }
  }
}

}  // namespace

void butterfly_2d(std::span<double> data, std::size_t side) { butterfly_2d_impl(data, side); }
void butterfly_2d(std::span<std::int64_t> data, std::size_t side) { butterfly_2d_impl(data, side); }

Spectrum1D forward(const Grid1D& f) {
  Spectrum1D s{f.resolution(), std::vector<double>(f.values().begin(), f.values().end())};
  butterfly(s.coeffs);
  const double scale = mask_scale(f.resolution());
  for (double& c : s.coeffs) c *= scale;
  return s;
}

Spectrum2D forward(const Grid2D& f) {
  Spectrum2D s{f.resolution(), std::vector<double>(f.values().begin(), f.values().end())};
  butterfly_2d(s.coeffs, f.side());
  const double scale = mask_scale(f.resolution()) * mask_scale(f.resolution());
  for (double& c : s.coeffs) c *= scale;
  return s;
}

Grid1D inverse(const Spectrum1D& s) {
  std::vector<double> v = s.coeffs;
  butterfly(v);
  return Grid1D(s.resolution, std::move(v));
}

Grid2D inverse(const Spectrum2D& s) {
  std::vector<double> v = s.coeffs;
  butterfly_2d(v, s.side());
  return Grid2D(s.resolution, std::move(v));
}

int spectral_extent(const Spectrum2D& s) {
  std::uint64_t top = 0;
  const std::size_t side = s.side();
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j)
      if (s.coeffs[i * side + j] != 0.0) top = std::max<std::uint64_t>(top, std::max(i, j) + 1);
  return ceil_log2(top);
}

int spectral_extent(const Spectrum1D& s) {
  std::uint64_t top = 0;
  for (std::size_t i = 0; i < s.coeffs.size(); ++i)
    if (s.coeffs[i] != 0.0) top = i + 1;
  return ceil_log2(top);
}

std::vector<double> partial_sum_compact(const Spectrum2D& s, std::uint64_t m, std::uint64_t n2, int level) {
  if (level < 0 || level > s.resolution.bits) throw std::invalid_argument("compact level exceeds resolution");
  const std::size_t side = std::size_t{1} << level;
  if (m > side || n2 > side) throw std::invalid_argument("partial sum index exceeds compact level");
  std::vector<double> block(side * side, 0.0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n2; ++j) block[i * side + j] = s(i, j);
  butterfly_2d(block, side);
  return block;
}

std::vector<double> partial_sum_compact(const Spectrum1D& s, std::uint64_t m, int level) {
  if (level < 0 || level > s.resolution.bits) throw std::invalid_argument("compact level exceeds resolution");
  const std::size_t side = std::size_t{1} << level;
  if (m > side) throw std::invalid_argument("partial sum index exceeds compact level");
  std::vector<double> block(side, 0.0);
  for (std::size_t i = 0; i < m; ++i) block[i] = s.coeffs[i];
  butterfly(block);
  return block;
}

Grid2D partial_sum_rect(const Spectrum2D& s, std::uint64_t m, std::uint64_t n2) {
  if (m > s.side() || n2 > s.side()) throw std::invalid_argument("partial sum index exceeds 2^N");
  return Grid2D(s.resolution, partial_sum_compact(s, m, n2, s.resolution.bits));
}

Grid2D partial_sum_rect(const Grid2D& f, std::uint64_t m, std::uint64_t n2) {
  if (m > f.side() || n2 > f.side()) throw std::invalid_argument("partial sum index exceeds 2^N");
  return partial_sum_rect(forward(f), m, n2);
}

Grid1D partial_sum(const Grid1D& g, std::uint64_t m) {
  if (m > g.size()) throw std::invalid_argument("partial sum index exceeds 2^N");
  return Grid1D(g.resolution(), partial_sum_compact(forward(g), m, g.resolution().bits));
}

Grid2D marginal_partial_sum(const Grid2D& f, std::uint64_t m, Axis axis) {
  const std::size_t side = f.side();
  if (m > side) throw std::invalid_argument("partial sum index exceeds 2^N");
  Spectrum2D s = forward(f);
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      const std::size_t idx = axis == Axis::first ? i : j;
      if (idx >= m) s.coeffs[i * side + j] = 0.0;
    }
  return inverse(s);
}

namespace {

std::vector<std::uint64_t> selected_indices(std::uint64_t lo, std::uint64_t hi, Parity parity) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n)
    if (parity == Parity::all || (n & 1)) out.push_back(n);
  return out;
}

SweepRow measure(std::uint64_t n, std::span<const double> values, int level, double p, bool weak) {
  const double m = std::ldexp(1.0, -level);
  SweepRow row;
  row.n = n;
  row.lp_integral = lp_integral(values, m * m, p, 2);
  row.strong_norm = std::pow(row.lp_integral, 1.0 / p);
  row.weak_norm = weak ? weak_lp(values, m * m, p) : 0.0;
  return row;
}

void check_range(std::uint64_t lo, std::uint64_t hi, Resolution r) {
  if (lo < 1 || lo > hi) throw std::invalid_argument("empty partial-sum range");
  if (hi > r.cells()) throw std::invalid_argument("partial-sum range exceeds 2^N");
}

}  // namespace

std::vector<SweepRow> quad_sweep(const Spectrum2D& s, double p, std::uint64_t n_lo, std::uint64_t n_hi,
                                 const SweepOptions& opts) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
  check_range(n_lo, n_hi, s.resolution);
  const auto ns = selected_indices(n_lo, n_hi, opts.parity);
  if (ns.empty()) throw std::invalid_argument("no partial-sum index matches the parity filter");

  const int extent = spectral_extent(s);
  const std::uint64_t saturation = std::uint64_t{1} << extent;

  // Every n ≥ 2^extent yields f itself.
  std::optional<SweepRow> saturated;
  if (ns.back() >= saturation) {
    const auto full = partial_sum_compact(s, saturation, saturation, extent);
    saturated = measure(0, full, extent, p, opts.weak);
  }

  std::vector<SweepRow> rows(ns.size());
  parallel_for(ns.size(), opts.threads, [&](std::size_t k) {
    const std::uint64_t n = ns[k];
    if (n >= saturation) {
      rows[k] = *saturated;
      rows[k].n = n;
      return;
    }
    const int level = ceil_log2(n);
    const auto v = partial_sum_compact(s, n, n, level);
    rows[k] = measure(n, v, level, p, opts.weak);
  });
  return rows;
}

std::vector<SweepRow> quad_sweep(const Grid2D& f, double p, std::uint64_t n_lo, std::uint64_t n_hi,
                                 const SweepOptions& opts) {
  return quad_sweep(forward(f), p, n_lo, n_hi, opts);
}

std::vector<SweepRow> partial_sweep_1d(const Grid1D& g, double p, std::uint64_t k_lo, std::uint64_t k_hi,
                                       const SweepOptions& opts) {
  if (!(p > 0.0)) throw std::invalid_argument("exponent p must be positive");
  check_range(k_lo, k_hi, g.resolution());
  const auto ks = selected_indices(k_lo, k_hi, opts.parity);
  if (ks.empty()) throw std::invalid_argument("no partial-sum index matches the parity filter");
  const Spectrum1D s = forward(g);
  const int extent = spectral_extent(s);
  std::vector<SweepRow> rows(ks.size());
  parallel_for(ks.size(), opts.threads, [&](std::size_t idx) {
    const std::uint64_t k = ks[idx];
    const int level = std::min(ceil_log2(k), extent);
    const auto v = partial_sum_compact(s, std::min<std::uint64_t>(k, std::uint64_t{1} << level), level);
    const double m = std::ldexp(1.0, -level);
    SweepRow row;
    row.n = k;
    row.lp_integral = lp_integral(v, m, p);
    row.strong_norm = std::pow(row.lp_integral, 1.0 / p);
    row.weak_norm = opts.weak ? weak_lp(v, m, p) : 0.0;
    rows[idx] = row;
  });
  return rows;
}

}  // namespace walsh
