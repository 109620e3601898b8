#include "walsh/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>

namespace walsh {
namespace {

void require_finite(std::span<const double> v) {
  for (double x : v)
    if (!std::isfinite(x)) throw std::invalid_argument("grid values must be finite");
}

void require_positive_exponent(double p) {
  if (!(p > 0.0) || !std::isfinite(p)) throw std::invalid_argument("exponent p must be in (0, inf)");
}

// Halving folds: each step adds the upper half of the top coordinate onto
// the lower half. A refined grid's first fold doubles every value exactly and
// the remaining folds repeat the coarse grid's, so sums are refinement-exact.
double fold_sum_1d(std::vector<double> v) {
  for (std::size_t n = v.size(); n > 1; n /= 2)
    for (std::size_t i = 0, h = n / 2; i < h; ++i) v[i] += v[i + h];
  return v.empty() ? 0.0 : v[0];
}

double fold_sum_2d(std::vector<double> v) {
  const std::size_t stride = square_side(v.size());
  for (std::size_t s = stride; s > 1; s /= 2) {
    const std::size_t h = s / 2;
    for (std::size_t x = 0; x < h; ++x)
      for (std::size_t y = 0; y < h; ++y) {
        double* row = &v[x * stride];
        const double* low = &v[(x + h) * stride];
        row[y] = (row[y] + low[y]) + (row[y + h] + low[y + h]);
      }
  }
  return v.empty() ? 0.0 : v[0];
}

}  // namespace

DyadicPoint DyadicPoint::unit(int n, Resolution r) {
  if (n < 0 || n >= r.bits) throw std::invalid_argument("coordinate index outside resolution");
  return DyadicPoint(std::uint64_t{1} << n, r);
}

DyadicPoint group_add(const DyadicPoint& a, const DyadicPoint& b) {
  if (a.resolution != b.resolution) throw std::invalid_argument("resolution mismatch");
  return DyadicPoint(a.cell ^ b.cell, a.resolution);
}

std::vector<std::uint64_t> interval_cells(int level, const DyadicPoint& base) {
  const int n_bits = base.resolution.bits;
  if (level < 0 || level > n_bits) throw std::invalid_argument("interval level exceeds resolution");
  const std::uint64_t low = base.cell & ((std::uint64_t{1} << level) - 1);
  const std::uint64_t count = std::uint64_t{1} << (n_bits - level);
  std::vector<std::uint64_t> cells;
  cells.reserve(count);
  for (std::uint64_t hi = 0; hi < count; ++hi) cells.push_back((hi << level) | low);
  return cells;
}

Grid1D::Grid1D(Resolution r, double fill) : res_(r), values_(r.cells(), fill) {
  require_finite(values_);
}

Grid1D::Grid1D(Resolution r, std::vector<double> values) : res_(r), values_(std::move(values)) {
  if (values_.size() != r.cells()) throw std::invalid_argument("grid length does not match resolution");
  require_finite(values_);
}

Grid2D::Grid2D(Resolution r, double fill) : res_(r), values_(r.cells() * r.cells(), fill) {
  require_finite(values_);
}

Grid2D::Grid2D(Resolution r, std::vector<double> values) : res_(r), values_(std::move(values)) {
  if (values_.size() != r.cells() * r.cells())
    throw std::invalid_argument("grid shape does not match resolution");
  require_finite(values_);
}

Grid2D Grid2D::outer(const Grid1D& fx, const Grid1D& gy) {
  if (fx.resolution() != gy.resolution()) throw std::invalid_argument("resolution mismatch");
  Grid2D out(fx.resolution());
  const std::size_t n = out.side();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) out(x, y) = fx[x] * gy[y];
  return out;
}

Grid1D refine(const Grid1D& f, Resolution finer) {
  if (finer.bits < f.resolution().bits) throw std::invalid_argument("refine target is coarser");
  const std::size_t mask = f.size() - 1;
  Grid1D out(finer);
  for (std::size_t c = 0; c < out.size(); ++c) out[c] = f[c & mask];
  return out;
}

Grid2D refine(const Grid2D& f, Resolution finer) {
  if (finer.bits < f.resolution().bits) throw std::invalid_argument("refine target is coarser");
  const std::size_t mask = f.side() - 1;
  Grid2D out(finer);
  for (std::size_t x = 0; x < out.side(); ++x)
    for (std::size_t y = 0; y < out.side(); ++y) out(x, y) = f(x & mask, y & mask);
  return out;
}

std::size_t square_side(std::size_t count) {
  const auto side = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(count))));
  if (side * side != count || !std::has_single_bit(side)) throw std::invalid_argument("2D values must form a 2^k x 2^k square");
  return side;
}

double integrate(const Grid1D& f) {
  return fold_sum_1d({f.values().begin(), f.values().end()}) * f.resolution().cell_measure();
}

double integrate(const Grid2D& f) {
  const double m = f.resolution().cell_measure();
  return fold_sum_2d({f.values().begin(), f.values().end()}) * (m * m);
}

double lp_integral(std::span<const double> values, double cell_measure, double p, int dims) {
  require_positive_exponent(p);
  if (dims != 1 && dims != 2) throw std::invalid_argument("dims must be 1 or 2");
  std::vector<double> mags(values.size());
  if (p == 1.0)
    std::transform(values.begin(), values.end(), mags.begin(), [](double v) { return std::abs(v); });
  else
    std::transform(values.begin(), values.end(), mags.begin(),
                   [p](double v) { return v == 0.0 ? 0.0 : std::pow(std::abs(v), p); });
  return (dims == 1 ? fold_sum_1d(std::move(mags)) : fold_sum_2d(std::move(mags))) * cell_measure;
}

double weak_lp(std::span<const double> values, double cell_measure, double p) {
  require_positive_exponent(p);
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double v) { return std::abs(v); });
  std::sort(mags.begin(), mags.end(), std::greater<>());
  // λ ↑ v_(k) gives μ(|f| > λ) ≥ k·m, equality once ties are exhausted.
  double best = 0.0;
  const double inv_p = 1.0 / p;
  for (std::size_t k = 0; k < mags.size(); ++k) {
    if (mags[k] == 0.0) break;
    if (k + 1 < mags.size() && mags[k + 1] == mags[k]) continue;
    const double level = static_cast<double>(k + 1) * cell_measure;
    best = std::max(best, mags[k] * std::pow(level, inv_p));
  }
  return best;
}

double lp_quasinorm(const Grid1D& f, double p) {
  return std::pow(lp_integral(f.values(), f.resolution().cell_measure(), p), 1.0 / p);
}

double lp_quasinorm(const Grid2D& f, double p) {
  const double m = f.resolution().cell_measure();
  return std::pow(lp_integral(f.values(), m * m, p, 2), 1.0 / p);
}

double weak_lp_quasinorm(const Grid1D& f, double p) {
  return weak_lp(f.values(), f.resolution().cell_measure(), p);
}

double weak_lp_quasinorm(const Grid2D& f, double p) {
  const double m = f.resolution().cell_measure();
  return weak_lp(f.values(), m * m, p);
}

}  // namespace walsh
