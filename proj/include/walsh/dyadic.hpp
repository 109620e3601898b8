#pragma once

// Truncated Walsh group G_N: points are cells in [0, 2^N), coordinate x_i is
// bit i of the cell (x_0 = least significant bit). Functions are level-N step
// functions stored cell by cell, so every integral below is exact up to
// floating point summation.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace walsh {

/// Largest resolution a grid may carry. 2D grids at this level already
/// hold 2^32 cells; anything beyond is rejected up front.
inline constexpr int kMaxResolution = 16;

struct Resolution {
  int bits = 0;

  constexpr Resolution() = default;
  constexpr explicit Resolution(int n) : bits(n) {
    if (n < 0 || n > kMaxResolution)
      throw std::invalid_argument("resolution out of range");
  }

  constexpr std::size_t cells() const { return std::size_t{1} << bits; }
  constexpr double cell_measure() const { return 1.0 / static_cast<double>(cells()); }

  friend constexpr bool operator==(Resolution, Resolution) = default;
};

struct DyadicPoint {
  std::uint64_t cell = 0;
  Resolution resolution;

  constexpr DyadicPoint() = default;
  constexpr DyadicPoint(std::uint64_t c, Resolution r) : cell(c), resolution(r) {
    if (c >= r.cells()) throw std::invalid_argument("cell outside the group");
  }

  /// e_n: the point whose n-th coordinate is 1.
  static DyadicPoint unit(int n, Resolution r);

  friend constexpr bool operator==(const DyadicPoint&, const DyadicPoint&) = default;
};

DyadicPoint group_add(const DyadicPoint& a, const DyadicPoint& b);

/// Cells of I_n(base): those agreeing with base on coordinates 0..n-1.
/// Returned in increasing order.
std::vector<std::uint64_t> interval_cells(int level, const DyadicPoint& base);

/// True when cell lies in I_level (the interval at the null element).
constexpr bool in_null_interval(std::uint64_t cell, int level) {
  return (cell & ((std::uint64_t{1} << level) - 1)) == 0;
}

class Grid1D {
 public:
  Grid1D() = default;
  explicit Grid1D(Resolution r, double fill = 0.0);
  Grid1D(Resolution r, std::vector<double> values);

  Resolution resolution() const { return res_; }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator[](std::size_t c) const { return values_[c]; }
  double& operator[](std::size_t c) { return values_[c]; }

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  Resolution res_;
  std::vector<double> values_;
};

/// Row index is the x-cell, column index the y-cell.
class Grid2D {
 public:
  Grid2D() = default;
  explicit Grid2D(Resolution r, double fill = 0.0);
  Grid2D(Resolution r, std::vector<double> values);

  /// Tensor product f(x) g(y).
  static Grid2D outer(const Grid1D& fx, const Grid1D& gy);

  Resolution resolution() const { return res_; }
  std::size_t side() const { return res_.cells(); }
  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }
  double operator()(std::size_t x, std::size_t y) const { return values_[x * side() + y]; }
  double& operator()(std::size_t x, std::size_t y) { return values_[x * side() + y]; }

  friend bool operator==(const Grid2D&, const Grid2D&) = default;

 private:
  Resolution res_;
  std::vector<double> values_;
};

/// Re-express a grid at a finer resolution. Under the LSB convention a
/// level-N function depends only on the low N bits of each coordinate.
Grid1D refine(const Grid1D& f, Resolution finer);
Grid2D refine(const Grid2D& f, Resolution finer);

double integrate(const Grid1D& f);
double integrate(const Grid2D& f);

/// 2D arrays must be 2^k x 2^k; side of such an array.
std::size_t square_side(std::size_t count);

/// ∫|v|^p over a step function with equal cell measure, summed by halving
/// folds so that refinement leaves the result bit-identical. dims = 2 folds
/// a square array along both axes at once.
double lp_integral(std::span<const double> values, double cell_measure, double p, int dims = 1);
/// sup_λ λ μ(|v| > λ)^{1/p}, via the sorted-values formula.
double weak_lp(std::span<const double> values, double cell_measure, double p);

double lp_quasinorm(const Grid1D& f, double p);
double lp_quasinorm(const Grid2D& f, double p);
double weak_lp_quasinorm(const Grid1D& f, double p);
double weak_lp_quasinorm(const Grid2D& f, double p);

}  // namespace walsh
