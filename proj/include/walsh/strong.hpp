#pragma once

// Weighted strong-convergence functionals of quadratical partial sums and the
// four-region split of ∫|S_{n,n} a|^p around an atom's support.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "walsh/dyadic.hpp"
#include "walsh/hardy.hpp"
#include "walsh/transform.hpp"
#include "walsh/weight.hpp"

namespace walsh {

struct ReportRow {
  std::uint64_t n = 0;
  double strong_norm = 0.0;
  double weak_norm = 0.0;
  double term = 0.0;
  double cumulative = 0.0;
};

/// Region order: Ī×Ī, Ī×I, I×Ī, I×I (first factor is x).
using RegionQuad = std::array<double, 4>;

struct RegionRow {
  std::uint64_t n = 0;
  RegionQuad term{};
  RegionQuad cumulative{};
};

struct RegionReport {
  double p = 0.0;
  std::uint64_t n_max = 0;
  int support_level = 0;
  std::vector<RegionRow> rows;

  RegionQuad totals() const { return rows.empty() ? RegionQuad{} : rows.back().cumulative; }
};

struct SweepReport {
  std::string functional;
  double p = 0.0;
  std::uint64_t n_max = 0;
  Resolution resolution;
  std::vector<ReportRow> rows;
  /// ‖f‖_{H_p}, filled where the functional is compared against it.
  std::optional<double> hp_norm;
  /// Closed-form Σ_{n > n_max} of the term once S_{n,n} f = f for all n > n_max.
  std::optional<double> tail;

  double cumulative() const { return rows.empty() ? 0.0 : rows.back().cumulative; }
  /// cumulative / ‖f‖_{H_p}^p
  std::optional<double> ratio() const;
};

struct FunctionalOptions {
  unsigned threads = 1;
  bool weak = true;
};

/// Σ_{n ≤ n_max} ‖S_{n,n}f‖_p^p / n^{3-2p}, 0 < p < 1. n_max may exceed 2^N.
SweepReport theorem1_sum(const Grid2D& f, double p, std::uint64_t n_max, const FunctionalOptions& opts = {});

/// Σ_{k ≤ k_max} ‖S_k g‖_p^p / k^{2-p}, 0 < p < 1.
SweepReport simon_1d_sum(const Grid1D& g, double p, std::uint64_t k_max, const FunctionalOptions& opts = {});

/// Σ_{n=2}^{n_max} ‖S_{n,n}f‖_1 / (n ln² n).
SweepReport theoremG_sum(const Grid2D& f, std::uint64_t n_max, const FunctionalOptions& opts = {});

/// Σ ‖S_{n,n}f‖_{weak-L_p}^p Φ(n) / n^{3-2p} over the selected n ≤ n_max.
SweepReport weighted_weak_sum(const Grid2D& f, double p, const WeightFn& weight, std::uint64_t n_max,
                              Parity parity = Parity::all, const FunctionalOptions& opts = {});

/// Per-n split of ∫|S_{n,n}a|^p / n^{3-2p} over the four products of
/// I_L and its complement. The atom must sit at the null base.
RegionReport region_contributions(const Atom2D& a, double p, std::uint64_t n_max, unsigned threads = 1);

/// Σ_{n ≥ first} n^{-s}, s > 1.
double power_tail(double s, std::uint64_t first);

}  // namespace walsh
