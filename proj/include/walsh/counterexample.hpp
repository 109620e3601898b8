#pragma once

// Divergent martingale built from Dirichlet-kernel differences at lacunary
// scales 2^{α_k}:
//
//   a_k = 2^{α_k(2/p-2)} (D_{2^{α_k+1}} - D_{2^{α_k}}) ⊗ (D_{2^{α_k+1}} - D_{2^{α_k}})
//   λ_k = Φ(2^{α_k})^{-1/4},   f_{A,A} = Σ_{α_k < A} λ_k a_k.
//
// Its spectrum is constant λ_k 2^{α_k(2/p-2)} on each diagonal block
// [2^{α_k}, 2^{α_k+1})² and zero elsewhere.

#include <cstdint>
#include <string>
#include <vector>

#include "walsh/hardy.hpp"
#include "walsh/strong.hpp"
#include "walsh/weight.hpp"

namespace walsh {

struct AlphaSequence {
  std::vector<int> alphas;
  double p = 0.5;
  WeightFn weight = WeightFn::linear();
  /// Σ_k Φ^{-p/4}(2^{α_k}) over the listed terms.
  double summability_witness = 0.0;
  /// Auto mode ran out of levels before reaching the requested count.
  bool clipped = false;
  std::vector<std::string> warnings;
};

/// Auto mode: α_k is the smallest α > α_{k-1}, α ≥ 2, with
/// Φ^{p/4}(2^α) ≥ 2^k. Stops at max_level with a warning; throws if not even
/// α_0 fits.
AlphaSequence select_alphas(const WeightFn& weight, double p, int count, int max_level);
/// Explicit mode: validates α_0 ≥ 2 and strict increase.
AlphaSequence select_alphas(const WeightFn& weight, double p, std::vector<int> alphas);

struct CounterexampleMartingale {
  AlphaSequence sequence;
  int resolution = 0;
  /// Indices into sequence.alphas with α_k + 1 ≤ resolution.
  std::vector<int> realized;
  std::vector<double> lambdas;  ///< λ_k for realized k
  std::vector<Atom2D> atoms;    ///< a_k for realized k
  Grid2D grid;                  ///< Σ λ_k a_k
  std::vector<std::string> warnings;

  double p() const { return sequence.p; }
  /// λ_k 2^{α_k(2/p-2)}
  double block_value(std::size_t k) const;
  AtomicMartingale decomposition() const;
};

/// 2^{α(2/p-2)} (D_{2^{α+1}} - D_{2^α})^{⊗2} at resolution r (α + 1 ≤ N).
Atom2D kernel_difference_atom(Resolution r, double p, int alpha);

CounterexampleMartingale build_counterexample(const AlphaSequence& seq, int resolution);

/// Closed-form f^(i, j).
double expected_coefficient(const AlphaSequence& seq, std::uint64_t i, std::uint64_t j);

/// |S_{n,n} f| on (G∖I_1)², for odd n strictly inside a realized block gap.
double expected_odd_magnitude(const CounterexampleMartingale& cm, std::uint64_t n);

/// Two routes to f^: the exact one transforms each integer kernel pattern
/// (D_{2^{α+1}} - D_{2^α})^{⊗2} in int64 and scales by λ_k 2^{α_k(2/p-2)};
/// the float one transforms the realized double grid, whose values already
/// carry rounding from the irrational λ_k.
struct CoefficientCheck {
  std::size_t exact_mismatches = 0;  ///< bitwise inequalities, integer-scaled route
  double float_max_abs_error = 0.0;
  double float_max_rel_error = 0.0;  ///< relative to the largest block value
};
CoefficientCheck check_coefficients(const CounterexampleMartingale& cm);

struct PointwiseCheck {
  std::uint64_t n = 0;
  double expected = 0.0;
  double max_rel_error = 0.0;
};
/// Compares |S_{n,n} f| on (G∖I_1)² with expected_odd_magnitude.
PointwiseCheck check_pointwise(const CounterexampleMartingale& cm, std::uint64_t n);
/// Every odd n in every realized gap (2^{α_k}, 2^{α_k+1}).
std::vector<PointwiseCheck> check_pointwise_all(const CounterexampleMartingale& cm);

struct Checkpoint {
  int k = 0;
  int alpha = 0;
  std::uint64_t n = 0;           ///< 2^{α_k+1} - 1
  double partial_sum = 0.0;
  double floor_13 = 0.0;         ///< (value / 2) μ((G∖I_1)²)^{1/p}
  double floor_full = 0.0;       ///< value μ((G∖I_1)²)^{1/p}
  double phi_34_prediction = 0.0;
  double min_weak_norm = 0.0;    ///< smallest measured weak norm over odd n in the gap
};

struct DivergenceReport {
  SweepReport sweep;
  std::vector<Checkpoint> checkpoints;
  bool monotone = false;
  bool floors_met = false;        ///< against floor_13
  bool full_floors_met = false;   ///< against floor_full

  bool ok() const { return monotone && floors_met; }
};

/// Checkpoints are the realized k with 2^{α_k+1} - 1 ≤ n_max; at least two
/// are required.
DivergenceReport divergence_experiment(const CounterexampleMartingale& cm, std::uint64_t n_max, unsigned threads = 1);

}  // namespace walsh
