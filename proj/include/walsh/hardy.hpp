#pragma once

// Dyadic martingale structure on G x G with respect to the diagonal
// filtration F_{n,n}: conditional expectations, the maximal function, the
// H_p quasinorm, p-atoms and atomic decompositions.

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "walsh/dyadic.hpp"

namespace walsh {

/// E_{n,n} f for n = 0..N in compact form: level n holds 2^n x 2^n values
/// indexed by the low n bits of (x, y).
std::vector<std::vector<double>> expectation_pyramid(const Grid2D& f);

Grid2D conditional_expectation(const Grid2D& f, int level);
Grid2D maximal_function(const Grid2D& f);
double hp_quasinorm(const Grid2D& f, double p);

using CubeBase = std::array<std::uint64_t, 2>;

struct Atom2D {
  Grid2D grid;
  double p = 1.0;
  int support_level = 0;
  CubeBase support_base{0, 0};

  /// μ(I x I)^{-1/p} = 2^{2 L / p}
  double sup_bound() const;
  /// max|a| / sup_bound
  double saturation() const;
  bool at_null_base() const;
};

struct AtomCheck {
  bool mean_zero = false;
  bool bounded = false;
  bool supported = false;
  double integral = 0.0;
  double saturation = 0.0;

  bool ok() const { return mean_zero && bounded && supported; }
};

/// Re-checks the three atom conditions. The mean condition allows only
/// summation rounding: |Σ a| ≤ 1e-12 Σ|a|.
AtomCheck validate_atom(const Atom2D& a);

/// Centres `raw` on the cube I_L(z') x I_L(z'') and, when it exceeds the
/// sup bound, scales it down by the smallest power of two that fits.
/// Throws if raw is nonzero off the cube or vanishes after centring.
Atom2D make_atom(const Grid2D& raw, double p, int support_level, CubeBase base);

struct RandomAtomOptions {
  /// Atom values vary on cells of level support_level + detail_depth
  /// (capped at N), so the same seed yields the same function at every
  /// resolution that can hold it.
  int detail_depth = 3;
};

/// Seeded atom with uniform cube placement and values drawn from a dyadic
/// lattice in [-1, 1], centred and scaled by a power of two so that
/// saturation lies in (1/2, 1]. Needs support_level < N.
Atom2D random_atom(Resolution r, double p, int support_level, std::uint64_t seed,
                   const RandomAtomOptions& opts = {});

/// a(x + z', y + z''); moves the support base by XOR.
Atom2D translate(const Atom2D& a, CubeBase shift);
Atom2D to_null_base(const Atom2D& a);

/// τ ↦ ∫ a(t + τ, t) dμ(t), after moving the atom to the null base.
Grid1D diagonal_average(const Atom2D& a);

struct AtomicMartingale {
  double p = 1.0;
  std::vector<std::pair<double, Atom2D>> terms;

  /// Σ μ_k a_k at the atoms' common resolution.
  Grid2D realize() const;
  /// f_{n,n} = Σ μ_k E_{n,n} a_k
  Grid2D level(int n) const;
};

/// (Σ|μ_k|^p)^{1/p} for the given decomposition.
double atomic_bound(const AtomicMartingale& m);

}  // namespace walsh
