#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "walsh/dyadic.hpp"

namespace walsh {

struct IdentityResult {
  std::string name;
  int resolution = 0;
  std::uint64_t checked = 0;   ///< pointwise comparisons made
  std::uint64_t failures = 0;

  bool ok() const { return failures == 0; }
};

/// Exact integer checks at resolution N:
///   closed_vs_direct  D_n both ways, n ≤ 2^N
///   indicator         D_{2^k} = 2^k 1_{I_k}
///   product_form      D_n = w_n Σ_j n_j w_{2^j} D_{2^j}
///   shift             D_{n+2^a} = D_{2^a} + w_{2^a} D_n, n < 2^a
///   dyadic_sum        Σ_{i<N} D_{2^i} = 2^{s+1} - 1 on I_s∖I_{s+1}
///   orthonormality    forward(w_m) = e_m
/// `corrupt` flips one closed-mode kernel value as a negative control.
std::vector<IdentityResult> kernel_identities(Resolution r, bool corrupt = false);

}  // namespace walsh
