#include "walsh/identities.hpp"

#include <bit>

#include "walsh/transform.hpp"

namespace walsh {

std::vector<IdentityResult> kernel_identities(Resolution r, bool corrupt) {
  const int bits = r.bits;
  const std::uint64_t full = r.cells();
  const std::size_t cells = r.cells();

  // Direct kernels by running summation: direct[n] = Σ_{k<n} w_k.
  // |D_n| ≤ 2^N ≤ 2^16.
  std::vector<std::vector<std::int32_t>> direct(full + 1, std::vector<std::int32_t>(cells, 0));
  for (std::uint64_t n = 1; n <= full; ++n)
    for (std::size_t c = 0; c < cells; ++c) direct[n][c] = direct[n - 1][c] + walsh_sign(n - 1, c);

  std::vector<IdentityResult> out;

  IdentityResult modes{"closed_vs_direct", bits};
  for (std::uint64_t n = 0; n <= full; ++n) {
    auto closed = dirichlet_kernel_int(n, r, KernelMode::closed);
    if (corrupt && n == full) closed[cells - 1] += 1;
    for (std::size_t c = 0; c < cells; ++c, ++modes.checked)
      if (closed[c] != direct[n][c]) ++modes.failures;
  }
  out.push_back(modes);

  IdentityResult indicator{"indicator", bits};
  for (int k = 0; k <= bits; ++k) {
    const std::int64_t pow2 = std::int64_t{1} << k;
    for (std::size_t c = 0; c < cells; ++c, ++indicator.checked) {
      const std::int64_t want = in_null_interval(c, k) ? pow2 : 0;
      if (direct[std::uint64_t{1} << k][c] != want) ++indicator.failures;
    }
  }
  out.push_back(indicator);

  IdentityResult product{"product_form", bits};
  for (std::uint64_t n = 0; n <= full; ++n) {
    for (std::size_t c = 0; c < cells; ++c, ++product.checked) {
      std::int64_t acc = 0;
      for (int j = 0; j <= bits; ++j) {
        if (!((n >> j) & 1)) continue;
        const std::uint64_t pj = std::uint64_t{1} << j;
        // w_{2^N} is the constant 1 on G_N.
        const int wj = pj < full ? walsh_sign(pj, c) : 1;
        acc += wj * direct[pj][c];
      }
      const int wn = n < full ? walsh_sign(n, c) : 1;
      if (wn * acc != direct[n][c]) ++product.failures;
    }
  }
  out.push_back(product);

  IdentityResult shift{"shift", bits};
  for (int a = 0; a < bits; ++a) {
    const std::uint64_t pa = std::uint64_t{1} << a;
    for (std::uint64_t n = 0; n < pa; ++n)
      for (std::size_t c = 0; c < cells; ++c, ++shift.checked)
        if (direct[n + pa][c] != direct[pa][c] + walsh_sign(pa, c) * direct[n][c]) ++shift.failures;
  }
  out.push_back(shift);

  IdentityResult dyadic{"dyadic_sum", bits};
  for (std::size_t c = 1; c < cells; ++c, ++dyadic.checked) {
    const int s = std::countr_zero(c);
    std::int64_t sum = 0;
    for (int i = 0; i < bits; ++i) sum += direct[std::uint64_t{1} << i][c];
    if (sum != (std::int64_t{2} << s) - 1) ++dyadic.failures;
  }
  out.push_back(dyadic);

  IdentityResult ortho{"orthonormality", bits};
  for (std::uint64_t m = 0; m < full; ++m) {
    std::vector<std::int64_t> w(cells);
    for (std::size_t c = 0; c < cells; ++c) w[c] = walsh_sign(m, c);
    butterfly(std::span<std::int64_t>(w));
    for (std::size_t i = 0; i < cells; ++i, ++ortho.checked)
      if (w[i] != (i == m ? static_cast<std::int64_t>(full) : 0)) ++ortho.failures;
  }
  out.push_back(ortho);

  return out;
}

}  // namespace walsh
