#include "walsh/hardy.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "walsh/transform.hpp"

namespace walsh {

std::vector<std::vector<double>> expectation_pyramid(const Grid2D& f) {
  const int top = f.resolution().bits;
  std::vector<std::vector<double>> levels(top + 1);
  levels[top].assign(f.values().begin(), f.values().end());
  for (int n = top - 1; n >= 0; --n) {
    const std::size_t s = std::size_t{1} << n;
    const std::size_t fine = s << 1;
    const auto& up = levels[n + 1];
    auto& down = levels[n];
    down.assign(s * s, 0.0);
    for (std::size_t x = 0; x < s; ++x)
      for (std::size_t y = 0; y < s; ++y) {
        const double sum = (up[x * fine + y] + up[(x + s) * fine + y]) +
                           (up[x * fine + y + s] + up[(x + s) * fine + y + s]);
        down[x * s + y] = sum * 0.25;
      }
  }
  return levels;
}

Grid2D conditional_expectation(const Grid2D& f, int level) {
  if (level < 0 || level > f.resolution().bits) throw std::invalid_argument("expectation level exceeds resolution");
  const auto pyr = expectation_pyramid(f);
  const auto& c = pyr[level];
  const std::size_t mask = (std::size_t{1} << level) - 1;
  const std::size_t s = mask + 1;
  Grid2D out(f.resolution());
  for (std::size_t x = 0; x < out.side(); ++x)
    for (std::size_t y = 0; y < out.side(); ++y) out(x, y) = c[(x & mask) * s + (y & mask)];
  return out;
}

Grid2D maximal_function(const Grid2D& f) {
  const auto pyr = expectation_pyramid(f);
  Grid2D out(f.resolution());
  for (std::size_t x = 0; x < out.side(); ++x)
    for (std::size_t y = 0; y < out.side(); ++y) {
      double best = 0.0;
      for (std::size_t n = 0; n < pyr.size(); ++n) {
        const std::size_t mask = (std::size_t{1} << n) - 1;
        best = std::max(best, std::abs(pyr[n][(x & mask) * (mask + 1) + (y & mask)]));
      }
      out(x, y) = best;
    }
  return out;
}

double hp_quasinorm(const Grid2D& f, double p) { return lp_quasinorm(maximal_function(f), p); }

double Atom2D::sup_bound() const { return std::exp2(2.0 * support_level / p); }

double Atom2D::saturation() const {
  double mx = 0.0;
  for (double v : grid.values()) mx = std::max(mx, std::abs(v));
  return mx / sup_bound();
}

bool Atom2D::at_null_base() const {
  return in_null_interval(support_base[0], support_level) && in_null_interval(support_base[1], support_level);
}

namespace {

bool on_cube(std::size_t x, std::size_t y, int level, const CubeBase& base) {
  const std::size_t mask = (std::size_t{1} << level) - 1;
  return (x & mask) == (base[0] & mask) && (y & mask) == (base[1] & mask);
}

void check_cube(Resolution r, double p, int level, const CubeBase& base) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("atom exponent must lie in (0, 1]");
  if (level < 0 || level > r.bits) throw std::invalid_argument("atom support level exceeds resolution");
  if (base[0] >= r.cells() || base[1] >= r.cells()) throw std::invalid_argument("atom support base outside grid");
}

}  // namespace

AtomCheck validate_atom(const Atom2D& a) {
  AtomCheck check;
  const std::size_t side = a.grid.side();
  double sum = 0.0;
  double abs_sum = 0.0;
  double mx = 0.0;
  check.supported = true;
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y) {
      const double v = a.grid(x, y);
      sum += v;
      abs_sum += std::abs(v);
      mx = std::max(mx, std::abs(v));
      if (v != 0.0 && !on_cube(x, y, a.support_level, a.support_base)) check.supported = false;
    }
  const double m = a.grid.resolution().cell_measure();
  check.integral = sum * m * m;
  check.mean_zero = std::abs(sum) <= 1e-12 * abs_sum;
  check.saturation = mx / a.sup_bound();
  check.bounded = mx <= a.sup_bound();
  return check;
}

Atom2D make_atom(const Grid2D& raw, double p, int support_level, CubeBase base) {
  check_cube(raw.resolution(), p, support_level, base);
  const std::size_t side = raw.side();
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y) {
      const bool inside = on_cube(x, y, support_level, base);
      if (!inside && raw(x, y) != 0.0) throw std::invalid_argument("raw atom is nonzero outside its cube");
      if (inside) {
        sum += raw(x, y);
        ++count;
      }
    }
  // count is a power of two, so the mean is exact whenever the sum is.
  const double mean = sum / static_cast<double>(count);

  Atom2D atom{Grid2D(raw.resolution()), p, support_level, base};
  atom.support_base[0] &= (std::uint64_t{1} << support_level) - 1;
  atom.support_base[1] &= (std::uint64_t{1} << support_level) - 1;
  double mx = 0.0;
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y)
      if (on_cube(x, y, support_level, base)) {
        atom.grid(x, y) = raw(x, y) - mean;
        mx = std::max(mx, std::abs(atom.grid(x, y)));
      }
  if (mx == 0.0) throw std::invalid_argument("raw atom vanishes after mean removal");

  const double bound = atom.sup_bound();
  int shift = 0;
  while (std::ldexp(mx, -shift) > bound) ++shift;
  if (shift > 0)
    for (double& v : atom.grid.values()) v = std::ldexp(v, -shift);

  const AtomCheck check = validate_atom(atom);
  if (!check.ok()) throw std::logic_error("constructed atom failed validation");
  return atom;
}

Atom2D random_atom(Resolution r, double p, int support_level, std::uint64_t seed, const RandomAtomOptions& opts) {
  if (support_level < 0 || support_level >= r.bits)
    throw std::invalid_argument("random atom needs 0 <= support_level < N");
  if (opts.detail_depth < 1) throw std::invalid_argument("detail depth must be positive");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("atom exponent must lie in (0, 1]");

  std::mt19937_64 gen(seed);
  const std::uint64_t low_mask = (std::uint64_t{1} << support_level) - 1;
  const CubeBase base{gen() & low_mask, gen() & low_mask};

  const int level = std::min(r.bits, support_level + opts.detail_depth);
  const std::size_t side = std::size_t{1} << level;
  const std::size_t detail = std::size_t{1} << (level - support_level);
  constexpr int kLatticeBits = 12;

  std::vector<double> compact(side * side, 0.0);
  double mx = 0.0;
  do {
    double sum = 0.0;
    for (std::size_t hx = 0; hx < detail; ++hx)
      for (std::size_t hy = 0; hy < detail; ++hy) {
        // Top bits of the engine output: portable across standard libraries.
        const auto draw = static_cast<std::int64_t>(gen() >> (64 - (kLatticeBits + 1)));
        const double u = std::ldexp(static_cast<double>(draw - (std::int64_t{1} << kLatticeBits)), -kLatticeBits);
        const std::size_t cx = (hx << support_level) | base[0];
        const std::size_t cy = (hy << support_level) | base[1];
        compact[cx * side + cy] = u;
        sum += u;
      }
    const double mean = sum / static_cast<double>(detail * detail);
    mx = 0.0;
    for (std::size_t hx = 0; hx < detail; ++hx)
      for (std::size_t hy = 0; hy < detail; ++hy) {
        double& v = compact[((hx << support_level) | base[0]) * side + ((hy << support_level) | base[1])];
        v -= mean;
        mx = std::max(mx, std::abs(v));
      }
  } while (mx == 0.0);

  // Scale by 2^k with mx 2^k in (bound/2, bound].
  const double bound = std::exp2(2.0 * support_level / p);
  int k = static_cast<int>(std::floor(std::log2(bound / mx)));
  while (std::ldexp(mx, k) > bound) --k;
  while (std::ldexp(mx, k + 1) <= bound) ++k;
  for (double& v : compact) v = std::ldexp(v, k);

  const Grid2D raw = refine(Grid2D(Resolution(level), std::move(compact)), r);
  return make_atom(raw, p, support_level, base);
}

Atom2D translate(const Atom2D& a, CubeBase shift) {
  const std::size_t side = a.grid.side();
  if (shift[0] >= side || shift[1] >= side) throw std::invalid_argument("translation outside grid");
  Atom2D out{Grid2D(a.grid.resolution()), a.p, a.support_level, a.support_base};
  for (std::size_t x = 0; x < side; ++x)
    for (std::size_t y = 0; y < side; ++y) out.grid(x, y) = a.grid(x ^ shift[0], y ^ shift[1]);
  const std::uint64_t mask = (std::uint64_t{1} << a.support_level) - 1;
  out.support_base = {(a.support_base[0] ^ shift[0]) & mask, (a.support_base[1] ^ shift[1]) & mask};
  return out;
}

Atom2D to_null_base(const Atom2D& a) { return a.at_null_base() ? a : translate(a, a.support_base); }

Grid1D diagonal_average(const Atom2D& atom) {
  const Atom2D a = to_null_base(atom);
  const std::size_t side = a.grid.side();
  const double m = a.grid.resolution().cell_measure();
  Grid1D out(a.grid.resolution());
  for (std::size_t tau = 0; tau < side; ++tau) {
    double s = 0.0;
    for (std::size_t t = 0; t < side; ++t) s += a.grid(t ^ tau, t);
    out[tau] = s * m;
  }
  return out;
}

Grid2D AtomicMartingale::realize() const {
  if (terms.empty()) throw std::invalid_argument("empty atomic decomposition");
  const Resolution r = terms.front().second.grid.resolution();
  Grid2D out(r);
  for (const auto& [mu, atom] : terms) {
    if (atom.grid.resolution() != r) throw std::invalid_argument("atoms at mixed resolutions");
    auto dst = out.values();
    auto src = atom.grid.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += mu * src[i];
  }
  return out;
}

Grid2D AtomicMartingale::level(int n) const {
  if (terms.empty()) throw std::invalid_argument("empty atomic decomposition");
  const Resolution r = terms.front().second.grid.resolution();
  Grid2D out(r);
  for (const auto& [mu, atom] : terms) {
    if (atom.grid.resolution() != r) throw std::invalid_argument("atoms at mixed resolutions");
    const Grid2D e = conditional_expectation(atom.grid, n);
    auto dst = out.values();
    auto src = e.values();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += mu * src[i];
  }
  return out;
}

double atomic_bound(const AtomicMartingale& m) {
  if (m.terms.empty()) throw std::invalid_argument("empty atomic decomposition");
  if (!(m.p > 0.0)) throw std::invalid_argument("exponent p must be positive");
  double s = 0.0;
  for (const auto& term : m.terms) s += std::pow(std::abs(term.first), m.p);
  return std::pow(s, 1.0 / m.p);
}

}  // namespace walsh
