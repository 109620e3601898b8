#include "walsh/strong.hpp"

#include <cmath>
#include <stdexcept>

#include "walsh/parallel.hpp"

namespace walsh {
namespace {

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("exponent p must lie in (0, 1)");
}

/// quad_sweep over [lo, hi] where hi may exceed 2^N; indices past 2^N
/// reuse the row of f itself.
std::vector<SweepRow> extended_sweep(const Spectrum2D& s, double p, std::uint64_t lo, std::uint64_t hi,
                                     Parity parity, const FunctionalOptions& opts) {
  const std::uint64_t full = s.side();
  const SweepOptions sweep{parity, opts.threads, opts.weak};
  std::vector<SweepRow> rows;
  if (lo <= full) {
    const std::uint64_t top = std::min(hi, full);
    const bool single_even = parity == Parity::odd && lo == top && !(lo & 1);
    if (!single_even) rows = quad_sweep(s, p, lo, top, sweep);
  }
  if (hi > full) {
    const SweepRow whole = quad_sweep(s, p, full, full, SweepOptions{Parity::all, 1, opts.weak}).front();
    for (std::uint64_t n = std::max(lo, full + 1); n <= hi; ++n) {
      if (parity == Parity::odd && !(n & 1)) continue;
      rows.push_back(whole);
      rows.back().n = n;
    }
  }
  return rows;
}

std::vector<SweepRow> extended_sweep_1d(const Grid1D& g, double p, std::uint64_t hi, const FunctionalOptions& opts) {
  const std::uint64_t full = g.size();
  const SweepOptions sweep{Parity::all, opts.threads, opts.weak};
  auto rows = partial_sweep_1d(g, p, 1, std::min(hi, full), sweep);
  if (hi > full) {
    const SweepRow whole = rows.back();
    for (std::uint64_t k = full + 1; k <= hi; ++k) {
      rows.push_back(whole);
      rows.back().n = k;
    }
  }
  return rows;
}

template <class TermFn>
void fill_rows(SweepReport& report, const std::vector<SweepRow>& sweep, TermFn term_of) {
  report.rows.reserve(sweep.size());
  double cumulative = 0.0;
  for (const SweepRow& s : sweep) {
    ReportRow row;
    row.n = s.n;
    row.strong_norm = s.strong_norm;
    row.weak_norm = s.weak_norm;
    row.term = term_of(s);
    cumulative += row.term;
    row.cumulative = cumulative;
    report.rows.push_back(row);
  }
}

}  // namespace

std::optional<double> SweepReport::ratio() const {
  if (!hp_norm || *hp_norm == 0.0) return std::nullopt;
  return cumulative() / std::pow(*hp_norm, p);
}

double power_tail(double s, std::uint64_t first) {
  if (!(s > 1.0)) throw std::invalid_argument("power tail needs exponent > 1");
  if (first < 1) throw std::invalid_argument("power tail starts at n >= 1");
  constexpr std::uint64_t kDirect = 16;
  double direct = 0.0;
  for (std::uint64_t n = first; n < first + kDirect; ++n) direct += std::pow(static_cast<double>(n), -s);
  // Euler–Maclaurin remainder from b with Bernoulli terms B2..B8.
  const double b = static_cast<double>(first + kDirect);
  double em = std::pow(b, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(b, -s);
  constexpr double kCoef[] = {1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0, -1.0 / 1209600.0};
  double rising = s;
  for (int k = 1; k <= 4; ++k) {
    em += kCoef[k - 1] * rising * std::pow(b, -s - 2.0 * k + 1.0);
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
  }
  return direct + em;
}

SweepReport theorem1_sum(const Grid2D& f, double p, std::uint64_t n_max, const FunctionalOptions& opts) {
  require_open_unit(p);
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  const Spectrum2D s = forward(f);
  SweepReport report{"theorem1", p, n_max, f.resolution(), {}, std::nullopt, std::nullopt};
  const double weight_exp = 3.0 - 2.0 * p;
  const auto sweep = extended_sweep(s, p, 1, n_max, Parity::all, opts);
  fill_rows(report, sweep, [&](const SweepRow& r) {
    return r.lp_integral / std::pow(static_cast<double>(r.n), weight_exp);
  });
  report.hp_norm = hp_quasinorm(f, p);
  const int extent = spectral_extent(s);
  if (n_max >= (std::uint64_t{1} << extent)) {
    const double m = f.resolution().cell_measure();
    report.tail = lp_integral(f.values(), m * m, p, 2) * power_tail(weight_exp, n_max + 1);
  }
  return report;
}

SweepReport simon_1d_sum(const Grid1D& g, double p, std::uint64_t k_max, const FunctionalOptions& opts) {
  require_open_unit(p);
  if (k_max < 1) throw std::invalid_argument("k_max must be positive");
  SweepReport report{"simon1d", p, k_max, g.resolution(), {}, std::nullopt, std::nullopt};
  const double weight_exp = 2.0 - p;
  const auto sweep = extended_sweep_1d(g, p, k_max, opts);
  fill_rows(report, sweep, [&](const SweepRow& r) {
    return r.lp_integral / std::pow(static_cast<double>(r.n), weight_exp);
  });
  if (k_max >= (std::uint64_t{1} << spectral_extent(forward(g))))
    report.tail = lp_integral(g.values(), g.resolution().cell_measure(), p) * power_tail(weight_exp, k_max + 1);
  return report;
}

SweepReport theoremG_sum(const Grid2D& f, std::uint64_t n_max, const FunctionalOptions& opts) {
  SweepReport report{"theoremG", 1.0, n_max, f.resolution(), {}, std::nullopt, std::nullopt};
  if (n_max < 2) return report;
  const auto sweep = extended_sweep(forward(f), 1.0, 2, n_max, Parity::all, opts);
  fill_rows(report, sweep, [](const SweepRow& r) {
    const double n = static_cast<double>(r.n);
    const double ln = std::log(n);
    return r.strong_norm / (n * ln * ln);
  });
  report.hp_norm = hp_quasinorm(f, 1.0);
  return report;
}

SweepReport weighted_weak_sum(const Grid2D& f, double p, const WeightFn& weight, std::uint64_t n_max, Parity parity,
                              const FunctionalOptions& opts) {
  require_open_unit(p);
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");
  weight.check_on(n_max);
  SweepReport report{"weighted_weak", p, n_max, f.resolution(), {}, std::nullopt, std::nullopt};
  FunctionalOptions o = opts;
  o.weak = true;
  const double weight_exp = 3.0 - 2.0 * p;
  const auto sweep = extended_sweep(forward(f), p, 1, n_max, parity, o);
  fill_rows(report, sweep, [&](const SweepRow& r) {
    const double n = static_cast<double>(r.n);
    return std::pow(r.weak_norm, p) * weight(n) / std::pow(n, weight_exp);
  });
  return report;
}

RegionReport region_contributions(const Atom2D& a, double p, std::uint64_t n_max, unsigned threads) {
  require_open_unit(p);
  if (!a.at_null_base()) throw std::invalid_argument("region split needs an atom at the null base; translate first");
  if (n_max < 1) throw std::invalid_argument("n_max must be positive");

  const Spectrum2D s = forward(a.grid);
  const int extent = spectral_extent(s);
  const int support = a.support_level;
  const std::uint64_t full = s.side();
  const std::uint64_t computed = std::min(n_max, full);
  const double weight_exp = 3.0 - 2.0 * p;

  // Fraction of a level-`level` x-cell that lies in I_support.
  auto inside_fraction = [support](std::uint64_t cell, int level) {
    if (level >= support) return in_null_interval(cell, support) ? 1.0 : 0.0;
    return cell == 0 ? std::ldexp(1.0, level - support) : 0.0;
  };

  auto split = [&](std::uint64_t n) {
    const int level = std::min(ceil_log2(n), extent);
    const std::uint64_t idx = std::min<std::uint64_t>(n, std::uint64_t{1} << level);
    const auto v = partial_sum_compact(s, idx, idx, level);
    const std::size_t side = std::size_t{1} << level;
    const double m = std::ldexp(1.0, -2 * level);
    std::vector<double> fx(side);
    for (std::size_t c = 0; c < side; ++c) fx[c] = inside_fraction(c, level);
    RegionQuad q{};
    for (std::size_t x = 0; x < side; ++x)
      for (std::size_t y = 0; y < side; ++y) {
        const double val = v[x * side + y];
        if (val == 0.0) continue;
        const double c = std::pow(std::abs(val), p) * m;
        const double ix = fx[x];
        const double iy = fx[y];
        q[0] += c * (1.0 - ix) * (1.0 - iy);
        q[1] += c * (1.0 - ix) * iy;
        q[2] += c * ix * (1.0 - iy);
        q[3] += c * ix * iy;
      }
    return q;
  };

  std::vector<RegionQuad> raw(computed);
  parallel_for(computed, threads, [&](std::size_t k) { raw[k] = split(k + 1); });

  RegionReport report{p, n_max, support, {}};
  report.rows.reserve(n_max);
  RegionQuad cumulative{};
  auto push = [&](std::uint64_t n, const RegionQuad& q) {
    RegionRow row;
    row.n = n;
    const double w = std::pow(static_cast<double>(n), weight_exp);
    for (int r = 0; r < 4; ++r) {
      row.term[r] = q[r] / w;
      cumulative[r] += row.term[r];
    }
    row.cumulative = cumulative;
    report.rows.push_back(row);
  };
  for (std::uint64_t n = 1; n <= computed; ++n) push(n, raw[n - 1]);
  for (std::uint64_t n = full + 1; n <= n_max; ++n) push(n, raw[full - 1]);
  return report;
}

}  // namespace walsh
