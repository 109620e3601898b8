#include "walsh/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "walsh/transform.hpp"

namespace walsh {
namespace {

void require_open_unit(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("exponent p must lie in (0, 1)");
}

/// 2^{α(2/p-2)}, derived from the sup bound so that max|a_k| hits it exactly.
double atom_scale(double p, int alpha) { return std::ldexp(std::exp2(2.0 * alpha / p), -2 * alpha); }

double lambda_of(const WeightFn& w, int alpha) { return std::pow(w(std::ldexp(1.0, alpha)), -0.25); }

double witness(const WeightFn& w, double p, const std::vector<int>& alphas) {
  double s = 0.0;
  for (int a : alphas) s += std::pow(w(std::ldexp(1.0, a)), -p / 4.0);
  return s;
}

bool in_block(std::uint64_t i, int alpha) {
  if (alpha >= 63) return false;
  const std::uint64_t lo = std::uint64_t{1} << alpha;
  return i >= lo && i < (lo << 1);
}

constexpr double kOddSetMeasure = 0.25;  // μ((G∖I_1)²)

}  // namespace

AlphaSequence select_alphas(const WeightFn& weight, double p, int count, int max_level) {
  require_open_unit(p);
  if (count < 1) throw std::invalid_argument("alpha count must be positive");
  if (max_level > 62) throw std::invalid_argument("max_level above 62");
  AlphaSequence seq;
  seq.p = p;
  seq.weight = weight;
  int alpha = 1;
  for (int k = 0; k < count; ++k) {
    int candidate = std::max(alpha + 1, 2);
    // Φ^{p/4}(2^α) ≥ 2^k, compared in the log domain.
    while (candidate <= max_level && (p / 4.0) * std::log2(weight(std::ldexp(1.0, candidate))) < k - 1e-12)
      ++candidate;
    if (candidate > max_level) {
      seq.clipped = true;
      seq.warnings.push_back("auto alpha selection stopped at max_level " + std::to_string(max_level) + " after " +
                             std::to_string(k) + " of " + std::to_string(count) + " terms");
      break;
    }
    seq.alphas.push_back(candidate);
    alpha = candidate;
  }
  if (seq.alphas.empty()) throw std::invalid_argument("no alpha fits below max_level");
  seq.summability_witness = witness(weight, p, seq.alphas);
  return seq;
}

AlphaSequence select_alphas(const WeightFn& weight, double p, std::vector<int> alphas) {
  require_open_unit(p);
  if (alphas.empty()) throw std::invalid_argument("empty alpha list");
  if (alphas.front() < 2) throw std::invalid_argument("alpha_0 must be at least 2");
  for (std::size_t k = 1; k < alphas.size(); ++k)
    if (alphas[k] <= alphas[k - 1]) throw std::invalid_argument("alphas must be strictly increasing");
  if (alphas.back() > 62) throw std::invalid_argument("alpha above 62");
  AlphaSequence seq;
  seq.p = p;
  seq.weight = weight;
  seq.alphas = std::move(alphas);
  seq.summability_witness = witness(weight, p, seq.alphas);
  return seq;
}

double CounterexampleMartingale::block_value(std::size_t k) const {
  const int alpha = sequence.alphas.at(k);
  return lambda_of(sequence.weight, alpha) * atom_scale(sequence.p, alpha);
}

AtomicMartingale CounterexampleMartingale::decomposition() const {
  AtomicMartingale m;
  m.p = sequence.p;
  for (std::size_t i = 0; i < atoms.size(); ++i) m.terms.emplace_back(lambdas[i], atoms[i]);
  return m;
}

Atom2D kernel_difference_atom(Resolution r, double p, int alpha) {
  if (alpha < 0 || alpha + 1 > r.bits) throw std::invalid_argument("atom level alpha + 1 exceeds resolution");
  const std::uint64_t lo = std::uint64_t{1} << alpha;
  const auto upper = dirichlet_kernel_int(lo << 1, r, KernelMode::closed);
  const auto lower = dirichlet_kernel_int(lo, r, KernelMode::closed);
  const double scale = atom_scale(p, alpha);
  const std::size_t side = r.cells();
  Grid2D raw(r);
  for (std::size_t x = 0; x < side; ++x) {
    const std::int64_t gx = upper[x] - lower[x];
    if (gx == 0) continue;
    for (std::size_t y = 0; y < side; ++y) raw(x, y) = scale * static_cast<double>(gx * (upper[y] - lower[y]));
  }
  return make_atom(raw, p, alpha, {0, 0});
}

CounterexampleMartingale build_counterexample(const AlphaSequence& seq, int resolution) {
  require_open_unit(seq.p);
  if (seq.alphas.empty()) throw std::invalid_argument("empty alpha sequence");
  if (resolution < seq.alphas.front() + 1)
    throw std::invalid_argument("resolution too small: need alpha_0 + 1 <= A");
  const Resolution r(resolution);

  CounterexampleMartingale cm;
  cm.sequence = seq;
  cm.resolution = resolution;
  cm.grid = Grid2D(r);
  cm.warnings = seq.warnings;
  for (std::size_t k = 0; k < seq.alphas.size(); ++k) {
    const int alpha = seq.alphas[k];
    if (alpha + 1 > resolution) {
      cm.warnings.push_back("alpha " + std::to_string(alpha) + " excluded: needs resolution " +
                            std::to_string(alpha + 1));
      continue;
    }
    cm.realized.push_back(static_cast<int>(k));
    cm.lambdas.push_back(lambda_of(seq.weight, alpha));
    cm.atoms.push_back(kernel_difference_atom(r, seq.p, alpha));
    auto dst = cm.grid.values();
    auto src = cm.atoms.back().grid.values();
    const double lambda = cm.lambdas.back();
    for (std::size_t i = 0; i < dst.size(); ++i)
      if (src[i] != 0.0) dst[i] += lambda * src[i];
  }
  return cm;
}

double expected_coefficient(const AlphaSequence& seq, std::uint64_t i, std::uint64_t j) {
  for (int alpha : seq.alphas)
    if (in_block(i, alpha) && in_block(j, alpha)) return lambda_of(seq.weight, alpha) * atom_scale(seq.p, alpha);
  return 0.0;
}

double expected_odd_magnitude(const CounterexampleMartingale& cm, std::uint64_t n) {
  if (!(n & 1)) throw std::invalid_argument("n must be odd");
  for (int k : cm.realized) {
    const int alpha = cm.sequence.alphas[k];
    const std::uint64_t lo = std::uint64_t{1} << alpha;
    if (n > lo && n < (lo << 1)) return cm.block_value(k);
  }
  throw std::invalid_argument("n lies in no realized block gap");
}

CoefficientCheck check_coefficients(const CounterexampleMartingale& cm) {
  const Resolution r(cm.resolution);
  const std::size_t side = r.cells();
  CoefficientCheck check;

  std::vector<double> exact(side * side, 0.0);
  const std::int64_t full = static_cast<std::int64_t>(side * side);
  for (int k : cm.realized) {
    const std::uint64_t lo = std::uint64_t{1} << cm.sequence.alphas[k];
    const auto upper = dirichlet_kernel_int(lo << 1, r, KernelMode::closed);
    const auto lower = dirichlet_kernel_int(lo, r, KernelMode::closed);
    std::vector<std::int64_t> pattern(side * side);
    for (std::size_t x = 0; x < side; ++x)
      for (std::size_t y = 0; y < side; ++y) pattern[x * side + y] = (upper[x] - lower[x]) * (upper[y] - lower[y]);
    butterfly_2d(std::span<std::int64_t>(pattern), side);
    const double value = cm.block_value(k);
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      if (pattern[i] % full != 0) throw std::logic_error("kernel pattern coefficient is not integral");
      const std::int64_t unit = pattern[i] / full;
      if (unit != 0) exact[i] += value * static_cast<double>(unit);
    }
  }

  const Spectrum2D s = forward(cm.grid);
  double top = 0.0;
  for (int k : cm.realized) top = std::max(top, cm.block_value(k));
  for (std::size_t i = 0; i < side; ++i)
    for (std::size_t j = 0; j < side; ++j) {
      const double expect = expected_coefficient(cm.sequence, i, j);
      if (exact[i * side + j] != expect) ++check.exact_mismatches;
      check.float_max_abs_error = std::max(check.float_max_abs_error, std::abs(s(i, j) - expect));
    }
  check.float_max_rel_error = top > 0.0 ? check.float_max_abs_error / top : check.float_max_abs_error;
  return check;
}

namespace {

PointwiseCheck pointwise_from(const CounterexampleMartingale& cm, const Spectrum2D& s, std::uint64_t n) {
  PointwiseCheck check;
  check.n = n;
  check.expected = expected_odd_magnitude(cm, n);
  const int level = ceil_log2(n);
  const auto v = partial_sum_compact(s, n, n, level);
  const std::size_t side = std::size_t{1} << level;
  for (std::size_t x = 1; x < side; x += 2)
    for (std::size_t y = 1; y < side; y += 2) {
      const double err = std::abs(std::abs(v[x * side + y]) - check.expected) / check.expected;
      check.max_rel_error = std::max(check.max_rel_error, err);
    }
  return check;
}

}  // namespace

PointwiseCheck check_pointwise(const CounterexampleMartingale& cm, std::uint64_t n) {
  return pointwise_from(cm, forward(cm.grid), n);
}

std::vector<PointwiseCheck> check_pointwise_all(const CounterexampleMartingale& cm) {
  const Spectrum2D s = forward(cm.grid);
  std::vector<PointwiseCheck> out;
  for (int k : cm.realized) {
    const std::uint64_t lo = std::uint64_t{1} << cm.sequence.alphas[k];
    for (std::uint64_t n = lo + 1; n < (lo << 1); n += 2) out.push_back(pointwise_from(cm, s, n));
  }
  return out;
}

DivergenceReport divergence_experiment(const CounterexampleMartingale& cm, std::uint64_t n_max, unsigned threads) {
  std::vector<int> usable;
  for (int k : cm.realized)
    if ((std::uint64_t{2} << cm.sequence.alphas[k]) - 1 <= n_max) usable.push_back(k);
  if (usable.size() < 2) throw std::invalid_argument("divergence experiment needs at least two checkpoints");

  const double p = cm.p();
  DivergenceReport report;
  report.sweep = weighted_weak_sum(cm.grid, p, cm.sequence.weight, n_max, Parity::odd, FunctionalOptions{threads, true});

  // Odd-only rows: n = 2r + 1 sits at index r.
  auto row_of = [&](std::uint64_t n) -> const ReportRow& { return report.sweep.rows.at((n - 1) / 2); };

  const double measure_factor = std::pow(kOddSetMeasure, 1.0 / p);
  report.monotone = true;
  report.floors_met = true;
  report.full_floors_met = true;
  for (std::size_t idx = 0; idx < usable.size(); ++idx) {
    const int k = usable[idx];
    const int alpha = cm.sequence.alphas[k];
    const std::uint64_t lo = std::uint64_t{1} << alpha;
    Checkpoint cp;
    cp.k = k;
    cp.alpha = alpha;
    cp.n = (lo << 1) - 1;
    cp.partial_sum = row_of(cp.n).cumulative;
    const double value = cm.block_value(k);
    cp.floor_13 = 0.5 * value * measure_factor;
    cp.floor_full = value * measure_factor;
    cp.phi_34_prediction = std::pow(cm.sequence.weight(static_cast<double>(lo)), 0.75);
    cp.min_weak_norm = std::numeric_limits<double>::infinity();
    for (std::uint64_t n = lo + 1; n < (lo << 1); n += 2) cp.min_weak_norm = std::min(cp.min_weak_norm, row_of(n).weak_norm);
    if (cp.min_weak_norm < cp.floor_13) report.floors_met = false;
    if (cp.min_weak_norm < cp.floor_full) report.full_floors_met = false;
    if (idx > 0 && !(cp.partial_sum > report.checkpoints.back().partial_sum)) report.monotone = false;
    report.checkpoints.push_back(cp);
  }
  return report;
}

}  // namespace walsh
