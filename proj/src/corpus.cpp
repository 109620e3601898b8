#include "walsh/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace walsh {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

CorpusEntry corpus_entry(const CorpusOptions& opts, std::size_t index) {
  if (opts.resolution.bits < 1) throw std::invalid_argument("atom corpus needs N >= 1");
  const int cap = std::min(opts.level_cap, opts.resolution.bits - 1);
  if (cap < 0) throw std::invalid_argument("level cap must be nonnegative");
  CorpusEntry e;
  e.index = index;
  e.seed = splitmix64(opts.seed) + index;
  e.support_level = static_cast<int>(splitmix64(e.seed ^ 0x5bd1e995ULL) % static_cast<std::uint64_t>(cap + 1));
  return e;
}

Atom2D corpus_atom(const CorpusOptions& opts, const CorpusEntry& entry) {
  return random_atom(opts.resolution, opts.p, entry.support_level, entry.seed,
                     RandomAtomOptions{opts.detail_depth});
}

CorpusSummary run_corpus(const CorpusOptions& opts, const std::function<void(const AtomSweep&)>& visit) {
  if (opts.atoms == 0) throw std::invalid_argument("atom corpus must be nonempty");
  const std::uint64_t n_max = opts.n_max ? opts.n_max : opts.resolution.cells();
  CorpusSummary summary;
  summary.atoms = opts.atoms;
  for (std::size_t i = 0; i < opts.atoms; ++i) {
    AtomSweep result;
    result.entry = corpus_entry(opts, i);
    const Atom2D atom = corpus_atom(opts, result.entry);
    const AtomCheck check = validate_atom(atom);
    result.entry.support_base = atom.support_base;
    result.entry.saturation = check.saturation;
    result.entry.valid = check.ok();
    if (!result.entry.valid) ++summary.invalid;

    result.sweep = theorem1_sum(atom.grid, opts.p, n_max, FunctionalOptions{opts.threads, true});
    result.regions = region_contributions(to_null_base(atom), opts.p, n_max, opts.threads);
    for (std::size_t r = 0; r < result.sweep.rows.size(); ++r) {
      const double term = result.sweep.rows[r].term;
      const auto& q = result.regions.rows[r].term;
      const double total = ((q[0] + q[1]) + q[2]) + q[3];
      const double err = term == 0.0 ? std::abs(total) : std::abs(total - term) / term;
      result.additivity_error = std::max(result.additivity_error, err);
    }

    const double cumulative = result.sweep.cumulative();
    if (!std::isfinite(cumulative)) summary.all_finite = false;
    summary.sup_cumulative = std::max(summary.sup_cumulative, cumulative);
    summary.sup_ratio = std::max(summary.sup_ratio, result.sweep.ratio().value_or(0.0));
    summary.sup_hp = std::max(summary.sup_hp, result.sweep.hp_norm.value_or(0.0));
    const auto totals = result.regions.totals();
    for (int r = 0; r < 4; ++r) {
      if (!std::isfinite(totals[r])) summary.all_finite = false;
      summary.sup_regions[r] = std::max(summary.sup_regions[r], totals[r]);
    }
    summary.max_additivity_error = std::max(summary.max_additivity_error, result.additivity_error);
    auto& level_sup = summary.sup_by_level[result.entry.support_level];
    level_sup = std::max(level_sup, cumulative);
    if (visit) visit(result);
  }
  return summary;
}

}  // namespace walsh
