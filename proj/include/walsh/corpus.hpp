#pragma once

// Seeded p-atom corpora and the per-atom strong-convergence sweep.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

#include "walsh/hardy.hpp"
#include "walsh/strong.hpp"

namespace walsh {

struct CorpusOptions {
  Resolution resolution{8};
  double p = 0.5;
  std::size_t atoms = 100;
  std::uint64_t seed = 1;
  /// Support levels are drawn from [0, min(level_cap, N - 1)].
  int level_cap = 5;
  int detail_depth = 3;
  /// 0 means 2^N.
  std::uint64_t n_max = 0;
  unsigned threads = 1;
};

struct CorpusEntry {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  int support_level = 0;
  CubeBase support_base{};
  double saturation = 0.0;
  bool valid = false;
};

/// Deterministic per-index seed and support level.
CorpusEntry corpus_entry(const CorpusOptions& opts, std::size_t index);
Atom2D corpus_atom(const CorpusOptions& opts, const CorpusEntry& entry);

struct AtomSweep {
  CorpusEntry entry;
  SweepReport sweep;
  RegionReport regions;
  /// max_n |Σ regions - term| / term
  double additivity_error = 0.0;
};

struct CorpusSummary {
  std::size_t atoms = 0;
  std::size_t invalid = 0;
  double sup_cumulative = 0.0;
  double sup_ratio = 0.0;
  double sup_hp = 0.0;
  RegionQuad sup_regions{};
  double max_additivity_error = 0.0;
  std::map<int, double> sup_by_level;
  bool all_finite = true;
};

/// Sweeps every atom of the corpus; `visit` sees each result in index order.
CorpusSummary run_corpus(const CorpusOptions& opts, const std::function<void(const AtomSweep&)>& visit = {});

}  // namespace walsh
