#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "walsh/counterexample.hpp"
#include "walsh/strong.hpp"

namespace walsh {

inline constexpr const char* kVersion = "0.3.0";

/// Leading `# key=value` lines written above every CSV.
using CsvPreamble = std::vector<std::pair<std::string, std::string>>;

/// n,strong_norm,weak_norm,term,cumulative[,r11,r12,r21,r22]
/// Region columns carry per-n weighted terms.
void write_sweep_csv(std::ostream& os, const SweepReport& report, const RegionReport* regions = nullptr,
                     const CsvPreamble& preamble = {});

/// k,alpha,n_checkpoint,partial_sum,floor_13,phi_34_prediction
void write_checkpoint_csv(std::ostream& os, const DivergenceReport& report, const CsvPreamble& preamble = {});

/// {p, n_max, resolution, cumulative, hp_norm, ratio} plus functional/tail.
nlohmann::json sweep_summary(const SweepReport& report);

std::string format_double(double v);

}  // namespace walsh
