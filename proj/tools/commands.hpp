#pragma once

// walshctl: batch driver for kernel identity checks, atom sweeps,
// counterexample runs and ad-hoc quasinorms of grid files.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

namespace walsh::cli {

enum Exit : int { kPass = 0, kCheckFailed = 1, kUsage = 2 };

struct RunConfig {
  std::string command;
  int resolution = 8;
  std::vector<double> p{0.5};
  std::uint64_t n_max = 0;  ///< 0 means 2^N
  std::uint64_t seed = 1;
  std::size_t atoms = 100;
  std::string phi = "linear";
  std::vector<int> alphas{2, 5};
  int auto_alphas = 0;  ///< > 0 switches select_alphas to auto mode
  int max_level = 0;    ///< auto-mode ceiling; 0 means N - 1
  std::string parity = "odd";
  std::filesystem::path out = "walsh_out";
  unsigned threads = 1;
  int level_cap = 5;
  int detail_depth = 3;
  std::filesystem::path file;
  bool save_grid = false;
  bool inject_fault = false;

  std::uint64_t effective_n_max() const { return n_max ? n_max : std::uint64_t{1} << resolution; }
};

/// Resolved config as written into every output. `out` and `threads` are
/// left out: neither changes a result byte.
nlohmann::json config_json(const RunConfig& cfg);

/// Throws std::invalid_argument on the first inconsistent field.
void validate(const RunConfig& cfg);

int run_kernels(const RunConfig& cfg, std::ostream& log);
int run_atom_sweep(const RunConfig& cfg, std::ostream& log);
int run_counterexample(const RunConfig& cfg, std::ostream& log);
int run_norms(const RunConfig& cfg, std::ostream& log);

/// Parses argv (flags and --config file), validates, dispatches.
int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& log, std::ostream& err);

}  // namespace walsh::cli
