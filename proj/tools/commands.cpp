#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "walsh/corpus.hpp"
#include "walsh/counterexample.hpp"
#include "walsh/grid_io.hpp"
#include "walsh/hardy.hpp"
#include "walsh/identities.hpp"
#include "walsh/report.hpp"

namespace walsh::cli {
namespace {

using nlohmann::json;

constexpr int kMaxKernelResolution = 12;
constexpr int kMaxAlphaLevel = 62;
constexpr double kPointwiseTolerance = 1e-9;

const std::vector<std::string> kCommands{"kernels", "atom-sweep", "counterexample", "norms"};

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

std::string p_label(double p) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", p);
  return buf;
}

json header(const RunConfig& cfg) {
  return json{{"version", kVersion}, {"config", config_json(cfg)}};
}

CsvPreamble preamble(const RunConfig& cfg) {
  CsvPreamble out{{"version", kVersion}};
  const json config = config_json(cfg);
  for (const auto& [key, value] : config.items())
    out.emplace_back(key, value.is_string() ? value.get<std::string>() : value.dump());
  return out;
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  return os;
}

AlphaSequence make_sequence(const RunConfig& cfg) {
  const WeightFn weight = WeightFn::parse(cfg.phi);
  if (cfg.auto_alphas > 0) {
    const int ceiling = cfg.max_level > 0 ? cfg.max_level : cfg.resolution - 1;
    return select_alphas(weight, cfg.p.front(), cfg.auto_alphas, ceiling);
  }
  return select_alphas(weight, cfg.p.front(), cfg.alphas);
}

json checks_json(const std::vector<IdentityResult>& results) {
  json arr = json::array();
  for (const auto& r : results)
    arr.push_back({{"name", r.name}, {"checked", r.checked}, {"failures", r.failures}, {"pass", r.ok()}});
  return arr;
}

}  // namespace

json config_json(const RunConfig& cfg) {
  json j;
  j["command"] = cfg.command;
  j["resolution"] = cfg.resolution;
  j["p"] = cfg.p;
  j["n_max"] = cfg.effective_n_max();
  j["seed"] = cfg.seed;
  j["atoms"] = cfg.atoms;
  j["phi"] = cfg.phi;
  if (cfg.auto_alphas > 0) {
    j["auto_alphas"] = cfg.auto_alphas;
    j["max_level"] = cfg.max_level > 0 ? cfg.max_level : cfg.resolution - 1;
  } else {
    j["alphas"] = cfg.alphas;
  }
  j["parity"] = cfg.parity;
  j["level_cap"] = cfg.level_cap;
  j["detail_depth"] = cfg.detail_depth;
  if (!cfg.file.empty()) j["file"] = cfg.file.string();
  if (cfg.inject_fault) j["inject_fault"] = true;
  return j;
}

void validate(const RunConfig& cfg) {
  require(std::find(kCommands.begin(), kCommands.end(), cfg.command) != kCommands.end(),
          "unknown command '" + cfg.command + "'");
  require(cfg.resolution >= 0 && cfg.resolution <= kMaxResolution,
          "resolution must lie in [0, " + std::to_string(kMaxResolution) + "]");
  require(cfg.threads >= 1, "threads must be at least 1");
  require(cfg.parity == "all" || cfg.parity == "odd", "parity must be 'all' or 'odd'");
  require(!cfg.p.empty(), "p needs at least one value");
  for (double p : cfg.p) require(std::isfinite(p) && p > 0.0, "p must be positive, got " + p_label(p));
  require(cfg.level_cap >= 0, "level-cap must be nonnegative");
  require(cfg.detail_depth >= 1, "detail-depth must be at least 1");
  WeightFn::parse(cfg.phi);

  if (cfg.command == "kernels") {
    require(cfg.resolution <= kMaxKernelResolution,
            "kernels runs at resolution <= " + std::to_string(kMaxKernelResolution));
  } else if (cfg.command == "atom-sweep") {
    require(cfg.atoms >= 1, "atoms must be at least 1");
    require(cfg.resolution >= 1, "atom-sweep needs resolution >= 1");
    for (double p : cfg.p) require(p < 1.0, "atom-sweep needs p in (0, 1)");
  } else if (cfg.command == "counterexample") {
    require(cfg.p.size() == 1, "counterexample takes a single p");
    require(cfg.p.front() < 1.0, "counterexample needs p in (0, 1)");
    require(cfg.max_level >= 0 && cfg.max_level <= kMaxAlphaLevel, "max-level must lie in [0, 62]");
    const AlphaSequence seq = make_sequence(cfg);
    require(seq.alphas.front() + 1 <= cfg.resolution,
            "resolution must be at least alpha_0 + 1 = " + std::to_string(seq.alphas.front() + 1));
  } else if (cfg.command == "norms") {
    require(!cfg.file.empty(), "norms needs --file");
    require(std::filesystem::exists(cfg.file), "no such file: " + cfg.file.string());
  }
}

int run_kernels(const RunConfig& cfg, std::ostream& log) {
  const auto results = kernel_identities(Resolution(cfg.resolution), cfg.inject_fault);
  bool pass = true;
  for (const auto& r : results) {
    pass = pass && r.ok();
    log << (r.ok() ? "PASS " : "FAIL ") << r.name << " N=" << r.resolution << " checked=" << r.checked
        << " failures=" << r.failures << '\n';
  }
  std::filesystem::create_directories(cfg.out);
  json j = header(cfg);
  j["resolution"] = cfg.resolution;
  j["checks"] = checks_json(results);
  j["pass"] = pass;
  write_json(cfg.out / "kernels.json", j);
  return pass ? kPass : kCheckFailed;
}

int run_atom_sweep(const RunConfig& cfg, std::ostream& log) {
  bool pass = true;
  for (double p : cfg.p) {
    CorpusOptions opts;
    opts.resolution = Resolution(cfg.resolution);
    opts.p = p;
    opts.atoms = cfg.atoms;
    opts.seed = cfg.seed;
    opts.level_cap = cfg.level_cap;
    opts.detail_depth = cfg.detail_depth;
    opts.n_max = cfg.n_max;
    opts.threads = cfg.threads;

    const auto dir = cfg.out / ("p" + p_label(p));
    std::filesystem::create_directories(dir / "atoms");
    auto manifest = open_out(dir / "manifest.jsonl");

    CsvPreamble base = preamble(cfg);
    base.emplace_back("sweep_p", p_label(p));

    auto visit = [&](const AtomSweep& s) {
      char name[32];
      std::snprintf(name, sizeof name, "atom_%04zu.csv", s.entry.index);
      const std::string csv_name = name;
      CsvPreamble pre = base;
      pre.emplace_back("atom_index", std::to_string(s.entry.index));
      pre.emplace_back("atom_seed", std::to_string(s.entry.seed));
      pre.emplace_back("support_level", std::to_string(s.entry.support_level));
      pre.emplace_back("support_base",
                       std::to_string(s.entry.support_base[0]) + "," + std::to_string(s.entry.support_base[1]));
      auto csv = open_out(dir / "atoms" / name);
      write_sweep_csv(csv, s.sweep, &s.regions, pre);

      const RegionQuad totals = s.regions.totals();
      json grid = nullptr;
      if (cfg.save_grid) {
        std::snprintf(name, sizeof name, "atom_%04zu.grid", s.entry.index);
        io::save(dir / "atoms" / name, io::from(corpus_atom(opts, s.entry).grid), io::Encoding::binary);
        grid = std::string("atoms/") + name;
      }
      json rec = header(cfg);
      rec.update({{"index", s.entry.index},
               {"p", p},
               {"seed", s.entry.seed},
               {"support_level", s.entry.support_level},
               {"support_base", s.entry.support_base},
               {"saturation", s.entry.saturation},
               {"valid", s.entry.valid},
               {"summary", sweep_summary(s.sweep)},
               {"regions", {{"r11", totals[0]}, {"r12", totals[1]}, {"r21", totals[2]}, {"r22", totals[3]}}},
               {"additivity_error", s.additivity_error},
               {"csv", std::string("atoms/") + csv_name},
               {"grid", grid}});
      manifest << rec.dump() << '\n';
    };
    const CorpusSummary sum = run_corpus(opts, visit);

    json j = header(cfg);
    j["p"] = p;
    j["atoms"] = sum.atoms;
    j["invalid"] = sum.invalid;
    j["all_finite"] = sum.all_finite;
    j["sup_cumulative"] = sum.sup_cumulative;
    j["sup_ratio"] = sum.sup_ratio;
    j["sup_hp_norm"] = sum.sup_hp;
    j["sup_regions"] = {{"r11", sum.sup_regions[0]},
                        {"r12", sum.sup_regions[1]},
                        {"r21", sum.sup_regions[2]},
                        {"r22", sum.sup_regions[3]}};
    j["max_additivity_error"] = sum.max_additivity_error;
    json by_level = json::object();
    for (const auto& [level, sup] : sum.sup_by_level) by_level[std::to_string(level)] = sup;
    j["sup_by_level"] = by_level;
    const bool ok = sum.invalid == 0 && sum.all_finite;
    j["pass"] = ok;
    write_json(dir / "summary.json", j);

    log << (ok ? "PASS " : "FAIL ") << "atom-sweep p=" << p_label(p) << " atoms=" << sum.atoms
        << " invalid=" << sum.invalid << " sup_cumulative=" << format_double(sum.sup_cumulative)
        << " sup_ratio=" << format_double(sum.sup_ratio) << '\n';
    pass = pass && ok;
  }
  return pass ? kPass : kCheckFailed;
}

int run_counterexample(const RunConfig& cfg, std::ostream& log) {
  const AlphaSequence seq = make_sequence(cfg);
  const CounterexampleMartingale cm = build_counterexample(seq, cfg.resolution);
  const std::uint64_t n_max = cfg.effective_n_max();

  std::vector<std::string> warnings = cm.warnings;
  for (const auto& w : warnings) log << "warning: " << w << '\n';

  const CoefficientCheck coeff = check_coefficients(cm);
  const auto pointwise = check_pointwise_all(cm);
  double pointwise_max = 0.0;
  for (const auto& pc : pointwise) pointwise_max = std::max(pointwise_max, pc.max_rel_error);

  std::size_t checkpoints = 0;
  for (int k : cm.realized)
    if ((std::uint64_t{2} << seq.alphas[k]) - 1 <= n_max) ++checkpoints;
  // The divergence checks need two checkpoints; with fewer only exactness is judged.
  DivergenceReport div;
  const bool diverge = checkpoints >= 2;
  if (diverge) {
    div = divergence_experiment(cm, n_max, cfg.threads);
  } else {
    warnings.push_back("divergence experiment skipped: " + std::to_string(checkpoints) +
                       " checkpoint(s) within n-max, two needed");
    log << "warning: " << warnings.back() << '\n';
    div.monotone = div.floors_met = div.full_floors_met = true;
  }

  std::filesystem::create_directories(cfg.out);
  const CsvPreamble pre = preamble(cfg);
  {
    auto os = open_out(cfg.out / "checkpoints.csv");
    write_checkpoint_csv(os, div, pre);
  }
  {
    auto os = open_out(cfg.out / "weighted_sum.csv");
    if (diverge && cfg.parity == "odd") {
      write_sweep_csv(os, div.sweep, nullptr, pre);
    } else {
      const Parity parity = cfg.parity == "odd" ? Parity::odd : Parity::all;
      const SweepReport sweep = weighted_weak_sum(cm.grid, cm.p(), seq.weight, n_max, parity,
                                                  FunctionalOptions{cfg.threads, true});
      write_sweep_csv(os, sweep, nullptr, pre);
    }
  }
  if (cfg.save_grid) io::save(cfg.out / "martingale.grid", io::from(cm.grid), io::Encoding::binary);

  const bool exact_ok = coeff.exact_mismatches == 0;
  const bool pointwise_ok = pointwise_max <= kPointwiseTolerance;
  const bool pass = exact_ok && pointwise_ok && div.monotone && div.floors_met;

  json j = header(cfg);
  j["alphas"] = seq.alphas;
  std::vector<int> realized;
  for (int k : cm.realized) realized.push_back(seq.alphas[k]);
  j["realized_alphas"] = realized;
  j["lambdas"] = cm.lambdas;
  j["summability_witness"] = seq.summability_witness;
  j["clipped"] = seq.clipped;
  j["warnings"] = warnings;
  j["coefficients"] = {{"exact_mismatches", coeff.exact_mismatches},
                       {"float_max_abs_error", coeff.float_max_abs_error},
                       {"float_max_rel_error", coeff.float_max_rel_error},
                       {"pass", exact_ok}};
  j["pointwise"] = {{"checked_n", pointwise.size()},
                    {"max_rel_error", pointwise_max},
                    {"tolerance", kPointwiseTolerance},
                    {"pass", pointwise_ok}};
  json cps = json::array();
  for (const auto& c : div.checkpoints)
    cps.push_back({{"k", c.k},
                   {"alpha", c.alpha},
                   {"n", c.n},
                   {"partial_sum", c.partial_sum},
                   {"floor_13", c.floor_13},
                   {"floor_full", c.floor_full},
                   {"phi_34_prediction", c.phi_34_prediction},
                   {"min_weak_norm", c.min_weak_norm}});
  j["divergence"] = {{"evaluated", diverge},
                     {"checkpoints", cps},
                     {"monotone", div.monotone},
                     {"floors_met", div.floors_met},
                     {"full_floors_met", div.full_floors_met}};
  j["pass"] = pass;
  write_json(cfg.out / "verdict.json", j);

  log << (exact_ok ? "PASS " : "FAIL ") << "coefficients exact_mismatches=" << coeff.exact_mismatches << '\n'
      << (pointwise_ok ? "PASS " : "FAIL ") << "pointwise max_rel_error=" << format_double(pointwise_max) << '\n'
      << (!diverge ? "SKIP " : div.monotone ? "PASS " : "FAIL ") << "checkpoints monotone ("
      << div.checkpoints.size() << ")\n"
      << (!diverge ? "SKIP " : div.floors_met ? "PASS " : "FAIL ") << "weak-norm floors\n";
  return pass ? kPass : kCheckFailed;
}

int run_norms(const RunConfig& cfg, std::ostream& log) {
  const io::GridFile file = io::load(cfg.file);
  json j = header(cfg);
  j["dims"] = file.dims;
  j["resolution"] = file.resolution.bits;
  j["payload"] = file.payload == io::Payload::grid ? "grid" : "spectrum";

  json per_p = json::array();
  if (file.dims == 1) {
    Grid1D g = file.as_grid1d();
    if (file.payload == io::Payload::spectrum) g = inverse(Spectrum1D{file.resolution, file.values});
    j["integral"] = integrate(g);
    for (double p : cfg.p)
      per_p.push_back({{"p", p}, {"lp", lp_quasinorm(g, p)}, {"weak_lp", weak_lp_quasinorm(g, p)}});
  } else {
    Grid2D f = file.as_grid2d();
    if (file.payload == io::Payload::spectrum) f = inverse(Spectrum2D{file.resolution, file.values});
    j["integral"] = integrate(f);
    for (double p : cfg.p)
      per_p.push_back({{"p", p},
                       {"lp", lp_quasinorm(f, p)},
                       {"weak_lp", weak_lp_quasinorm(f, p)},
                       {"hp", hp_quasinorm(f, p)}});
  }
  j["norms"] = per_p;
  std::filesystem::create_directories(cfg.out);
  write_json(cfg.out / "norms.json", j);
  log << j["norms"].dump() << '\n';
  return kPass;
}

int run_cli(int argc, const char* const* argv, std::ostream& log, std::ostream& err) {
  RunConfig cfg;
  std::string out = cfg.out.string();
  std::string file;

  CLI::App app{"Dyadic Walsh analysis experiments", "walshctl"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "key=value file mirroring the long flags; flags override it");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1, 1);

  app.add_option("--resolution,-N", cfg.resolution, "dyadic resolution N (2^N cells per axis)")
      ->capture_default_str();
  app.add_option("--p", cfg.p, "exponent p; atom-sweep and norms accept a comma list")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--n-max", cfg.n_max, "largest partial-sum index (0: 2^N)")->capture_default_str();
  app.add_option("--seed", cfg.seed, "corpus seed")->capture_default_str();
  app.add_option("--atoms", cfg.atoms, "atoms per p")->capture_default_str();
  app.add_option("--phi", cfg.phi, "weight function")
      ->check(CLI::IsMember({"linear", "log2p1", "sqrt"}))
      ->capture_default_str();
  auto* alphas = app.add_option("--alphas", cfg.alphas, "explicit alpha list")->delimiter(',')->capture_default_str();
  auto* auto_alphas = app.add_option("--auto-alphas", cfg.auto_alphas, "select this many alphas automatically");
  alphas->excludes(auto_alphas);
  app.add_option("--max-level", cfg.max_level, "auto-alpha ceiling (0: N - 1)")->capture_default_str();
  app.add_option("--parity", cfg.parity, "n filter for the weighted-sum table")
      ->check(CLI::IsMember({"all", "odd"}))
      ->capture_default_str();
  app.add_option("--out", out, "output directory")->capture_default_str();
  app.add_option("--threads", cfg.threads, "worker threads for n-sweeps")->capture_default_str();
  app.add_option("--level-cap", cfg.level_cap, "largest atom support level")->capture_default_str();
  app.add_option("--detail-depth", cfg.detail_depth, "atom detail levels below the support")->capture_default_str();
  app.add_option("--file", file, "grid file for norms");
  app.add_flag("--save-grid", cfg.save_grid, "also write binary grid payloads (atoms, martingale)");
  app.add_flag("--inject-fault", cfg.inject_fault)->group("");

  app.add_subcommand("kernels", "Dirichlet kernel identity checks")->fallthrough();
  app.add_subcommand("atom-sweep", "strong-convergence sums over a seeded atom corpus")->fallthrough();
  app.add_subcommand("counterexample", "divergent martingale exactness and divergence checks")->fallthrough();
  app.add_subcommand("norms", "quasinorms of a grid file")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, log, err);
    return code == 0 ? kPass : kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  cfg.out = out;
  cfg.file = file;

  try {
    validate(cfg);
  } catch (const std::exception& e) {
    err << "walshctl: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (cfg.command == "kernels") return run_kernels(cfg, log);
    if (cfg.command == "atom-sweep") return run_atom_sweep(cfg, log);
    if (cfg.command == "counterexample") return run_counterexample(cfg, log);
    return run_norms(cfg, log);
  } catch (const std::invalid_argument& e) {
    err << "walshctl: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "walshctl: " << e.what() << '\n';
    return kCheckFailed;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& log, std::ostream& err) {
  std::vector<const char*> argv{"walshctl"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run_cli(static_cast<int>(argv.size()), argv.data(), log, err);
}

}  // namespace walsh::cli
