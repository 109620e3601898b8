// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "commands.hpp"
#include "oracles.hpp"
#include "walsh/corpus.hpp"
#include "walsh/counterexample.hpp"
#include "walsh/hardy.hpp"
#include "walsh/identities.hpp"
#include "walsh/strong.hpp"

using namespace walsh;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

class Stopwatch {
 public:
  double seconds() const { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count(); }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Outcome kernel_identities_all() {
  const Stopwatch clock;
  std::size_t checked = 0, failures = 0;
  for (int bits = 0; bits <= 8; ++bits)
    for (const IdentityResult& r : kernel_identities(Resolution(bits))) {
      checked += r.checked;
      failures += r.failures;
    }
  const double t = clock.seconds();
  return {failures == 0 && t < 10.0, std::to_string(checked) + " checks, " + std::to_string(failures) +
                                          " failures, " + fmt("%.2f s", t) + " (limit 10 s)"};
}

Outcome transform_correctness() {
  const Stopwatch clock;
  double round_trip = 0.0, parseval = 0.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Grid2D f = oracle::random_grid(Resolution(6), 500 + seed);
    const Spectrum2D s = forward(f);
    round_trip = std::max(round_trip, oracle::max_rel_diff(oracle::to_vector(inverse(s).values()),
                                                           oracle::to_vector(f.values())));
    double energy = 0.0, spectral = 0.0;
    for (double v : f.values()) energy += v * v;
    energy /= 4096.0;
    for (double c : s.coeffs) spectral += c * c;
    parseval = std::max(parseval, std::abs(spectral - energy) / energy);
  }
  std::size_t mismatches = 0, compared = 0;
  for (int bits = 0; bits <= 4; ++bits)
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const Resolution r(bits);
      const std::size_t side = r.cells();
      const auto ints = oracle::random_integers(side * side, 40 + seed);
      const Spectrum2D s = forward(oracle::integer_grid(r, ints));
      const double scale = static_cast<double>(side * side);
      for (std::uint64_t i = 0; i < side; ++i)
        for (std::uint64_t j = 0; j < side; ++j) {
          ++compared;
          if (s(i, j) * scale != static_cast<double>(oracle::scaled_coefficient(ints, side, i, j))) ++mismatches;
        }
    }
  const double t = clock.seconds();
  const bool pass = round_trip <= 1e-12 && parseval <= 1e-9 && mismatches == 0 && t < 10.0;
  return {pass, "round trip " + fmt("%.2e", round_trip) + " (tol 1e-12), Parseval " + fmt("%.2e", parseval) +
                    " (tol 1e-9), integer coefficients " + std::to_string(mismatches) + "/" +
                    std::to_string(compared) + " mismatched, " + fmt("%.2f s", t)};
}

Outcome hardy_machinery() {
  // Lattice-valued grids make every average and butterfly exact, so both
  // routes must agree bitwise; real-valued grids are reported to rounding.
  std::size_t unequal = 0, cases = 0;
  double real_dev = 0.0;
  for (int bits = 0; bits <= 6; ++bits)
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Resolution r(bits);
      const Grid2D lattice = oracle::lattice_grid(r, 300 + seed);
      const Grid2D real = oracle::random_grid(r, 300 + seed);
      for (int n = 0; n <= bits; ++n) {
        const std::uint64_t k = std::uint64_t{1} << n;
        ++cases;
        if (!(conditional_expectation(lattice, n) == partial_sum_rect(lattice, k, k))) ++unequal;
        real_dev = std::max(real_dev, oracle::max_rel_diff(oracle::to_vector(conditional_expectation(real, n).values()),
                                                           oracle::to_vector(partial_sum_rect(real, k, k).values())));
      }
    }

  const Grid1D d4 = dirichlet_kernel(4, Resolution(3));
  const double hp = hp_quasinorm(Grid2D::outer(d4, d4), 0.5);

  std::size_t nonzero = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const int level = static_cast<int>(seed % 6);
    const Atom2D a = random_atom(Resolution(8), 0.5, level, 9000 + seed);
    const Spectrum1D s = forward(diagonal_average(a));
    for (std::uint64_t n = 0; n < (std::uint64_t{1} << level); ++n)
      if (s.coeffs[n] != 0.0) ++nonzero;
  }
  const bool pass = unequal == 0 && real_dev <= 1e-13 && std::abs(hp - 1.890625) <= 1e-9 && nonzero == 0;
  return {pass, "E_n = S_{2^n,2^n} on lattice grids: " + std::to_string(unequal) + "/" + std::to_string(cases) +
                    " unequal (real-valued max rel dev " + fmt("%.1e", real_dev) + "), hp(D4xD4, 1/2) = " +
                    fmt("%.9f", hp) + ", diagonal low spectrum nonzero: " + std::to_string(nonzero)};
}

struct CorpusRun {
  CorpusSummary summary;
  std::vector<double> fingerprint;
  double seconds = 0.0;
};

CorpusRun corpus(int bits, double p, unsigned threads) {
  CorpusOptions opts;
  opts.resolution = Resolution(bits);
  opts.p = p;
  opts.atoms = 100;
  opts.seed = 1;
  opts.threads = threads;
  CorpusRun run;
  const Stopwatch clock;
  run.summary = run_corpus(opts, [&](const AtomSweep& s) {
    for (const auto& row : s.sweep.rows) run.fingerprint.push_back(row.term);
    for (const auto& row : s.regions.rows) run.fingerprint.insert(run.fingerprint.end(), row.term.begin(), row.term.end());
  });
  run.seconds = clock.seconds();
  return run;
}

Outcome strong_property() {
  const unsigned threads = std::max(2u, std::thread::hardware_concurrency());
  bool pass = true;
  std::ostringstream detail;
  double serial_seconds = 0.0;
  for (double p : {0.25, 0.5, 0.75}) {
    const CorpusRun n8 = corpus(8, p, 1);
    const CorpusRun n8_parallel = corpus(8, p, threads);
    const CorpusRun n9 = corpus(9, p, 1);
    serial_seconds += n9.seconds;
    const bool identical = n8.fingerprint == n8_parallel.fingerprint;
    const bool finite = n8.summary.all_finite && n9.summary.all_finite && n8.summary.invalid == 0;
    auto growth = [](double a, double b) { return (b - a) / a; };
    const double g = growth(n8.summary.sup_cumulative, n9.summary.sup_cumulative);
    double g_region = 0.0;
    for (int r = 0; r < 4; ++r)
      g_region = std::max(g_region, std::abs(growth(n8.summary.sup_regions[r], n9.summary.sup_regions[r])));
    pass = pass && identical && finite && std::abs(g) < 0.05 && g_region < 0.05;
    detail << "p=" << p << ": sup " << fmt("%.6g", n8.summary.sup_cumulative) << " -> "
           << fmt("%.6g", n9.summary.sup_cumulative) << " (" << fmt("%+.2f%%", 100 * g) << "), regions max "
           << fmt("%.2f%%", 100 * g_region) << (identical ? ", threads identical" : ", THREADS DIFFER")
           << (finite ? "" : ", NON-FINITE") << "; ";
  }
  pass = pass && serial_seconds < 120.0;
  detail << "N=9 single-threaded " << fmt("%.1f s", serial_seconds) << " (limit 120 s)";
  return {pass, detail.str()};
}

CounterexampleMartingale linear_counterexample(std::vector<int> alphas, int bits) {
  return build_counterexample(select_alphas(WeightFn::linear(), 0.5, std::move(alphas)), bits);
}

Outcome counterexample_exactness() {
  const CounterexampleMartingale cm = linear_counterexample({2, 5}, 7);
  const CoefficientCheck c = check_coefficients(cm);
  double worst = 0.0;
  std::size_t checked = 0;
  for (const auto& pc : check_pointwise_all(cm)) {
    worst = std::max(worst, pc.max_rel_error);
    ++checked;
  }
  const double at5 = check_pointwise(cm, 5).expected;
  const bool example = std::abs(at5 - 16 / std::numbers::sqrt2) <= 1e-9;
  const bool pass = c.exact_mismatches == 0 && worst <= 1e-9 && checked == 2 + 16 && example;
  return {pass, "coefficient mismatches " + std::to_string(c.exact_mismatches) + " of 16384 (float route rel " +
                    fmt("%.1e", c.float_max_rel_error) + "), odd n checked " + std::to_string(checked) +
                    ", max rel error " + fmt("%.1e", worst) + " (tol 1e-9), |S_{5,5}f| = " + fmt("%.6f", at5)};
}

Outcome counterexample_divergence() {
  const Stopwatch clock;
  const CounterexampleMartingale cm = linear_counterexample({2, 5, 8}, 10);
  const DivergenceReport rep = divergence_experiment(cm, (std::uint64_t{1} << 10) - 1, 1);
  const double t = clock.seconds();
  std::ostringstream detail;
  detail << "checkpoints";
  for (const auto& cp : rep.checkpoints)
    detail << " n=" << cp.n << ':' << fmt("%.4g", cp.partial_sum) << " (weak " << fmt("%.4g", cp.min_weak_norm)
           << " >= " << fmt("%.4g", cp.floor_13) << ')';
  detail << (rep.monotone ? ", increasing" : ", NOT increasing") << (rep.floors_met ? ", floors met" : ", FLOOR MISSED")
         << ", " << fmt("%.1f s", t) << " (limit 300 s)";
  return {rep.checkpoints.size() >= 3 && rep.ok() && t < 300.0, detail.str()};
}

Outcome one_dimensional() {
  const std::uint64_t n_max = 10000;
  const double simon = simon_1d_sum(Grid1D(Resolution(4), 1.0), 0.5, n_max).cumulative();
  const double theorem1 = theorem1_sum(Grid2D(Resolution(4), 1.0), 0.5, n_max).cumulative();
  const double zeta32 = oracle::zeta_partial(1.5, 1, n_max);
  const double zeta2 = oracle::zeta_partial(2.0, 1, n_max);
  const double e1 = std::abs(simon - zeta32), e2 = std::abs(theorem1 - zeta2);
  return {e1 <= 1e-6 && e2 <= 1e-6, "simon_1d " + fmt("%.12f", simon) + " vs " + fmt("%.12f", zeta32) +
                                         ", theorem1 " + fmt("%.12f", theorem1) + " vs " + fmt("%.12f", zeta2) +
                                         " (tol 1e-6)"};
}

Outcome negative_controls() {
  const auto out = std::filesystem::temp_directory_path() / "walsh_acceptance_negative";
  std::ostringstream sink;
  const int fault = cli::run_cli({"kernels", "-N", "6", "--inject-fault", "--out", out.string()}, sink, sink);
  const int alpha = cli::run_cli({"counterexample", "--alphas", "1,5", "--out", out.string()}, sink, sink);
  bool library_rejects = false;
  try {
    select_alphas(WeightFn::linear(), 0.5, std::vector<int>{1, 5});
  } catch (const std::invalid_argument&) {
    library_rejects = true;
  }
  std::filesystem::remove_all(out);
  return {fault != 0 && alpha != 0 && library_rejects,
          "fault-injected kernels exit " + std::to_string(fault) + ", alpha_0 = 1 exit " + std::to_string(alpha) +
              (library_rejects ? ", library rejects alpha_0 = 1" : ", library ACCEPTS alpha_0 = 1")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"kernel identities", kernel_identities_all},
      {"transform correctness", transform_correctness},
      {"hardy machinery", hardy_machinery},
      {"strong convergence property", strong_property},
      {"counterexample exactness", counterexample_exactness},
      {"counterexample divergence", counterexample_divergence},
      {"one-dimensional functionals", one_dimensional},
      {"negative controls", negative_controls},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
