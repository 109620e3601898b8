#include "walsh/report.hpp"

#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace walsh {
namespace {

void write_preamble(std::ostream& os, const CsvPreamble& preamble) {
  for (const auto& [k, v] : preamble) os << "# " << k << '=' << v << '\n';
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report, const RegionReport* regions,
                     const CsvPreamble& preamble) {
  if (regions && regions->rows.size() != report.rows.size())
    throw std::invalid_argument("region report does not line up with the sweep");
  write_preamble(os, preamble);
  os << "n,strong_norm,weak_norm,term,cumulative";
  if (regions) os << ",r11,r12,r21,r22";
  os << '\n';
  for (std::size_t i = 0; i < report.rows.size(); ++i) {
    const ReportRow& r = report.rows[i];
    os << r.n << ',' << format_double(r.strong_norm) << ',' << format_double(r.weak_norm) << ','
       << format_double(r.term) << ',' << format_double(r.cumulative);
    if (regions)
      for (double t : regions->rows[i].term) os << ',' << format_double(t);
    os << '\n';
  }
}

void write_checkpoint_csv(std::ostream& os, const DivergenceReport& report, const CsvPreamble& preamble) {
  write_preamble(os, preamble);
  os << "k,alpha,n_checkpoint,partial_sum,floor_13,phi_34_prediction\n";
  for (const Checkpoint& c : report.checkpoints)
    os << c.k << ',' << c.alpha << ',' << c.n << ',' << format_double(c.partial_sum) << ','
       << format_double(c.floor_13) << ',' << format_double(c.phi_34_prediction) << '\n';
}

nlohmann::json sweep_summary(const SweepReport& report) {
  nlohmann::json j;
  j["functional"] = report.functional;
  j["p"] = report.p;
  j["n_max"] = report.n_max;
  j["resolution"] = report.resolution.bits;
  j["cumulative"] = report.cumulative();
  j["hp_norm"] = report.hp_norm ? nlohmann::json(*report.hp_norm) : nlohmann::json(nullptr);
  const auto ratio = report.ratio();
  j["ratio"] = ratio ? nlohmann::json(*ratio) : nlohmann::json(nullptr);
  j["tail"] = report.tail ? nlohmann::json(*report.tail) : nlohmann::json(nullptr);
  if (report.functional == "theoremG") j["log_base"] = "e";
  return j;
}

}  // namespace walsh
