#include "walsh/weight.hpp"

#include <cmath>
#include <stdexcept>

namespace walsh {

WeightFn WeightFn::table(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("empty weight table");
  WeightFn w(Kind::table);
  w.table_ = std::move(values);
  w.check_on(w.table_.size());
  return w;
}

WeightFn WeightFn::parse(std::string_view name) {
  if (name == "linear") return linear();
  if (name == "log2p1") return log2p1();
  if (name == "sqrt") return sqrt();
  throw std::invalid_argument("unknown weight kind: " + std::string(name));
}

std::string WeightFn::name() const {
  switch (kind_) {
    case Kind::linear: return "linear";
    case Kind::log2p1: return "log2p1";
    case Kind::sqrt: return "sqrt";
    case Kind::table: return "table";
  }
  return "unknown";
}

double WeightFn::operator()(double n) const {
  if (!(n >= 1.0)) throw std::invalid_argument("weight evaluated below 1");
  switch (kind_) {
    case Kind::linear: return n;
    case Kind::log2p1: return std::log2(n + 1.0);
    case Kind::sqrt: return std::sqrt(n);
    case Kind::table: {
      const auto idx = static_cast<std::size_t>(n);
      if (static_cast<double>(idx) != n || idx > table_.size()) throw std::out_of_range("weight table exhausted");
      return table_[idx - 1];
    }
  }
  return n;
}

void WeightFn::check_on(unsigned long long n_max) const {
  double prev = 1.0;
  for (unsigned long long n = 1; n <= n_max; ++n) {
    const double v = (*this)(static_cast<double>(n));
    if (!(v >= 1.0)) throw std::invalid_argument("weight drops below 1");
    if (v < prev) throw std::invalid_argument("weight is not nondecreasing");
    prev = v;
  }
}

}  // namespace walsh
