#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace walsh {

/// Nondecreasing weight Φ : N → [1, ∞) used by the sharpness construction.
class WeightFn {
 public:
  enum class Kind { linear, log2p1, sqrt, table };

  static WeightFn linear() { return WeightFn(Kind::linear); }
  static WeightFn log2p1() { return WeightFn(Kind::log2p1); }
  static WeightFn sqrt() { return WeightFn(Kind::sqrt); }
  /// values[i] = Φ(i + 1); evaluation past the table throws.
  static WeightFn table(std::vector<double> values);
  static WeightFn parse(std::string_view name);

  Kind kind() const { return kind_; }
  std::string name() const;

  /// Φ(n) for n ≥ 1. Takes a double so that Φ(2^α) is usable for large α.
  double operator()(double n) const;

  /// Throws unless Φ(1..n_max) is nondecreasing and ≥ 1.
  void check_on(unsigned long long n_max) const;

 private:
  explicit WeightFn(Kind k) : kind_(k) {}
  Kind kind_;
  std::vector<double> table_;
};

}  // namespace walsh
