#ifndef HEAVYTAIL_EMPIRICAL_HPP
#define HEAVYTAIL_EMPIRICAL_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "heavytail/errors.hpp"

namespace heavytail {

inline constexpr std::size_t kMaxSamplesPerArm = 100'000'000;

/// Distribution-free uniform CDF band half-width,
/// eps = sqrt(ln(2/(1-confidence)) / (2n)).
inline double dkw_epsilon(std::size_t n, double confidence) {
  if (n == 0) throw DomainError("dkw_epsilon: empty sample");
  if (!(confidence > 0.0 && confidence < 1.0))
    throw DomainError("dkw_epsilon: confidence must be in (0,1)");
  return std::sqrt(std::log(2.0 / (1.0 - confidence)) / (2.0 * static_cast<double>(n)));
}

/// Sorted sample with CDF / survival / quantile evaluation.
///
/// cdf(x) counts values <= x; quantile(p) is the left-continuous
/// inf{t : F(t) >= p}, i.e. the order statistic at ceil(p n).
class EmpiricalDistribution {
 public:
  EmpiricalDistribution() = default;

  static EmpiricalDistribution from_unsorted(std::vector<double> values) {
    if (values.empty()) throw DomainError("EmpiricalDistribution: empty sample");
    if (values.size() > kMaxSamplesPerArm)
      throw BudgetError("EmpiricalDistribution: sample exceeds the 1e8 per-arm cap");
    std::sort(values.begin(), values.end());
    EmpiricalDistribution d;
    d.values_ = std::move(values);
    return d;
  }

  static EmpiricalDistribution from_sorted(std::vector<double> values) {
    if (values.empty()) throw DomainError("EmpiricalDistribution: empty sample");
    EmpiricalDistribution d;
    d.values_ = std::move(values);
    return d;
  }

  std::size_t size() const { return values_.size(); }
  const std::vector<double>& values() const { return values_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  double cdf(double x) const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), x);
    return static_cast<double>(it - values_.begin()) / static_cast<double>(values_.size());
  }

  double survival(double x) const { return 1.0 - cdf(x); }

  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must be in (0,1)");
    const double n = static_cast<double>(values_.size());
    // nextafter guards against p*n landing one ulp above an exact integer
    const double k = std::ceil(std::nextafter(p * n, -1.0));
    auto idx = static_cast<std::size_t>(std::max(1.0, k)) - 1;
    if (idx >= values_.size()) idx = values_.size() - 1;
    return values_[idx];
  }

  /// Smallest strictly positive value, or 0 if none exists.
  double min_positive() const {
    const auto it = std::upper_bound(values_.begin(), values_.end(), 0.0);
    return it == values_.end() ? 0.0 : *it;
  }

  double mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
  }

 private:
  std::vector<double> values_;
};

}  // namespace heavytail

#endif
