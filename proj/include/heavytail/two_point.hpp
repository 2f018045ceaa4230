#ifndef HEAVYTAIL_TWO_POINT_HPP
#define HEAVYTAIL_TWO_POINT_HPP

#include <cstdint>
#include <functional>

#include "heavytail/errors.hpp"
#include "heavytail/majorization.hpp"

namespace heavytail {

/// Exact E[u(w . X)] for iid two-point components P(X_i = a) = prob_a,
/// P(X_i = b) = 1 - prob_a, by enumerating all 2^n outcome patterns.
/// Enumeration is capped at n = 20 components.
inline double two_point_eu_enumerate(double a, double b, double prob_a,
                                     const WeightVector& weights,
                                     const std::function<double(double)>& utility) {
  if (!(prob_a >= 0.0 && prob_a <= 1.0))
    throw DomainError("two_point_eu_enumerate: prob_a must be in [0,1]");
  const std::size_t n = weights.size();
  if (n == 0) throw DomainError("two_point_eu_enumerate: empty weight vector");
  if (n > 20)
    throw BudgetError("two_point_eu_enumerate: enumeration over 2^n outcomes capped at n = 20");

  long double expectation = 0.0L;
  const std::uint32_t patterns = 1u << n;
  for (std::uint32_t mask = 0; mask < patterns; ++mask) {
    long double prob = 1.0L;
    double value = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const bool takes_a = (mask >> i) & 1u;
      prob *= takes_a ? prob_a : 1.0 - prob_a;
      value += weights[i] * (takes_a ? a : b);
    }
    expectation += prob * utility(value);
  }
  return static_cast<double>(expectation);
}

}  // namespace heavytail

#endif
