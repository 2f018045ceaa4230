#ifndef HEAVYTAIL_TWO_TERM_HPP
#define HEAVYTAIL_TWO_TERM_HPP

#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "heavytail/distributions.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

/// Weighted pair eta X1 + (1-eta) X2 of independent Pareto(alpha_i) variables
/// with alpha_i in (0,1], expressed through r_i = -1/alpha_i. When
/// alpha1 <= alpha2 the exponents satisfy r1 <= r2 <= -1.
struct TwoTermIntegrand {
  double alpha1 = 1.0;
  double alpha2 = 1.0;
  double eta = 0.5;

  TwoTermIntegrand() = default;
  TwoTermIntegrand(double alpha1_, double alpha2_, double eta_)
      : alpha1(alpha1_), alpha2(alpha2_), eta(eta_) {
    if (!(alpha1 > 0.0 && alpha1 <= 1.0) || !(alpha2 > 0.0 && alpha2 <= 1.0))
      throw DomainError("TwoTermIntegrand: tail parameters must be in (0,1]");
    if (!(eta >= 0.0 && eta <= 0.5))
      throw DomainError("TwoTermIntegrand: eta must be in [0, 1/2]");
  }

  double r1() const { return -1.0 / alpha1; }
  double r2() const { return -1.0 / alpha2; }
};

inline constexpr double kTwoTermAbsTol = 1e-9;

namespace detail {

/// H(z) = ((x-z)/(1-z))^(1/r2) + integral_L^1 ((x-(1-z) y^r2)/z)^(1/r1) dy
/// with L = ((x-z)/(1-z))^(1/r2). The distribution function of the weighted
/// pair is 1 - H(weight); monotonicity of H in z is the dominance mechanism.
inline double h_eval(double r1, double r2, double x, double z) {
  const double ratio = (x - z) / (1.0 - z);
  const double lower = std::pow(ratio, 1.0 / r2);  // in (0, 1]
  if (lower >= 1.0) return 1.0;                    // x == 1 boundary
  const auto integrand = [r1, r2, x, z](double y) {
    return std::pow((x - (1.0 - z) * std::pow(y, r2)) / z, 1.0 / r1);
  };
  using quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  // The integrand leaves 1 at y = L with a possibly steep boundary layer for
  // small z, so the panel next to L is integrated separately.
  const double split = lower + (1.0 - lower) / 64.0;
  double err1 = 0.0, err2 = 0.0;
  const double part1 = quad::integrate(integrand, lower, split, 18, 1e-12, &err1);
  const double part2 = quad::integrate(integrand, split, 1.0, 18, 1e-12, &err2);
  if (err1 + err2 > kTwoTermAbsTol)
    throw Error("two-term quadrature failed to reach its error target");
  return lower + part1 + part2;
}

}  // namespace detail

/// H(z) for z in (0, 1/2], x >= 1; exposed so monotonicity in z can be probed.
inline double h_function(const TwoTermIntegrand& spec, double x, double z) {
  if (!(x >= 1.0)) throw DomainError("h_function: x must be >= 1");
  if (!(z > 0.0 && z <= 0.5)) throw DomainError("h_function: z must be in (0, 1/2]");
  return detail::h_eval(spec.r1(), spec.r2(), x, z);
}

/// P(eta X1 + (1-eta) X2 <= x) by adaptive quadrature, absolute error <= 1e-9.
/// eta == 0 degenerates to the single surviving Pareto(alpha2) term.
inline double two_term_cdf(const TwoTermIntegrand& spec, double x) {
  if (spec.eta == 0.0) return pareto_cdf(ParetoSpec(spec.alpha2), x);
  if (x < 1.0) return 0.0;  // support of the unit-total pair starts at 1
  return 1.0 - detail::h_eval(spec.r1(), spec.r2(), x, spec.eta);
}

}  // namespace heavytail

#endif
