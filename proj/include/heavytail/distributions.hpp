#ifndef HEAVYTAIL_DISTRIBUTIONS_HPP
#define HEAVYTAIL_DISTRIBUTIONS_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <boost/math/special_functions/beta.hpp>

#include "heavytail/errors.hpp"
#include "heavytail/random.hpp"

namespace heavytail {

/// Pareto(alpha) scaled by theta: survival (scale/x)^alpha on [scale, inf).
struct ParetoSpec {
  double alpha = 1.0;
  double scale = 1.0;

  ParetoSpec() = default;
  ParetoSpec(double alpha_, double scale_ = 1.0) : alpha(alpha_), scale(scale_) {
    if (!(alpha > 0.0)) throw DomainError("ParetoSpec: alpha must be > 0");
    if (!(scale > 0.0)) throw DomainError("ParetoSpec: scale must be > 0");
  }

  /// Infinite mean iff alpha <= 1.
  bool extremely_heavy_tailed() const { return alpha <= 1.0; }
};

/// Generalized Pareto on [0, inf): 1 - (1 + xi x / beta)^(-1/xi), xi >= 0.
struct GPDSpec {
  double xi = 1.0;
  double beta = 1.0;

  GPDSpec() = default;
  GPDSpec(double xi_, double beta_) : xi(xi_), beta(beta_) {
    if (!(xi >= 0.0)) throw DomainError("GPDSpec: xi must be >= 0");
    if (!(beta > 0.0)) throw DomainError("GPDSpec: beta must be > 0");
  }

  bool infinite_mean() const { return xi >= 1.0; }
};

/// Feller-Pareto: mu + sigma (Z1/Z)^gamma, Z1 ~ Gamma(beta), Z ~ Gamma(alpha).
struct FellerParetoSpec {
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double mu = 0.0;
  double sigma = 1.0;

  FellerParetoSpec() = default;
  FellerParetoSpec(double alpha_, double beta_, double gamma_, double mu_ = 0.0,
                   double sigma_ = 1.0)
      : alpha(alpha_), beta(beta_), gamma(gamma_), mu(mu_), sigma(sigma_) {
    if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0 && sigma > 0.0))
      throw DomainError("FellerParetoSpec: alpha, beta, gamma, sigma must be > 0");
  }

  bool infinite_mean() const { return alpha <= gamma; }
};

/// Joint law of n components coupled through one common gamma shock Z.
/// beta == 1 with unit exponent selects the (Zi+Z)/Z multivariate Pareto form;
/// otherwise rows follow the Feller-Pareto form ((Zi/Z)^gamma, ...).
struct CommonShockSpec {
  int n = 2;
  double alpha = 1.0;
  double beta = 1.0;

  CommonShockSpec() = default;
  CommonShockSpec(int n_, double alpha_, double beta_ = 1.0)
      : n(n_), alpha(alpha_), beta(beta_) {
    if (n < 1) throw DomainError("CommonShockSpec: dimension must be >= 1");
    if (!(alpha > 0.0 && beta > 0.0))
      throw DomainError("CommonShockSpec: alpha and beta must be > 0");
  }
};

/// The lottery paying 2^k with probability 2^-k, k >= 1.
struct StPetersburgSpec {};

/// Finite weighted sum of independent Pareto(alpha_j) variables,
/// sum_j lambda_j Y_j. One margin spec; sampled by direct convolution.
struct ParetoSumSpec {
  std::vector<double> lambdas;
  std::vector<double> alphas;

  ParetoSumSpec() = default;
  ParetoSumSpec(std::vector<double> lambdas_, std::vector<double> alphas_)
      : lambdas(std::move(lambdas_)), alphas(std::move(alphas_)) {
    if (lambdas.empty() || lambdas.size() != alphas.size())
      throw DomainError("ParetoSumSpec: need matching non-empty lambda/alpha lists");
    for (double l : lambdas)
      if (!(l >= 0.0)) throw DomainError("ParetoSumSpec: lambdas must be >= 0");
    for (double a : alphas)
      if (!(a > 0.0)) throw DomainError("ParetoSumSpec: alphas must be > 0");
  }
};

using MarginSpec = std::variant<ParetoSpec, GPDSpec, FellerParetoSpec,
                                StPetersburgSpec, ParetoSumSpec>;

/// Pointwise transform applied to a margin draw.
///   cap(c):         x -> min(x, c)
///   floor-max(c):   x -> max(x, c)
///   excess(c):      x -> max(x - c, 0)
///   tail-beyond(c): replaces the law by one with survival t^-alpha for t >= c
///                   and P(Y > 0) = 1 (uniform body below c); Pareto margins only
///   trigger(p):     x -> x * 1{A}, A an independent event of probability p
struct MarginTransform {
  enum class Kind { identity, cap, floor_max, excess, tail_beyond, trigger };

  Kind kind = Kind::identity;
  double c = 1.0;
  double p = 0.5;

  static MarginTransform identity() { return {}; }
  static MarginTransform cap(double c) { return make(Kind::cap, c); }
  static MarginTransform floor_max(double c) { return make(Kind::floor_max, c); }
  static MarginTransform excess(double c) { return make(Kind::excess, c); }
  static MarginTransform tail_beyond(double c) { return make(Kind::tail_beyond, c); }
  static MarginTransform trigger(double p) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("trigger: p must be in (0,1)");
    MarginTransform t;
    t.kind = Kind::trigger;
    t.p = p;
    return t;
  }

 private:
  static MarginTransform make(Kind kind, double c) {
    if (!(c >= 1.0)) throw DomainError("MarginTransform: threshold c must be >= 1");
    MarginTransform t;
    t.kind = kind;
    t.c = c;
    return t;
  }
};

// ---------------------------------------------------------------------------
// Analytic CDFs and quantiles

inline double pareto_cdf(const ParetoSpec& spec, double x) {
  if (x < spec.scale) return 0.0;
  return 1.0 - std::pow(spec.scale / x, spec.alpha);
}

inline double pareto_quantile(const ParetoSpec& spec, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("pareto_quantile: p must be in (0,1)");
  return spec.scale * std::pow(1.0 - p, -1.0 / spec.alpha);
}

inline double gpd_cdf(const GPDSpec& spec, double x) {
  if (x < 0.0) return 0.0;
  if (spec.xi == 0.0) return 1.0 - std::exp(-x / spec.beta);
  return 1.0 - std::pow(1.0 + spec.xi * x / spec.beta, -1.0 / spec.xi);
}

inline double gpd_quantile(const GPDSpec& spec, double p) {
  if (!(p > 0.0 && p < 1.0)) throw DomainError("gpd_quantile: p must be in (0,1)");
  if (spec.xi == 0.0) return -spec.beta * std::log(1.0 - p);
  return (spec.beta / spec.xi) * (std::pow(1.0 - p, -spec.xi) - 1.0);
}

/// CDF of FP(alpha, beta, gamma) at x (mu = 0, sigma = 1): Z1/(Z1+Z) is
/// Beta(beta, alpha), so F(x) = I_{v/(1+v)}(beta, alpha) with v = x^(1/gamma).
/// For beta = 1 this collapses to the Pareto Type IV form 1-(1+x^(1/gamma))^-alpha.
inline double feller_pareto_cdf(const FellerParetoSpec& spec, double x) {
  const double z = (x - spec.mu) / spec.sigma;
  if (z <= 0.0) return 0.0;
  const double v = std::pow(z, 1.0 / spec.gamma);
  if (spec.beta == 1.0) return 1.0 - std::pow(1.0 + v, -spec.alpha);
  return boost::math::ibeta(spec.beta, spec.alpha, v / (1.0 + v));
}

inline double feller_pareto_quantile(const FellerParetoSpec& spec, double p) {
  if (!(p > 0.0 && p < 1.0))
    throw DomainError("feller_pareto_quantile: p must be in (0,1)");
  double v;
  if (spec.beta == 1.0) {
    v = std::pow(1.0 - p, -1.0 / spec.alpha) - 1.0;
  } else {
    const double u = boost::math::ibeta_inv(spec.beta, spec.alpha, p);
    v = u / (1.0 - u);
  }
  return spec.mu + spec.sigma * std::pow(v, spec.gamma);
}

/// P(X <= 2^k) = 1 - 2^-k on the dyadic support {2, 4, 8, ...}.
inline double st_petersburg_cdf(double x) {
  if (x < 2.0) return 0.0;
  const double k = std::floor(std::log2(x));
  return 1.0 - std::pow(2.0, -k);
}

/// Clayton survival copula with parameter 1/alpha:
/// (sum_i u_i^(-1/alpha) - n + 1)^(-alpha).
inline double clayton_survival_copula(std::span<const double> u, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("clayton copula: alpha must be > 0");
  if (u.empty()) throw DomainError("clayton copula: empty argument");
  double acc = 1.0 - static_cast<double>(u.size());
  for (double ui : u) {
    if (!(ui > 0.0 && ui < 1.0))
      throw DomainError("clayton copula: all u_i must lie in (0,1)");
    acc += std::pow(ui, -1.0 / alpha);
  }
  return std::pow(acc, -alpha);
}

// ---------------------------------------------------------------------------
// Sampling

/// Inverse-transform Pareto draw; uses 1-U so a zero uniform cannot reach the
/// -1/alpha power.
inline double pareto_draw(const ParetoSpec& spec, RandomStream& stream) {
  return spec.scale * std::pow(1.0 - stream.uniform01(), -1.0 / spec.alpha);
}

inline double gpd_draw(const GPDSpec& spec, RandomStream& stream) {
  const double u = 1.0 - stream.uniform01();  // in (0, 1]
  if (spec.xi == 0.0) return -spec.beta * std::log(u);
  return (spec.beta / spec.xi) * (std::pow(u, -spec.xi) - 1.0);
}

inline double feller_pareto_draw(const FellerParetoSpec& spec, RandomStream& stream) {
  const double z1 = gamma_sample(stream, spec.beta);
  const double z = gamma_sample(stream, spec.alpha);
  return spec.mu + spec.sigma * std::pow(z1 / z, spec.gamma);
}

/// Geometric level k = 1 + floor(-log2 U) capped at 62 doublings; the cap's
/// mass (< 2^-62) is assigned to the cap value.
inline double st_petersburg_draw(RandomStream& stream) {
  const double u = stream.uniform_open01();
  const int k = std::min(62, 1 + static_cast<int>(std::floor(-std::log2(u))));
  return std::ldexp(1.0, k);
}

inline double pareto_sum_draw(const ParetoSumSpec& spec, RandomStream& stream) {
  double acc = 0.0;
  for (std::size_t j = 0; j < spec.lambdas.size(); ++j)
    acc += spec.lambdas[j] * pareto_draw(ParetoSpec(spec.alphas[j]), stream);
  return acc;
}

inline double margin_draw(const MarginSpec& spec, RandomStream& stream) {
  return std::visit(
      [&stream](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ParetoSpec>) return pareto_draw(s, stream);
        else if constexpr (std::is_same_v<T, GPDSpec>) return gpd_draw(s, stream);
        else if constexpr (std::is_same_v<T, FellerParetoSpec>)
          return feller_pareto_draw(s, stream);
        else if constexpr (std::is_same_v<T, StPetersburgSpec>)
          return st_petersburg_draw(stream);
        else
          return pareto_sum_draw(s, stream);
      },
      spec);
}

/// Margin quantile where a closed form exists (needed for comonotone coupling).
inline double margin_quantile(const MarginSpec& spec, double p) {
  return std::visit(
      [p](const auto& s) -> double {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ParetoSpec>) return pareto_quantile(s, p);
        else if constexpr (std::is_same_v<T, GPDSpec>) return gpd_quantile(s, p);
        else if constexpr (std::is_same_v<T, FellerParetoSpec>)
          return feller_pareto_quantile(s, p);
        else if constexpr (std::is_same_v<T, StPetersburgSpec>) {
          if (!(p > 0.0 && p < 1.0)) throw DomainError("quantile: p must be in (0,1)");
          return std::ldexp(1.0, static_cast<int>(std::ceil(-std::log2(1.0 - p))));
        } else {
          throw ConfigError("margin_quantile: no closed form for a Pareto sum");
          return 0.0;
        }
      },
      spec);
}

/// Draw one value from a margin with a transform applied.
///
/// tail-beyond(c) replaces the law itself: with mass 1 - c^-alpha the value is
/// uniform on (0, c), otherwise it is c times a fresh Pareto(alpha) draw, which
/// gives survival t^-alpha exactly for t >= c. Pareto margins with unit scale
/// only; anything else is a configuration error.
inline double transformed_draw(const MarginSpec& spec, const MarginTransform& t,
                               RandomStream& stream) {
  using Kind = MarginTransform::Kind;
  if (t.kind == Kind::tail_beyond) {
    const auto* pareto = std::get_if<ParetoSpec>(&spec);
    if (pareto == nullptr || pareto->scale != 1.0)
      throw ConfigError("tail-beyond transform requires a unit-scale Pareto margin");
    const double body_mass = 1.0 - std::pow(t.c, -pareto->alpha);
    if (stream.uniform01() < body_mass) return t.c * stream.uniform_open01();
    return t.c * pareto_draw(*pareto, stream);
  }
  const double x = margin_draw(spec, stream);
  switch (t.kind) {
    case Kind::identity: return x;
    case Kind::cap: return std::min(x, t.c);
    case Kind::floor_max: return std::max(x, t.c);
    case Kind::excess: return std::max(x - t.c, 0.0);
    case Kind::trigger: return stream.bernoulli(t.p) ? x : 0.0;
    default: throw ConfigError("unsupported margin transform");
  }
}

inline std::vector<double> sample(const MarginSpec& spec, const MarginTransform& t,
                                  RandomStream& stream, std::size_t n) {
  if (n < 1) throw ConfigError("sample: n must be >= 1");
  std::vector<double> out(n);
  for (auto& x : out) x = transformed_draw(spec, t, stream);
  return out;
}

inline std::vector<double> sample(const MarginSpec& spec, RandomStream& stream,
                                  std::size_t n) {
  return sample(spec, MarginTransform::identity(), stream, n);
}

/// One common-shock row built from an explicit shock Z and numerators Zi;
/// exposed so slice behaviour can be probed directly.
inline std::vector<double> common_shock_row(const CommonShockSpec& spec,
                                            double gamma_exp, double shock,
                                            std::span<const double> numerators) {
  if (static_cast<int>(numerators.size()) != spec.n)
    throw DimensionError("common_shock_row: numerator count != dimension");
  std::vector<double> row(static_cast<std::size_t>(spec.n));
  const bool mp_form = (spec.beta == 1.0 && gamma_exp == 1.0);
  for (std::size_t i = 0; i < row.size(); ++i) {
    row[i] = mp_form ? (numerators[i] + shock) / shock
                     : std::pow(numerators[i] / shock, gamma_exp);
  }
  return row;
}

/// n rows of the common-shock vector; entries within a row share one Z draw.
/// Row-major, n * spec.n values.
inline std::vector<double> sample_common_shock(const CommonShockSpec& spec,
                                               double gamma_exp,
                                               RandomStream& stream,
                                               std::size_t n_rows) {
  if (!(gamma_exp > 0.0))
    throw DomainError("sample_common_shock: gamma exponent must be > 0");
  std::vector<double> out;
  out.reserve(n_rows * static_cast<std::size_t>(spec.n));
  std::vector<double> numerators(static_cast<std::size_t>(spec.n));
  for (std::size_t r = 0; r < n_rows; ++r) {
    const double shock = gamma_sample(stream, spec.alpha);
    for (auto& z : numerators) z = gamma_sample(stream, spec.beta);
    const auto row = common_shock_row(spec, gamma_exp, shock, numerators);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

}  // namespace heavytail

#endif
