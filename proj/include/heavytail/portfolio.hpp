#ifndef HEAVYTAIL_PORTFOLIO_HPP
#define HEAVYTAIL_PORTFOLIO_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "heavytail/config.hpp"
#include "heavytail/empirical.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/majorization.hpp"
#include "heavytail/scenario.hpp"

namespace heavytail {

/// Piecewise-linear utility from sampled points; must be non-decreasing.
/// Evaluation clamps outside the tabulated range, so the utility is bounded.
struct TabulatedUtility {
  std::vector<double> xs;
  std::vector<double> ys;

  TabulatedUtility(std::vector<double> xs_, std::vector<double> ys_)
      : xs(std::move(xs_)), ys(std::move(ys_)) {
    if (xs.size() < 2 || xs.size() != ys.size())
      throw SpecError("tabulated utility needs >= 2 matching points");
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!(xs[i] > xs[i - 1]))
        throw SpecError("tabulated utility abscissae must increase");
      if (ys[i] < ys[i - 1])
        throw SpecError("utility must be non-decreasing");
    }
  }

  double operator()(double x) const {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = static_cast<std::size_t>(it - xs.begin());
    const double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
    return ys[i - 1] + t * (ys[i] - ys[i - 1]);
  }
};

/// Monotone preference functional over profit distributions.
struct PreferenceSpec {
  enum class Kind { quantile, expected_utility, bounded_distortion };
  enum class Monotonicity { weak, mild };

  Kind kind = Kind::quantile;
  Monotonicity monotonicity = Monotonicity::mild;
  double p = 0.95;
  std::function<double(double)> u;
  bool utility_bounded = false;
  std::function<double(double)> h;
  std::string name = "quantile:0.95";

  static PreferenceSpec quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
      throw SpecError("quantile preference needs p in (0,1)");
    PreferenceSpec s;
    s.kind = Kind::quantile;
    s.p = p;
    s.name = "quantile:" + std::to_string(p);
    return s;
  }

  static PreferenceSpec expected_utility(std::function<double(double)> u,
                                         bool bounded, std::string name) {
    PreferenceSpec s;
    s.kind = Kind::expected_utility;
    s.u = std::move(u);
    s.utility_bounded = bounded;
    s.name = "eu:" + std::move(name);
    return s;
  }

  static PreferenceSpec expected_utility(TabulatedUtility table,
                                         std::string name = "tabulated") {
    return expected_utility(
        [table = std::move(table)](double x) { return table(x); }, true,
        std::move(name));
  }

  /// Distortion rho(X) = sum_i x_(i) (h(i/n) - h((i-1)/n)); h must be a
  /// non-decreasing map of [0,1] onto [0,1].
  static PreferenceSpec bounded_distortion(std::function<double(double)> h,
                                           std::string name) {
    PreferenceSpec s;
    s.kind = Kind::bounded_distortion;
    s.h = std::move(h);
    s.name = "distortion:" + std::move(name);
    return s;
  }
};

/// Refuses preferences that cannot converge on the given joint law: sample
/// means of unbounded utilities of infinite-mean margins do not settle, so
/// such combinations are rejected in favour of quantile preferences.
inline void ensure_preference_applicable(const PreferenceSpec& pref,
                                         const JointSpec& joint) {
  if (pref.kind != PreferenceSpec::Kind::expected_utility || pref.utility_bounded)
    return;
  for (const auto& m : joint.margins) {
    if (detail::margin_infinite_mean(m))
      throw SpecError(
          "expected utility with an unbounded utility is not evaluable on "
          "infinite-mean margins; use a bounded utility or a quantile preference");
  }
}

/// rho applied to an empirical profit sample.
inline double evaluate(const PreferenceSpec& pref,
                       const EmpiricalDistribution& sample) {
  switch (pref.kind) {
    case PreferenceSpec::Kind::quantile:
      return sample.quantile(pref.p);
    case PreferenceSpec::Kind::expected_utility: {
      if (!pref.u) throw SpecError("expected-utility preference without a utility");
      long double acc = 0.0L;
      for (double v : sample.values()) acc += pref.u(v);
      return static_cast<double>(acc / static_cast<long double>(sample.size()));
    }
    case PreferenceSpec::Kind::bounded_distortion: {
      if (!pref.h) throw SpecError("distortion preference without a distortion");
      const auto& vals = sample.values();
      const double n = static_cast<double>(vals.size());
      long double acc = 0.0L;
      double h_prev = pref.h(0.0);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double h_cur = pref.h(static_cast<double>(i + 1) / n);
        if (h_cur < h_prev - 1e-15)
          throw SpecError("distortion function must be non-decreasing");
        acc += vals[i] * (h_cur - h_prev);
        h_prev = h_cur;
      }
      return static_cast<double>(acc);
    }
  }
  throw Error("unreachable preference kind");
}

/// Same functional on raw (unsorted) values; quantile evaluation avoids the
/// full sort.
inline double evaluate_values(const PreferenceSpec& pref, std::vector<double> values) {
  if (values.empty()) throw DomainError("evaluate_values: empty sample");
  if (pref.kind == PreferenceSpec::Kind::quantile) {
    const double n = static_cast<double>(values.size());
    const auto k = static_cast<std::size_t>(
        std::max(1.0, std::ceil(std::nextafter(pref.p * n, -1.0))));
    auto nth = values.begin() + static_cast<std::ptrdiff_t>(k - 1);
    std::nth_element(values.begin(), nth, values.end());
    return *nth;
  }
  if (pref.kind == PreferenceSpec::Kind::expected_utility) {
    if (!pref.u) throw SpecError("expected-utility preference without a utility");
    long double acc = 0.0L;
    for (double v : values) acc += pref.u(v);
    return static_cast<double>(acc / static_cast<long double>(values.size()));
  }
  return evaluate(pref, EmpiricalDistribution::from_unsorted(std::move(values)));
}

/// Schur-convex penalty on weights.
struct PenaltySpec {
  std::function<double(std::span<const double>)> g;
  std::string name = "none";

  static PenaltySpec none() {
    PenaltySpec s;
    s.g = [](std::span<const double>) { return 0.0; };
    return s;
  }
  static PenaltySpec sum_sq(double c) {
    PenaltySpec s;
    s.g = [c](std::span<const double> w) {
      double acc = 0.0;
      for (double x : w) acc += x * x;
      return c * acc;
    };
    s.name = "sumsq:" + std::to_string(c);
    return s;
  }
  static PenaltySpec max_weight(double c) {
    PenaltySpec s;
    s.g = [c](std::span<const double> w) {
      double m = 0.0;
      for (double x : w) m = std::max(m, x);
      return c * m;
    };
    s.name = "maxw:" + std::to_string(c);
    return s;
  }
};

/// Immutable bank of component rows shared across lattice points and chain
/// steps, so every evaluation sees common random numbers.
class SampleBank {
 public:
  SampleBank(const JointSpec& joint, std::size_t rows, std::uint64_t seed,
             std::uint64_t stream_base, int threads)
      : dim_(joint.margins.size()), rows_(rows) {
    if (rows_ > kMaxSamplesPerArm)
      throw BudgetError("SampleBank: rows exceed the 1e8 cap");
    ScenarioSpec facade;
    facade.joint = joint;
    const WeightVector uniform(
        std::vector<double>(dim_, 1.0 / static_cast<double>(dim_)));
    facade.weights_low = uniform;
    facade.weights_high = uniform;
    facade.allow_finite_mean = true;  // banks serve both tail regimes
    PairedSampler sampler(std::move(facade));
    data_.resize(rows_ * dim_);
    for_each_block(rows_, seed, stream_base, threads,
                   [&](std::size_t, std::size_t first, std::size_t last,
                       RandomStream& stream) {
                     for (std::size_t r = first; r < last; ++r)
                       sampler.draw_row(stream,
                                        {data_.data() + r * dim_, dim_});
                   });
  }

  std::size_t rows() const { return rows_; }
  std::size_t dim() const { return dim_; }

  std::vector<double> portfolio_values(std::span<const double> w,
                                       double shift = 0.0) const {
    if (w.size() != dim_) throw DimensionError("portfolio_values: bad weight length");
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
      const double* row = data_.data() + r * dim_;
      double acc = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) acc += w[i] * row[i];
      out[r] = acc - shift;
    }
    return out;
  }

 private:
  std::size_t dim_;
  std::size_t rows_;
  std::vector<double> data_;
};

/// Preference values along a T-transform chain from eta, all on one bank.
/// The chain applies to eta's descending rearrangement, matching
/// t_transform_chain's convention.
inline std::vector<double> schur_probe(const PreferenceSpec& pref,
                                       const JointSpec& joint,
                                       const WeightVector& eta,
                                       const std::vector<TTransform>& chain,
                                       const RunConfig& config,
                                       const std::string& label = "schur-probe") {
  ensure_preference_applicable(pref, joint);
  SampleBank bank(joint, config.samples, config.seed, stream_partition(label),
                  config.threads);
  std::vector<double> values;
  std::vector<double> w = eta.descending();
  values.push_back(evaluate_values(pref, bank.portfolio_values(w)));
  for (const auto& t : chain) {
    t.apply(w);
    values.push_back(evaluate_values(pref, bank.portfolio_values(w)));
  }
  return values;
}

/// Probe values plus a per-step noise band: each step's band is 2.58 times
/// the standard error of the step difference across 10 disjoint sub-banks,
/// so "non-decreasing within noise" means values[i] >= values[i-1] - band[i-1].
struct BandedProbe {
  std::vector<double> values;
  std::vector<double> step_bands;
};

inline BandedProbe schur_probe_with_bands(const PreferenceSpec& pref,
                                          const JointSpec& joint,
                                          const WeightVector& eta,
                                          const std::vector<TTransform>& chain,
                                          const RunConfig& config,
                                          const std::string& label = "schur-probe") {
  ensure_preference_applicable(pref, joint);
  SampleBank bank(joint, config.samples, config.seed, stream_partition(label),
                  config.threads);
  constexpr std::size_t kSubBanks = 10;
  const std::size_t n = config.samples;
  const std::size_t slice = n / kSubBanks;

  const auto eval_slices = [&](const std::vector<double>& values,
                               std::vector<double>& out) {
    out.resize(kSubBanks);
    for (std::size_t k = 0; k < kSubBanks; ++k) {
      const std::size_t first = k * slice;
      const std::size_t last = (k + 1 == kSubBanks) ? n : first + slice;
      out[k] = evaluate_values(
          pref, std::vector<double>(values.begin() + static_cast<std::ptrdiff_t>(first),
                                    values.begin() + static_cast<std::ptrdiff_t>(last)));
    }
  };

  BandedProbe probe;
  std::vector<double> w = eta.descending();
  std::vector<double> prev_vals = bank.portfolio_values(w);
  std::vector<double> prev_sub, cur_sub;
  eval_slices(prev_vals, prev_sub);
  probe.values.push_back(evaluate_values(pref, prev_vals));
  for (const auto& t : chain) {
    t.apply(w);
    std::vector<double> cur_vals = bank.portfolio_values(w);
    eval_slices(cur_vals, cur_sub);
    probe.values.push_back(evaluate_values(pref, cur_vals));
    double mean = 0.0;
    for (std::size_t k = 0; k < kSubBanks; ++k) mean += cur_sub[k] - prev_sub[k];
    mean /= static_cast<double>(kSubBanks);
    double var = 0.0;
    for (std::size_t k = 0; k < kSubBanks; ++k) {
      const double d = cur_sub[k] - prev_sub[k] - mean;
      var += d * d;
    }
    var /= static_cast<double>(kSubBanks - 1);
    probe.step_bands.push_back(2.5758 * std::sqrt(var / static_cast<double>(kSubBanks)));
    prev_vals.swap(cur_vals);
    prev_sub.swap(cur_sub);
  }
  return probe;
}

inline constexpr std::size_t kLatticeBudget = 2'000'000;

/// All compositions of `resolution` into n non-negative parts, in
/// lexicographic order.
inline std::vector<std::vector<int>> simplex_lattice(int resolution, int n,
                                                     std::size_t budget = kLatticeBudget) {
  if (resolution < 1 || n < 1) throw DomainError("simplex_lattice: bad shape");
  std::vector<std::vector<int>> out;
  std::vector<int> current(static_cast<std::size_t>(n), 0);
  const std::function<void(int, int)> rec = [&](int index, int remaining) {
    if (out.size() > budget)
      throw BudgetError("simplex lattice exceeds the configured point budget");
    if (index == n - 1) {
      current[static_cast<std::size_t>(index)] = remaining;
      out.push_back(current);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      current[static_cast<std::size_t>(index)] = k;
      rec(index + 1, remaining - k);
    }
  };
  rec(0, resolution);
  return out;
}

struct SurfacePoint {
  std::vector<double> weights;
  double value = 0.0;
};

struct OptimizeResult {
  WeightVector argmax;
  double value = -std::numeric_limits<double>::infinity();
  double distance_to_uniform = 0.0;
  double noise_band = 0.0;
  std::size_t lattice_points = 0;
  std::vector<SurfacePoint> surface;
  bool degenerate_penalty_warning = false;
  // p2 extras: per-total argmax summaries
  std::vector<std::pair<double, OptimizeResult>> per_total;
};

namespace detail {

inline double distance_to_uniform_ray(std::span<const double> w) {
  const std::size_t n = w.size();
  double total = 0.0;
  for (double x : w) total += x;
  const double u = total / static_cast<double>(n);
  double acc = 0.0;
  for (double x : w) acc += (x - u) * (x - u);
  return std::sqrt(acc);
}

/// DKW-style width of the p-quantile confidence interval, used as the
/// reported noise band for quantile preferences; CLT width for utilities.
inline double preference_noise_band(const PreferenceSpec& pref,
                                    const std::vector<double>& values,
                                    double confidence) {
  auto sorted = values;
  std::sort(sorted.begin(), sorted.end());
  const auto ed = EmpiricalDistribution::from_sorted(std::move(sorted));
  if (pref.kind == PreferenceSpec::Kind::quantile) {
    const double eps = dkw_epsilon(ed.size(), confidence);
    const double plo = std::max(1e-9, pref.p - eps);
    const double phi = std::min(1.0 - 1e-9, pref.p + eps);
    return ed.quantile(phi) - ed.quantile(plo);
  }
  if (pref.kind == PreferenceSpec::Kind::expected_utility) {
    long double mean = 0.0L, sq = 0.0L;
    for (double v : ed.values()) {
      const double y = pref.u(v);
      mean += y;
      sq += static_cast<long double>(y) * y;
    }
    const double n = static_cast<double>(ed.size());
    const double m = static_cast<double>(mean) / n;
    const double var = std::max(0.0, static_cast<double>(sq) / n - m * m);
    return 2.5758 * std::sqrt(var / n);
  }
  return 0.0;
}

}  // namespace detail

/// Exhaustive preference maximization over the simplex lattice
/// {w >= 0, ||w|| = total} at the given resolution, common random numbers
/// across lattice points. Ties resolve to the lexicographically smallest
/// weight vector.
inline OptimizeResult optimize_p1(const PreferenceSpec& pref,
                                  const JointSpec& joint, double total,
                                  int resolution, const PenaltySpec& penalty,
                                  const RunConfig& config,
                                  const SampleBank* shared_bank = nullptr,
                                  const std::string& label = "optimize-p1") {
  if (resolution < 2) throw DomainError("optimize_p1: resolution must be >= 2");
  if (!(total > 0.0)) throw DomainError("optimize_p1: total must be positive");
  ensure_preference_applicable(pref, joint);
  const int n = static_cast<int>(joint.margins.size());

  std::optional<SampleBank> own_bank;
  if (shared_bank == nullptr)
    own_bank.emplace(joint, config.samples, config.seed, stream_partition(label),
                     config.threads);
  const SampleBank& bank = shared_bank ? *shared_bank : *own_bank;

  const auto lattice = simplex_lattice(resolution, n);
  OptimizeResult result;
  result.lattice_points = lattice.size();
  result.surface.reserve(lattice.size());

  std::vector<double> best_values;
  for (const auto& point : lattice) {
    std::vector<double> w(point.size());
    for (std::size_t i = 0; i < w.size(); ++i)
      w[i] = total * static_cast<double>(point[i]) / static_cast<double>(resolution);
    const double shift = penalty.g ? penalty.g(w) : 0.0;
    auto values = bank.portfolio_values(w, shift);
    const double rho = evaluate_values(pref, values);
    result.surface.push_back({w, rho});
    bool better = result.argmax.weights.empty() || rho > result.value;
    if (!better && rho == result.value)
      better = std::lexicographical_compare(w.begin(), w.end(),
                                            result.argmax.weights.begin(),
                                            result.argmax.weights.end());
    if (better) {
      result.value = rho;
      result.argmax = WeightVector(w);
      best_values = std::move(values);
    }
  }
  result.distance_to_uniform = detail::distance_to_uniform_ray(
      std::span<const double>(result.argmax.weights));
  result.noise_band =
      detail::preference_noise_band(pref, best_values, config.confidence);
  return result;
}

/// Unconstrained-total variant: runs the constrained search for every total in
/// w_grid on one shared bank and keeps the global best. The per-total argmax
/// is expected on the uniform ray; distances are reported, not asserted.
inline OptimizeResult optimize_p2(const PreferenceSpec& pref,
                                  const JointSpec& joint,
                                  const PenaltySpec& penalty,
                                  const std::vector<double>& w_grid,
                                  int resolution, const RunConfig& config,
                                  const std::string& label = "optimize-p2") {
  if (w_grid.empty()) throw DomainError("optimize_p2: empty total grid");
  ensure_preference_applicable(pref, joint);
  SampleBank bank(joint, config.samples, config.seed, stream_partition(label),
                  config.threads);
  OptimizeResult global;
  bool monotone_growth = true;
  double prev = -std::numeric_limits<double>::infinity();
  for (double total : w_grid) {
    auto res = optimize_p1(pref, joint, total, resolution, penalty, config, &bank);
    if (res.value > global.value || global.argmax.weights.empty()) {
      global.value = res.value;
      global.argmax = res.argmax;
      global.noise_band = res.noise_band;
      global.distance_to_uniform = res.distance_to_uniform;
    }
    if (!(res.value > prev)) monotone_growth = false;
    prev = res.value;
    global.lattice_points += res.lattice_points;
    global.per_total.emplace_back(total, std::move(res));
  }
  if (penalty.name == "none" && monotone_growth && w_grid.size() > 1)
    global.degenerate_penalty_warning = true;
  return global;
}

}  // namespace heavytail

#endif
