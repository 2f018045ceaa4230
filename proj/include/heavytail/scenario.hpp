#ifndef HEAVYTAIL_SCENARIO_HPP
#define HEAVYTAIL_SCENARIO_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "heavytail/config.hpp"
#include "heavytail/distributions.hpp"
#include "heavytail/dominance.hpp"
#include "heavytail/empirical.hpp"
#include "heavytail/errors.hpp"
#include "heavytail/majorization.hpp"
#include "heavytail/parallel.hpp"

namespace heavytail {

// ---------------------------------------------------------------------------
// Joint component law

enum class Dependence { iid, common_shock, comonotone, mixture };

/// How the portfolio components hang together. For common_shock the rows are
/// ((Zi+Z)/Z) or ((Zi/Z)^gamma) vectors; for mixture each row picks one of
/// {iid, comonotone, clayton-via-common-shock} with the given weights.
struct DependenceSpec {
  Dependence kind = Dependence::iid;
  double shock_alpha = 1.0;
  double shock_beta = 1.0;
  double shock_gamma = 1.0;
  std::array<double, 3> mixture_weights{1.0, 0.0, 0.0};  // iid, comonotone, clayton

  static DependenceSpec iid() { return {}; }
  static DependenceSpec comonotone() {
    DependenceSpec d;
    d.kind = Dependence::comonotone;
    return d;
  }
  static DependenceSpec common_shock(double alpha, double beta = 1.0,
                                     double gamma = 1.0) {
    DependenceSpec d;
    d.kind = Dependence::common_shock;
    d.shock_alpha = alpha;
    d.shock_beta = beta;
    d.shock_gamma = gamma;
    return d;
  }
  static DependenceSpec mixture(double w_iid, double w_como, double w_clayton) {
    DependenceSpec d;
    d.kind = Dependence::mixture;
    d.mixture_weights = {w_iid, w_como, w_clayton};
    return d;
  }
};

/// Couplings for trigger events with one common marginal probability p.
enum class TriggerCoupling {
  independent_events,
  same_event,
  disjoint_events,   // requires n p <= 1
  custom_threshold   // rotated common-uniform thresholds
};

inline const char* to_string(TriggerCoupling c) {
  switch (c) {
    case TriggerCoupling::independent_events: return "independent-events";
    case TriggerCoupling::same_event: return "same-event";
    case TriggerCoupling::disjoint_events: return "disjoint-events";
    default: return "custom-threshold";
  }
}

/// Declarative description of the joint law of the portfolio components.
struct JointSpec {
  std::vector<MarginSpec> margins;
  DependenceSpec dependence;
  MarginTransform transform;
  TriggerCoupling coupling = TriggerCoupling::independent_events;
};

/// Full comparison scenario: joint law + weight pair (low = eta, high = theta)
/// + optional x-region. weights_high must be majorized by weights_low.
struct ScenarioSpec {
  JointSpec joint;
  WeightVector weights_low;   // eta: less diversified
  WeightVector weights_high;  // theta: more diversified
  std::optional<std::pair<double, double>> region;
  bool anti_sorted_pairing = false;  // pair descending weights to heavier tails
  bool allow_finite_mean = false;    // finite-mean probes only
};

namespace detail {

inline bool margin_infinite_mean(const MarginSpec& m) {
  return std::visit(
      [](const auto& s) -> bool {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, ParetoSpec>) return s.alpha <= 1.0;
        else if constexpr (std::is_same_v<T, GPDSpec>) return s.xi >= 1.0;
        else if constexpr (std::is_same_v<T, FellerParetoSpec>)
          return s.alpha <= s.gamma;
        else if constexpr (std::is_same_v<T, StPetersburgSpec>) return true;
        else {
          for (double a : s.alphas)
            if (a > 1.0) return false;
          return true;
        }
      },
      m);
}

inline double margin_sort_key(const MarginSpec& m) {
  if (const auto* p = std::get_if<ParetoSpec>(&m)) return p->alpha;
  return 0.0;  // non-Pareto margins must be identical, key unused
}

inline bool margins_identical(const std::vector<MarginSpec>& margins) {
  // value comparison through the variant; good enough for our plain structs
  const auto eq = [](const MarginSpec& a, const MarginSpec& b) {
    if (a.index() != b.index()) return false;
    if (const auto* pa = std::get_if<ParetoSpec>(&a))
      return pa->alpha == std::get<ParetoSpec>(b).alpha &&
             pa->scale == std::get<ParetoSpec>(b).scale;
    if (const auto* ga = std::get_if<GPDSpec>(&a))
      return ga->xi == std::get<GPDSpec>(b).xi &&
             ga->beta == std::get<GPDSpec>(b).beta;
    if (const auto* fa = std::get_if<FellerParetoSpec>(&a)) {
      const auto& fb = std::get<FellerParetoSpec>(b);
      return fa->alpha == fb.alpha && fa->beta == fb.beta && fa->gamma == fb.gamma;
    }
    if (std::holds_alternative<StPetersburgSpec>(a)) return true;
    return std::get<ParetoSumSpec>(a).lambdas == std::get<ParetoSumSpec>(b).lambdas &&
           std::get<ParetoSumSpec>(a).alphas == std::get<ParetoSumSpec>(b).alphas;
  };
  for (std::size_t i = 1; i < margins.size(); ++i)
    if (!eq(margins[0], margins[i])) return false;
  return true;
}

}  // namespace detail

/// b = ||eta|| / eta_(1) and the valid region (||eta||, (c/b)||eta||) for the
/// bounded-cap scenario.
inline std::pair<double, double> bounded_cap_region(const WeightVector& eta,
                                                    double cap) {
  const auto asc = eta.ascending();
  const double min_w = asc.front();
  if (!(min_w > 0.0))
    throw SpecError(
        "bounded-cap scenario requires every eta weight strictly positive "
        "(b = ||eta||/eta_(1) must be finite)");
  const double total = eta.total();
  const double b = total / min_w;
  if (!(cap > b))
    throw SpecError("bounded-cap scenario requires cap c > b = ||eta||/eta_(1)");
  return {total, (cap / b) * total};
}

/// Paired portfolio sampler: each draw builds one component row and returns
/// (eta-weighted, theta-weighted) values from the SAME draws, so the two arms
/// are common-random-number coupled.
class PairedSampler {
 public:
  explicit PairedSampler(ScenarioSpec spec) : spec_(std::move(spec)) {
    validate();
    const std::size_t n = spec_.joint.margins.size();
    // Theorem-style pairing: sort margins by tail weight (alpha ascending) and
    // pair ascending weights with them; anti-sorted pairing reverses the
    // weights to probe the opposite convention.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return detail::margin_sort_key(spec_.joint.margins[a]) <
             detail::margin_sort_key(spec_.joint.margins[b]);
    });
    margins_.reserve(n);
    for (std::size_t i : order) margins_.push_back(spec_.joint.margins[i]);
    w_low_ = spec_.weights_low.ascending();
    w_high_ = spec_.weights_high.ascending();
    if (spec_.anti_sorted_pairing) {
      std::reverse(w_low_.begin(), w_low_.end());
      std::reverse(w_high_.begin(), w_high_.end());
    }
  }

  std::size_t dimension() const { return margins_.size(); }
  const ScenarioSpec& spec() const { return spec_; }

  /// One paired draw (low, high).
  std::pair<double, double> draw_pair(RandomStream& stream) const {
    thread_local std::vector<double> row;
    row.resize(margins_.size());
    draw_row(stream, row);
    double low = 0.0, high = 0.0;
    for (std::size_t i = 0; i < row.size(); ++i) {
      low += w_low_[i] * row[i];
      high += w_high_[i] * row[i];
    }
    return {low, high};
  }

  /// One row of transformed component values.
  void draw_row(RandomStream& stream, std::span<double> out) const {
    const std::size_t n = margins_.size();
    switch (spec_.joint.dependence.kind) {
      case Dependence::iid:
        for (std::size_t i = 0; i < n; ++i)
          out[i] = base_draw(margins_[i], stream);
        break;
      case Dependence::comonotone: {
        const double u = stream.uniform_open01();
        for (std::size_t i = 0; i < n; ++i)
          out[i] = margin_quantile(margins_[i], u);
        break;
      }
      case Dependence::common_shock:
        draw_shock_row(stream, out);
        break;
      case Dependence::mixture: {
        const auto& mw = spec_.joint.dependence.mixture_weights;
        const double u = stream.uniform01();
        if (u < mw[0]) {
          for (std::size_t i = 0; i < n; ++i)
            out[i] = base_draw(margins_[i], stream);
        } else if (u < mw[0] + mw[1]) {
          const double v = stream.uniform_open01();
          for (std::size_t i = 0; i < n; ++i)
            out[i] = margin_quantile(margins_[i], v);
        } else {
          draw_clayton_row(stream, out);
        }
        break;
      }
    }
    apply_pointwise_transform(out);
    if (spec_.joint.transform.kind == MarginTransform::Kind::trigger)
      apply_trigger(stream, out);
  }

  /// Samples both arms with deterministic block partitioning.
  void sample_arms(const RunConfig& config, std::uint64_t stream_base,
                   std::vector<double>& low, std::vector<double>& high) const {
    const std::size_t n = config.samples;
    if (n > kMaxSamplesPerArm)
      throw BudgetError("sample_arms: samples exceed the 1e8 per-arm cap");
    low.resize(n);
    high.resize(n);
    for_each_block(n, config.seed, stream_base, config.threads,
                   [&](std::size_t, std::size_t first, std::size_t last,
                       RandomStream& stream) {
                     for (std::size_t i = first; i < last; ++i) {
                       const auto [lo, hi] = draw_pair(stream);
                       low[i] = lo;
                       high[i] = hi;
                     }
                   });
  }

 private:
  void validate() const {
    const auto& s = spec_;
    const std::size_t n = s.joint.margins.size();
    if (n < 2) throw SpecError("scenario needs at least 2 components");
    if (s.weights_low.size() != n || s.weights_high.size() != n)
      throw DimensionError("scenario: weight vectors must match the margin count");
    if (!majorizes_weakly(s.weights_low, s.weights_high))
      throw SpecError(
          "scenario requires theta (weights_high) majorized by eta (weights_low): "
          "equal totals and dominating sorted partial sums");
    if (!s.allow_finite_mean) {
      for (const auto& m : s.joint.margins)
        if (!detail::margin_infinite_mean(m))
          throw SpecError(
              "margins must be extremely heavy-tailed (infinite mean); "
              "finite-mean margins are only valid in the explicit finite-mean probes");
    }
    const bool identical = detail::margins_identical(s.joint.margins);
    if (!identical) {
      for (const auto& m : s.joint.margins)
        if (!std::holds_alternative<ParetoSpec>(m))
          throw SpecError("non-identical margins are supported for Pareto components only");
    }
    if (s.joint.dependence.kind == Dependence::mixture) {
      const auto& mw = s.joint.dependence.mixture_weights;
      double total = 0.0;
      for (double w : mw) {
        if (!(w >= 0.0)) throw SpecError("mixture weights must be non-negative");
        total += w;
      }
      if (std::fabs(total - 1.0) > 1e-12)
        throw SpecError("mixture weights must sum to 1");
      if (!identical || !std::holds_alternative<ParetoSpec>(s.joint.margins[0]))
        throw SpecError("mixture dependence requires identical Pareto margins");
    }
    if (s.joint.dependence.kind == Dependence::common_shock &&
        !(s.joint.dependence.shock_alpha > 0.0 && s.joint.dependence.shock_beta > 0.0 &&
          s.joint.dependence.shock_gamma > 0.0))
      throw SpecError("common-shock parameters must be positive");
    if (s.joint.transform.kind == MarginTransform::Kind::trigger &&
        s.joint.coupling == TriggerCoupling::disjoint_events &&
        static_cast<double>(n) * s.joint.transform.p > 1.0)
      throw SpecError("disjoint trigger events need n * p <= 1");
    if (s.joint.transform.kind == MarginTransform::Kind::cap) {
      const auto valid = bounded_cap_region(s.weights_low, s.joint.transform.c);
      if (s.region) {
        if (s.region->first < valid.first - 1e-12 ||
            s.region->second > valid.second + 1e-12)
          throw SpecError(
              "bounded-cap region must lie inside (||eta||, (c/b)||eta||)");
      }
    }
  }

  double base_draw(const MarginSpec& m, RandomStream& stream) const {
    // tail-beyond replaces the margin law; other transforms apply afterwards
    if (spec_.joint.transform.kind == MarginTransform::Kind::tail_beyond)
      return transformed_draw(m, spec_.joint.transform, stream);
    return margin_draw(m, stream);
  }

  void draw_shock_row(RandomStream& stream, std::span<double> out) const {
    const auto& dep = spec_.joint.dependence;
    const double shock = gamma_sample(stream, dep.shock_alpha);
    const bool mp_form = (dep.shock_beta == 1.0 && dep.shock_gamma == 1.0);
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double zi = gamma_sample(stream, dep.shock_beta);
      out[i] = mp_form ? (zi + shock) / shock
                       : std::pow(zi / shock, dep.shock_gamma);
    }
  }

  // Clayton-coupled Pareto(alpha) row via the common-shock representation.
  void draw_clayton_row(RandomStream& stream, std::span<double> out) const {
    const double alpha = std::get<ParetoSpec>(margins_[0]).alpha;
    const double shock = gamma_sample(stream, alpha);
    for (std::size_t i = 0; i < out.size(); ++i)
      out[i] = (stream.exponential() + shock) / shock;
  }

  void apply_pointwise_transform(std::span<double> row) const {
    const auto& t = spec_.joint.transform;
    switch (t.kind) {
      case MarginTransform::Kind::cap:
        for (auto& x : row) x = std::min(x, t.c);
        break;
      case MarginTransform::Kind::floor_max:
        for (auto& x : row) x = std::max(x, t.c);
        break;
      case MarginTransform::Kind::excess:
        for (auto& x : row) x = std::max(x - t.c, 0.0);
        break;
      default:
        break;  // identity / tail_beyond / trigger handled elsewhere
    }
  }

  void apply_trigger(RandomStream& stream, std::span<double> row) const {
    const double p = spec_.joint.transform.p;
    const std::size_t n = row.size();
    switch (spec_.joint.coupling) {
      case TriggerCoupling::independent_events:
        for (auto& x : row)
          if (!stream.bernoulli(p)) x = 0.0;
        break;
      case TriggerCoupling::same_event: {
        if (!stream.bernoulli(p))
          for (auto& x : row) x = 0.0;
        break;
      }
      case TriggerCoupling::disjoint_events: {
        const double u = stream.uniform01();
        for (std::size_t i = 0; i < n; ++i) {
          const bool hit = u >= static_cast<double>(i) * p &&
                           u < static_cast<double>(i + 1) * p;
          if (!hit) row[i] = 0.0;
        }
        break;
      }
      case TriggerCoupling::custom_threshold: {
        // one shared uniform, rotated per component: equal marginals, exotic joint
        const double u = stream.uniform01();
        for (std::size_t i = 0; i < n; ++i) {
          double v = u + static_cast<double>(i) / static_cast<double>(n + 1);
          v -= std::floor(v);
          if (!(v < p)) row[i] = 0.0;
        }
        break;
      }
    }
  }

  ScenarioSpec spec_;
  std::vector<MarginSpec> margins_;  // sorted ascending by tail parameter
  std::vector<double> w_low_, w_high_;
};

inline PairedSampler build(ScenarioSpec spec) { return PairedSampler(std::move(spec)); }

}  // namespace heavytail

#endif
