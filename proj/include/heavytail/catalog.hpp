#ifndef HEAVYTAIL_CATALOG_HPP
#define HEAVYTAIL_CATALOG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "heavytail/dominance.hpp"
#include "heavytail/report.hpp"
#include "heavytail/scenario.hpp"

namespace heavytail {

enum class ExpectedOutcome {
  fsd_consistent,
  ssd_consistent,
  crossing_detected,
  ordering_violation,  // the reversed-pairing probe: violation should be visible
  quantile_monotone
};

inline const char* to_string(ExpectedOutcome e) {
  switch (e) {
    case ExpectedOutcome::fsd_consistent: return "fsd-consistent";
    case ExpectedOutcome::ssd_consistent: return "ssd-consistent";
    case ExpectedOutcome::crossing_detected: return "crossing-detected";
    case ExpectedOutcome::ordering_violation: return "ordering-violation";
    default: return "quantile-monotone";
  }
}

/// Optional per-run overrides for parameterizable entries.
struct CatalogParams {
  std::optional<double> alpha;
  std::optional<int> n;
};

struct CatalogEntry {
  std::string id;
  std::string description;
  ExpectedOutcome expected;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"T1-iid", "iid Pareto components, diversified vs concentrated weights",
       ExpectedOutcome::fsd_consistent},
      {"T1-sorted",
       "independent Pareto components with distinct tails, sorted weight pairing",
       ExpectedOutcome::fsd_consistent},
      {"FIG1-reversed",
       "distinct tails with the pairing reversed; dominance should visibly fail",
       ExpectedOutcome::ordering_violation},
      {"T2-trigger",
       "Pareto outcomes switched by equal-probability trigger events, four couplings",
       ExpectedOutcome::fsd_consistent},
      {"P4-tail", "components Pareto only beyond a threshold c, region x > c||theta||",
       ExpectedOutcome::fsd_consistent},
      {"C2-floor", "components floored at c (max(X, c))", ExpectedOutcome::fsd_consistent},
      {"C2-excess", "excess-of-loss components ((X - c)+)", ExpectedOutcome::fsd_consistent},
      {"P5-excess-nonid",
       "excess components with distinct tails and sorted pairing, x > 0",
       ExpectedOutcome::fsd_consistent},
      {"P6-bounded", "capped components (min(X, c)) on the valid x-region",
       ExpectedOutcome::fsd_consistent},
      {"T3-clayton", "common-shock multivariate Pareto (Clayton survival copula)",
       ExpectedOutcome::fsd_consistent},
      {"TA1-mfp", "common-shock multivariate Feller-Pareto margins",
       ExpectedOutcome::fsd_consistent},
      {"MIX", "mixture of independence, comonotonicity and Clayton coupling",
       ExpectedOutcome::fsd_consistent},
      {"P1-finite", "finite-mean components: CDFs of the two portfolios must cross",
       ExpectedOutcome::crossing_detected},
      {"P2-ssd", "finite-mean components: diversification wins in second order",
       ExpectedOutcome::ssd_consistent},
      {"R2-paretosum", "components are finite weighted sums of heavy Pareto terms",
       ExpectedOutcome::fsd_consistent},
      {"FIG2", "equally weighted portfolios of growing size: quantile curves rise in n",
       ExpectedOutcome::quantile_monotone},
      {"GPD", "generalized Pareto components, checked directly and via the Pareto map",
       ExpectedOutcome::fsd_consistent},
  };
  return entries;
}

inline const CatalogEntry* find_catalog_entry(const std::string& id) {
  for (const auto& e : catalog())
    if (e.id == id) return &e;
  return nullptr;
}

// ---------------------------------------------------------------------------
// Scenario builders per entry

namespace builders {

inline WeightVector concentrated(std::size_t n, double total = 1.0) {
  std::vector<double> w(n, 0.0);
  w[0] = total;
  return WeightVector(std::move(w));
}

inline WeightVector uniform_weights(std::size_t n, double total = 1.0) {
  return WeightVector(std::vector<double>(n, total / static_cast<double>(n)));
}

inline std::vector<MarginSpec> pareto_margins(double alpha, std::size_t n) {
  return std::vector<MarginSpec>(n, ParetoSpec(alpha));
}

// strictly positive eta/theta pair used where zero weights are excluded
inline std::pair<WeightVector, WeightVector> positive_pair(std::size_t n) {
  std::vector<double> eta(n), theta(n);
  // eta: geometric-ish decay, theta: one averaging step toward uniform
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    eta[i] = static_cast<double>(n - i);
    total += eta[i];
  }
  for (auto& x : eta) x /= total;
  const double u = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) theta[i] = 0.5 * eta[i] + 0.5 * u;
  return {WeightVector(std::move(eta)), WeightVector(std::move(theta))};
}

struct NamedScenario {
  std::string name;
  ScenarioSpec spec;
};

inline std::vector<NamedScenario> make(const std::string& id,
                                       const CatalogParams& params) {
  const double alpha = params.alpha.value_or(0.5);
  const std::size_t n = static_cast<std::size_t>(params.n.value_or(3));

  auto single = [](ScenarioSpec s) {
    return std::vector<NamedScenario>{{"", std::move(s)}};
  };

  if (id == "T1-iid") {
    ScenarioSpec s;
    s.joint.margins = pareto_margins(alpha, n);
    s.weights_low = concentrated(n);
    s.weights_high = uniform_weights(n);
    return single(std::move(s));
  }
  if (id == "T1-sorted") {
    ScenarioSpec s;
    s.joint.margins = {ParetoSpec(0.3), ParetoSpec(0.6), ParetoSpec(1.0)};
    s.weights_low = WeightVector{0.5, 0.3, 0.2};
    s.weights_high = WeightVector{0.4, 0.3, 0.3};
    return single(std::move(s));
  }
  if (id == "FIG1-reversed") {
    std::vector<NamedScenario> out;
    const std::vector<std::array<double, 4>> pairs = {{6, 2, 5, 3}, {9, 1, 6, 4}};
    for (const auto& p : pairs) {
      ScenarioSpec s;
      s.joint.margins = {ParetoSpec(0.15), ParetoSpec(0.75)};
      s.weights_low = WeightVector{p[0], p[1]};
      s.weights_high = WeightVector{p[2], p[3]};
      s.anti_sorted_pairing = true;
      std::ostringstream name;
      name << "pair-" << p[0] << "," << p[1] << "-vs-" << p[2] << "," << p[3];
      out.push_back({name.str(), std::move(s)});
    }
    return out;
  }
  if (id == "T2-trigger") {
    std::vector<NamedScenario> out;
    for (auto coupling :
         {TriggerCoupling::same_event, TriggerCoupling::disjoint_events,
          TriggerCoupling::independent_events, TriggerCoupling::custom_threshold}) {
      ScenarioSpec s;
      s.joint.margins = pareto_margins(alpha, n);
      s.joint.transform = MarginTransform::trigger(0.1);
      s.joint.coupling = coupling;
      auto [eta, theta] = positive_pair(n);  // zero weights stay out of trigger runs
      s.weights_low = std::move(eta);
      s.weights_high = std::move(theta);
      out.push_back({to_string(coupling), std::move(s)});
    }
    return out;
  }
  if (id == "P4-tail") {
    ScenarioSpec s;
    const double c = 2.0;
    s.joint.margins = pareto_margins(alpha, 2);
    s.joint.transform = MarginTransform::tail_beyond(c);
    s.weights_low = WeightVector{0.7, 0.3};
    s.weights_high = WeightVector{0.5, 0.5};
    s.region = {{c * s.weights_high.total(), std::numeric_limits<double>::infinity()}};
    return single(std::move(s));
  }
  if (id == "C2-floor" || id == "C2-excess") {
    ScenarioSpec s;
    s.joint.margins = pareto_margins(alpha, n);
    s.joint.transform = id == "C2-floor" ? MarginTransform::floor_max(2.0)
                                         : MarginTransform::excess(2.0);
    s.weights_low = WeightVector{0.6, 0.3, 0.1};
    s.weights_high = WeightVector{0.4, 0.3, 0.3};
    return single(std::move(s));
  }
  if (id == "P5-excess-nonid") {
    ScenarioSpec s;
    s.joint.margins = {ParetoSpec(0.3), ParetoSpec(0.6), ParetoSpec(1.0)};
    s.joint.transform = MarginTransform::excess(2.0);
    s.weights_low = WeightVector{0.5, 0.3, 0.2};
    s.weights_high = WeightVector{0.4, 0.3, 0.3};
    return single(std::move(s));
  }
  if (id == "P6-bounded") {
    ScenarioSpec s;
    const double c = 10.0;
    s.joint.margins = pareto_margins(alpha, 2);
    s.joint.transform = MarginTransform::cap(c);
    s.weights_low = WeightVector{2.0, 1.0};
    s.weights_high = WeightVector{1.5, 1.5};
    s.region = {bounded_cap_region(s.weights_low, c)};  // (3, 10)
    return single(std::move(s));
  }
  if (id == "T3-clayton") {
    ScenarioSpec s;
    s.joint.margins = pareto_margins(alpha, n);
    s.joint.dependence = DependenceSpec::common_shock(alpha, 1.0, 1.0);
    s.weights_low = WeightVector{0.6, 0.3, 0.1};
    s.weights_high = WeightVector{0.4, 0.3, 0.3};
    return single(std::move(s));
  }
  if (id == "TA1-mfp") {
    ScenarioSpec s;
    const FellerParetoSpec fp(0.5, 2.0, 1.5);
    s.joint.margins = std::vector<MarginSpec>(3, fp);
    s.joint.dependence = DependenceSpec::common_shock(fp.alpha, fp.beta, fp.gamma);
    s.weights_low = WeightVector{0.6, 0.3, 0.1};
    s.weights_high = WeightVector{0.4, 0.3, 0.3};
    return single(std::move(s));
  }
  if (id == "MIX") {
    ScenarioSpec s;
    s.joint.margins = pareto_margins(alpha, n);
    s.joint.dependence = DependenceSpec::mixture(1.0 / 3, 1.0 / 3, 1.0 / 3);
    s.weights_low = WeightVector{0.6, 0.3, 0.1};
    s.weights_high = WeightVector{0.4, 0.3, 0.3};
    return single(std::move(s));
  }
  if (id == "P1-finite" || id == "P2-ssd") {
    ScenarioSpec s;
    s.joint.margins = pareto_margins(params.alpha.value_or(2.0), 2);
    s.weights_low = WeightVector{1.0, 0.0};
    s.weights_high = WeightVector{0.5, 0.5};
    s.allow_finite_mean = true;
    return single(std::move(s));
  }
  if (id == "R2-paretosum") {
    ScenarioSpec s;
    const ParetoSumSpec sum({0.5, 0.3, 0.2}, {0.4, 0.7, 1.0});
    s.joint.margins = {sum, sum};
    s.weights_low = WeightVector{0.8, 0.2};
    s.weights_high = WeightVector{0.5, 0.5};
    return single(std::move(s));
  }
  if (id == "GPD") {
    std::vector<NamedScenario> out;
    const double xi = 1.5, beta = 1.0;
    ScenarioSpec direct;
    direct.joint.margins = std::vector<MarginSpec>(2, GPDSpec(xi, beta));
    direct.weights_low = WeightVector{0.8, 0.2};
    direct.weights_high = WeightVector{0.5, 0.5};
    out.push_back({"gpd-margins", std::move(direct)});
    ScenarioSpec mapped;  // same comparison through the location-scale Pareto map
    mapped.joint.margins = pareto_margins(1.0 / xi, 2);
    mapped.weights_low = WeightVector{0.8, 0.2};
    mapped.weights_high = WeightVector{0.5, 0.5};
    out.push_back({"pareto-mapped", std::move(mapped)});
    return out;
  }
  throw ConfigError("no scenario builder for catalog id '" + id + "'");
}

}  // namespace builders

// ---------------------------------------------------------------------------
// Runners

struct SubRunResult {
  std::string name;
  DominanceVerdict verdict;
  std::vector<std::pair<double, double>> crossings;
  bool pass = false;
  std::string observed;
};

/// Quantile curves for equally weighted portfolios of size 2..6 plus a paired
/// bootstrap band on the consecutive-size gaps.
struct Fig2Result {
  std::vector<double> p_grid;
  std::vector<int> sizes;
  std::vector<std::vector<double>> quantiles;  // [size][p]
  std::vector<std::vector<double>> gaps;       // [size-1][p]: q(n+1) - q(n)
  std::vector<std::vector<double>> bands;      // 99% normal band from bootstrap sd
  bool monotone_beyond_band = false;
};

struct CatalogOutcome {
  std::string id;
  ExpectedOutcome expected;
  bool pass = false;
  std::string observed;
  double min_margin = 0.0;
  std::vector<SubRunResult> runs;
  std::optional<Fig2Result> fig2;
};

inline Fig2Result run_fig2(double alpha, const RunConfig& config,
                           std::vector<double> p_grid = {0.90, 0.92, 0.94, 0.96},
                           std::size_t bootstrap_resamples = 200) {
  constexpr int kMaxSize = 6;
  const std::size_t n_rows = config.samples;
  Fig2Result result;
  result.p_grid = std::move(p_grid);
  for (int n = 2; n <= kMaxSize; ++n) result.sizes.push_back(n);

  // per-row running means over a single shared component matrix (paired draws)
  std::vector<std::vector<double>> curve(result.sizes.size(),
                                         std::vector<double>(n_rows));
  const std::uint64_t base = stream_partition("FIG2");
  for_each_block(n_rows, config.seed, base, config.threads,
                 [&](std::size_t, std::size_t first, std::size_t last,
                     RandomStream& stream) {
                   const ParetoSpec margin(alpha);
                   for (std::size_t r = first; r < last; ++r) {
                     double acc = 0.0;
                     for (int j = 1; j <= kMaxSize; ++j) {
                       acc += pareto_draw(margin, stream);
                       if (j >= 2)
                         curve[static_cast<std::size_t>(j - 2)][r] =
                             acc / static_cast<double>(j);
                     }
                   }
                 });

  for (const auto& values : curve) {
    auto ed = EmpiricalDistribution::from_unsorted(values);
    result.quantiles.push_back(quantile_curve(ed, result.p_grid));
  }

  // paired bootstrap: one index resample shared by all curve sizes
  const std::size_t n_curves = curve.size();
  const std::size_t n_p = result.p_grid.size();
  std::vector<std::vector<std::vector<double>>> boot(
      n_curves, std::vector<std::vector<double>>(n_p));
  RandomStream boot_stream(config.seed, base ^ 0x626f6f74ull);
  std::vector<std::uint32_t> idx(n_rows);
  std::vector<double> gathered(n_rows);
  for (std::size_t b = 0; b < bootstrap_resamples; ++b) {
    for (auto& i : idx)
      i = static_cast<std::uint32_t>(boot_stream.uniform01() *
                                     static_cast<double>(n_rows));
    for (std::size_t c = 0; c < n_curves; ++c) {
      const auto& src = curve[c];
      for (std::size_t r = 0; r < n_rows; ++r) gathered[r] = src[idx[r]];
      for (std::size_t pi = 0; pi < n_p; ++pi) {
        const auto k = static_cast<std::size_t>(
            std::ceil(std::nextafter(result.p_grid[pi] * static_cast<double>(n_rows),
                                     -1.0)));
        auto nth = gathered.begin() + static_cast<std::ptrdiff_t>(k - 1);
        std::nth_element(gathered.begin(), nth, gathered.end());
        boot[c][pi].push_back(*nth);
      }
    }
  }

  result.monotone_beyond_band = true;
  for (std::size_t c = 0; c + 1 < n_curves; ++c) {
    std::vector<double> gap_row(n_p), band_row(n_p);
    for (std::size_t pi = 0; pi < n_p; ++pi) {
      const double gap = result.quantiles[c + 1][pi] - result.quantiles[c][pi];
      double mean = 0.0, var = 0.0;
      const auto& hi = boot[c + 1][pi];
      const auto& lo = boot[c][pi];
      for (std::size_t b = 0; b < hi.size(); ++b) mean += hi[b] - lo[b];
      mean /= static_cast<double>(hi.size());
      for (std::size_t b = 0; b < hi.size(); ++b) {
        const double d = hi[b] - lo[b] - mean;
        var += d * d;
      }
      var /= static_cast<double>(hi.size() - 1);
      const double band = 2.5758 * std::sqrt(var);  // 99% two-sided normal
      gap_row[pi] = gap;
      band_row[pi] = band;
      if (!(gap > band)) result.monotone_beyond_band = false;
    }
    result.gaps.push_back(std::move(gap_row));
    result.bands.push_back(std::move(band_row));
  }
  return result;
}

/// Executes one catalog entry: builds its scenarios, runs the check the claim
/// requires, and (optionally) writes verdict documents and curve CSVs under
/// config.output_dir/<id>/.
inline CatalogOutcome run_catalog_entry(const std::string& id,
                                        const RunConfig& config,
                                        const CatalogParams& params = {},
                                        bool write_artifacts = true) {
  const CatalogEntry* entry = find_catalog_entry(id);
  if (entry == nullptr) throw ConfigError("unknown catalog entry '" + id + "'");
  config.validate_statistical();

  CatalogOutcome outcome;
  outcome.id = id;
  outcome.expected = entry->expected;
  outcome.min_margin = std::numeric_limits<double>::infinity();

  const std::string dir = config.output_dir + "/" + id;
  if (write_artifacts) ensure_dir(dir);

  if (entry->expected == ExpectedOutcome::quantile_monotone) {
    auto fig2 = run_fig2(params.alpha.value_or(0.5), config);
    outcome.pass = fig2.monotone_beyond_band;
    outcome.observed = outcome.pass ? "quantile-monotone" : "quantile-order-broken";
    outcome.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < fig2.gaps.size(); ++c)
      for (std::size_t pi = 0; pi < fig2.gaps[c].size(); ++pi)
        outcome.min_margin =
            std::min(outcome.min_margin, fig2.gaps[c][pi] - fig2.bands[c][pi]);
    if (write_artifacts) {
      std::ofstream csv(dir + "/fig2.csv");
      csv << "p,n,quantile\n";
      for (std::size_t c = 0; c < fig2.sizes.size(); ++c)
        for (std::size_t pi = 0; pi < fig2.p_grid.size(); ++pi)
          csv << format_double(fig2.p_grid[pi]) << "," << fig2.sizes[c] << ","
              << format_double(fig2.quantiles[c][pi]) << "\n";
    }
    outcome.fig2 = std::move(fig2);
    return outcome;
  }

  const auto scenarios = builders::make(id, params);
  for (const auto& named : scenarios) {
    PairedSampler sampler = build(named.spec);
    std::vector<double> low_values, high_values;
    const std::string label = id + (named.name.empty() ? "" : ":" + named.name);
    sampler.sample_arms(config, stream_partition(label), low_values, high_values);
    auto low = EmpiricalDistribution::from_unsorted(std::move(low_values));
    auto high = EmpiricalDistribution::from_unsorted(std::move(high_values));

    GridSpec grid = config.grid;
    grid.region = named.spec.region;

    SubRunResult sub;
    sub.name = named.name;
    switch (entry->expected) {
      case ExpectedOutcome::fsd_consistent: {
        sub.verdict = empirical_fsd_test(low, high, grid, config.confidence);
        sub.pass = sub.verdict.relation == Relation::fsd_consistent;
        sub.observed = to_string(sub.verdict.relation);
        break;
      }
      case ExpectedOutcome::ordering_violation: {
        sub.verdict = empirical_fsd_test(low, high, grid, config.confidence);
        sub.pass = sub.verdict.relation == Relation::fsd_violated;
        sub.observed = sub.pass ? "ordering-violation" : "no-violation-visible";
        break;
      }
      case ExpectedOutcome::ssd_consistent: {
        sub.verdict = empirical_ssd_test(low, high, grid, config.confidence);
        sub.pass = sub.verdict.relation == Relation::ssd_consistent;
        sub.observed = to_string(sub.verdict.relation);
        break;
      }
      case ExpectedOutcome::crossing_detected: {
        sub.verdict = empirical_fsd_test(low, high, grid, config.confidence);
        sub.crossings = crossing_detect(low, high, grid, config.confidence);
        sub.pass = !sub.crossings.empty();
        std::ostringstream obs;
        obs << "crossings=" << sub.crossings.size();
        sub.observed = obs.str();
        break;
      }
      default:
        throw Error("unhandled catalog expectation");
    }
    outcome.min_margin = std::min(outcome.min_margin, sub.verdict.strictness);

    if (write_artifacts) {
      const std::string stem =
          dir + "/" + (named.name.empty() ? "run" : named.name);
      std::ostringstream extra;
      extra << "scenario=" << label << "\n"
            << "expected=" << to_string(entry->expected) << "\n"
            << "observed=" << sub.observed << "\n";
      write_verdict_document(stem + "-verdict.txt", id, sub.verdict, config,
                             extra.str());
      write_curves_csv(stem + "-curves.csv", sub.verdict, low, high);
      if (config.format == OutputFormat::json_lines)
        write_verdict_jsonl(stem + "-verdict.jsonl", id, sub.verdict, config);
      if (entry->expected == ExpectedOutcome::ordering_violation)
        write_cdf_csv(stem + "-cdf.csv", sub.verdict.grid, low, high);
    }
    outcome.runs.push_back(std::move(sub));
  }

  outcome.pass = !outcome.runs.empty();
  for (const auto& r : outcome.runs) outcome.pass = outcome.pass && r.pass;
  if (outcome.observed.empty())
    outcome.observed = outcome.runs.size() == 1 ? outcome.runs.front().observed
                                                : (outcome.pass ? "all-met" : "mixed");
  return outcome;
}

}  // namespace heavytail

#endif
