#ifndef HEAVYTAIL_DOMINANCE_HPP
#define HEAVYTAIL_DOMINANCE_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "heavytail/empirical.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

/// Evaluation grid: log-spaced between the pooled 1st and 99.99th percentiles
/// (heavy tails make linear grids useless), optionally clipped to a region.
struct GridSpec {
  std::size_t points = 512;
  double lo_percentile = 0.01;
  double hi_percentile = 0.9999;
  std::optional<std::pair<double, double>> region;
};

inline std::vector<double> build_grid(const GridSpec& spec,
                                      const EmpiricalDistribution& a,
                                      const EmpiricalDistribution& b) {
  double lo = std::min(a.quantile(spec.lo_percentile), b.quantile(spec.lo_percentile));
  double hi = std::max(a.quantile(spec.hi_percentile), b.quantile(spec.hi_percentile));
  if (lo <= 0.0) {
    // log spacing needs a positive anchor; fall back to the smallest positive value
    const double pa = a.min_positive(), pb = b.min_positive();
    double candidate = 0.0;
    if (pa > 0.0 && pb > 0.0) candidate = std::min(pa, pb);
    else candidate = std::max(pa, pb);
    lo = candidate > 0.0 ? candidate : 1e-12;
  }
  if (spec.region) {
    // open interval: keep grid strictly inside
    lo = std::max(lo, spec.region->first * (1.0 + 1e-9));
    hi = std::min(hi, spec.region->second * (1.0 - 1e-9));
  }
  if (!(hi > lo)) return {lo};
  const std::size_t m = std::max<std::size_t>(spec.points, 2);
  std::vector<double> grid(m);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < m; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(m - 1);
    grid[i] = std::exp(llo + t * (lhi - llo));
  }
  return grid;
}

enum class Relation {
  fsd_consistent,
  fsd_violated,
  ssd_consistent,
  ssd_violated,
  inconclusive
};

inline const char* to_string(Relation r) {
  switch (r) {
    case Relation::fsd_consistent: return "fsd-consistent";
    case Relation::fsd_violated: return "fsd-violated";
    case Relation::ssd_consistent: return "ssd-consistent";
    case Relation::ssd_violated: return "ssd-violated";
    default: return "inconclusive";
  }
}

/// Outcome of a dominance comparison over a grid.
///
/// For FSD, margins are survival(high) - survival(low) per grid point and the
/// band is the constant two-sample DKW allowance; a violation needs a margin
/// below -band somewhere. For SSD, margins compare accumulated CDFs and the
/// per-point allowance grows with the integrated span (see bands).
struct DominanceVerdict {
  Relation relation = Relation::inconclusive;
  std::vector<double> grid;
  std::vector<double> margins;
  std::vector<double> bands;
  double band = 0.0;        // eps_low + eps_high
  double strictness = 0.0;  // minimal observed margin
  std::size_t n_low = 0;
  std::size_t n_high = 0;
  double confidence = 0.0;
};

/// Tests whether `high` is consistent with first-order dominance over `low`.
///
/// Survival comparison is the primitive: consistent iff
/// survival(high, x) >= survival(low, x) - band at every grid point, with
/// band = eps(low) + eps(high) from the DKW inequality. The two branches are
/// exhaustive, so the verdict is never inconclusive; the minimal margin is
/// reported separately as the (non-certifiable) strictness gap.
inline DominanceVerdict empirical_fsd_test(const EmpiricalDistribution& low,
                                           const EmpiricalDistribution& high,
                                           const GridSpec& grid_spec,
                                           double confidence) {
  DominanceVerdict v;
  v.n_low = low.size();
  v.n_high = high.size();
  v.confidence = confidence;
  v.band = dkw_epsilon(low.size(), confidence) + dkw_epsilon(high.size(), confidence);
  v.grid = build_grid(grid_spec, low, high);
  v.margins.reserve(v.grid.size());
  double min_margin = std::numeric_limits<double>::infinity();
  bool violated = false;
  for (double x : v.grid) {
    const double m = high.survival(x) - low.survival(x);
    v.margins.push_back(m);
    min_margin = std::min(min_margin, m);
    if (m < -v.band) violated = true;
  }
  v.bands.assign(v.grid.size(), v.band);
  v.strictness = min_margin;
  v.relation = violated ? Relation::fsd_violated : Relation::fsd_consistent;
  return v;
}

/// Second-order test via accumulated CDFs: `high` dominates iff
/// integral of F_low up to x stays >= integral of F_high, within a band that
/// scales with the accumulated grid span.
inline DominanceVerdict empirical_ssd_test(const EmpiricalDistribution& low,
                                           const EmpiricalDistribution& high,
                                           const GridSpec& grid_spec,
                                           double confidence = 0.99) {
  for (double v : {low.min(), low.max(), high.min(), high.max()})
    if (!std::isfinite(v)) throw DomainError("empirical_ssd_test: non-finite sample");

  DominanceVerdict v;
  v.n_low = low.size();
  v.n_high = high.size();
  v.confidence = confidence;
  const double eps = dkw_epsilon(low.size(), confidence) +
                     dkw_epsilon(high.size(), confidence);
  v.band = eps;
  v.grid = build_grid(grid_spec, low, high);
  const std::size_t m = v.grid.size();
  v.margins.resize(m);
  v.bands.resize(m);
  double acc_low = 0.0, acc_high = 0.0;
  double f_low_prev = low.cdf(v.grid.front()), f_high_prev = high.cdf(v.grid.front());
  v.margins[0] = 0.0;
  v.bands[0] = 0.0;
  bool violated = false;
  double min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < m; ++i) {
    const double dx = v.grid[i] - v.grid[i - 1];
    const double f_low = low.cdf(v.grid[i]);
    const double f_high = high.cdf(v.grid[i]);
    acc_low += 0.5 * (f_low_prev + f_low) * dx;
    acc_high += 0.5 * (f_high_prev + f_high) * dx;
    f_low_prev = f_low;
    f_high_prev = f_high;
    v.margins[i] = acc_low - acc_high;
    v.bands[i] = eps * (v.grid[i] - v.grid.front());
    min_margin = std::min(min_margin, v.margins[i] - (-v.bands[i]));
    if (v.margins[i] < -v.bands[i]) violated = true;
  }
  v.strictness = min_margin;
  v.relation = violated ? Relation::ssd_violated : Relation::ssd_consistent;
  return v;
}

/// Intervals on which the CDF difference F_a - F_b flips sign with both ends
/// beyond the DKW band.
inline std::vector<std::pair<double, double>> crossing_detect(
    const EmpiricalDistribution& a, const EmpiricalDistribution& b,
    const GridSpec& grid_spec, double confidence = 0.99) {
  const double band = dkw_epsilon(a.size(), confidence) +
                      dkw_epsilon(b.size(), confidence);
  const auto grid = build_grid(grid_spec, a, b);
  std::vector<std::pair<double, double>> intervals;
  int last_sign = 0;
  double last_x = 0.0;
  for (double x : grid) {
    const double d = a.cdf(x) - b.cdf(x);
    int sign = 0;
    if (d > band) sign = 1;
    else if (d < -band) sign = -1;
    if (sign != 0) {
      if (last_sign != 0 && sign != last_sign) intervals.emplace_back(last_x, x);
      last_sign = sign;
      last_x = x;
    }
  }
  return intervals;
}

/// Left-continuous empirical quantiles along a probability grid.
inline std::vector<double> quantile_curve(const EmpiricalDistribution& sample,
                                          const std::vector<double>& p_grid) {
  std::vector<double> out;
  out.reserve(p_grid.size());
  for (double p : p_grid) out.push_back(sample.quantile(p));
  return out;
}

}  // namespace heavytail

#endif
