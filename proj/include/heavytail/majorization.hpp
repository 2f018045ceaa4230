#ifndef HEAVYTAIL_MAJORIZATION_HPP
#define HEAVYTAIL_MAJORIZATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "heavytail/errors.hpp"
#include "heavytail/random.hpp"

namespace heavytail {

/// Non-negative exposure vector. Entries are plain doubles; the majorization
/// algebra below treats them as exact up to the stated tolerances.
struct WeightVector {
  std::vector<double> weights;

  WeightVector() = default;
  explicit WeightVector(std::vector<double> w) : weights(std::move(w)) {
    for (double x : weights)
      if (!(x >= 0.0)) throw DomainError("WeightVector: entries must be >= 0");
  }
  WeightVector(std::initializer_list<double> w)
      : WeightVector(std::vector<double>(w)) {}

  std::size_t size() const { return weights.size(); }
  double operator[](std::size_t i) const { return weights[i]; }

  double total() const {
    return std::accumulate(weights.begin(), weights.end(), 0.0);
  }

  /// Increasing rearrangement (stable, so ties keep original index order).
  std::vector<double> ascending() const {
    std::vector<double> s(weights);
    std::stable_sort(s.begin(), s.end());
    return s;
  }

  std::vector<double> descending() const {
    std::vector<double> s(weights);
    std::stable_sort(s.begin(), s.end(), std::greater<>());
    return s;
  }

  /// Parses a comma-separated decimal list, e.g. "0.5,0.3,0.2".
  static WeightVector parse(const std::string& text) {
    std::vector<double> w;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty()) throw ConfigError("weight list has an empty entry");
      std::size_t pos = 0;
      double v = std::stod(item, &pos);
      if (pos != item.size())
        throw ConfigError("cannot parse weight entry '" + item + "'");
      w.push_back(v);
    }
    if (w.empty()) throw ConfigError("empty weight list");
    return WeightVector(std::move(w));
  }
};

/// Two-coordinate averaging step: (v_i, v_j) -> (l v_i + (1-l) v_j,
/// (1-l) v_i + l v_j). Preserves the total exactly up to rounding.
struct TTransform {
  std::size_t i = 0;
  std::size_t j = 1;
  double lambda = 1.0;

  TTransform() = default;
  TTransform(std::size_t i_, std::size_t j_, double lambda_)
      : i(i_), j(j_), lambda(lambda_) {
    if (i == j) throw DomainError("TTransform: indices must differ");
    if (!(lambda >= 0.0 && lambda <= 1.0))
      throw DomainError("TTransform: lambda must be in [0,1]");
  }

  void apply(std::vector<double>& v) const {
    const double a = v.at(i), b = v.at(j);
    v[i] = lambda * a + (1.0 - lambda) * b;
    v[j] = (1.0 - lambda) * a + lambda * b;
  }
};

enum class MajorizationOrder {
  dominates_strict,    // theta strictly below eta in majorization order
  dominates,           // theta below eta (possibly equal as multisets)
  not_dominating,
  incomparable_totals  // totals differ beyond relative 1e-12
};

/// Does eta majorize theta (theta "more diversified" than eta)?
///
/// True iff totals agree to relative 1e-12 and the ascending partial sums of
/// theta dominate those of eta. A vector pair failing the total check is
/// reported as incomparable rather than silently renormalized.
inline MajorizationOrder majorizes(const WeightVector& eta,
                                   const WeightVector& theta) {
  if (eta.size() != theta.size())
    throw DimensionError("majorizes: vectors have different lengths");
  const std::size_t n = eta.size();
  const double te = eta.total(), tt = theta.total();
  const double scale = std::max({1.0, std::fabs(te), std::fabs(tt)});
  if (std::fabs(te - tt) > 1e-12 * scale)
    return MajorizationOrder::incomparable_totals;

  const auto e = eta.ascending();
  const auto t = theta.ascending();
  const double slack = 1e-12 * scale;
  double pe = 0.0, pt = 0.0;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    pe += e[k];
    pt += t[k];
    if (pt < pe - slack) return MajorizationOrder::not_dominating;
  }
  bool equal = true;
  for (std::size_t k = 0; k < n; ++k)
    if (std::fabs(e[k] - t[k]) > slack) { equal = false; break; }
  return equal ? MajorizationOrder::dominates
               : MajorizationOrder::dominates_strict;
}

inline bool majorizes_weakly(const WeightVector& eta, const WeightVector& theta) {
  const auto r = majorizes(eta, theta);
  return r == MajorizationOrder::dominates ||
         r == MajorizationOrder::dominates_strict;
}

/// Human-readable reason why eta does not majorize theta (totals, or the first
/// partial-sum index k where the order fails).
inline std::string explain_majorization_failure(const WeightVector& eta,
                                                const WeightVector& theta) {
  if (eta.size() != theta.size()) return "vectors have different lengths";
  const double te = eta.total(), tt = theta.total();
  const double scale = std::max({1.0, std::fabs(te), std::fabs(tt)});
  if (std::fabs(te - tt) > 1e-12 * scale) {
    std::ostringstream msg;
    msg << "totals differ (" << te << " vs " << tt << ")";
    return msg.str();
  }
  const auto e = eta.ascending();
  const auto t = theta.ascending();
  double pe = 0.0, pt = 0.0;
  for (std::size_t k = 0; k + 1 < e.size(); ++k) {
    pe += e[k];
    pt += t[k];
    if (pt < pe - 1e-12 * scale) {
      std::ostringstream msg;
      msg << "sorted partial sum of theta falls below eta's at index k=" << k + 1
          << " (" << pt << " < " << pe << ")";
      return msg.str();
    }
  }
  return "order holds";
}

/// Constructive chain of at most n-1 T-transforms carrying eta to theta.
///
/// The transforms apply to the DESCENDING rearrangement of eta; replaying them
/// reproduces theta's multiset to within 1e-10 per coordinate. Each step fixes
/// at least one coordinate of the sorted target, and every intermediate vector
/// is majorized by its predecessor.
inline std::vector<TTransform> t_transform_chain(const WeightVector& eta,
                                                 const WeightVector& theta) {
  if (!majorizes_weakly(eta, theta))
    throw OrderError("t_transform_chain: eta must majorize theta");
  const std::size_t n = eta.size();
  std::vector<double> a = eta.descending();
  const std::vector<double> b = theta.descending();
  const double scale = std::max(1.0, std::fabs(eta.total()));
  const double tol = 1e-13 * scale;

  std::vector<TTransform> chain;
  for (std::size_t step = 0; step + 1 < n; ++step) {
    // j: largest index with a_j > b_j;  k: smallest index > j with a_k < b_k.
    std::size_t j = n;
    for (std::size_t idx = n; idx-- > 0;) {
      if (a[idx] > b[idx] + tol) { j = idx; break; }
    }
    if (j == n) break;  // converged
    std::size_t k = n;
    for (std::size_t idx = j + 1; idx < n; ++idx) {
      if (a[idx] < b[idx] - tol) { k = idx; break; }
    }
    if (k == n)
      throw Error("t_transform_chain: internal inconsistency in sorted targets");
    const double delta = std::min(a[j] - b[j], b[k] - a[k]);
    const double lambda = 1.0 - delta / (a[j] - a[k]);
    TTransform t(j, k, lambda);
    t.apply(a);
    chain.push_back(t);
  }
  return chain;
}

/// Replays a chain from eta (descending order) and returns the end vector.
inline std::vector<double> replay_chain(const WeightVector& eta,
                                        const std::vector<TTransform>& chain) {
  std::vector<double> v = eta.descending();
  for (const auto& t : chain) t.apply(v);
  return v;
}

/// Simplex draw of eta plus 1..n-1 random strict T-transforms giving theta,
/// so theta is strictly majorized by eta with total 1.
inline std::pair<WeightVector, WeightVector> random_majorizing_pair(
    std::size_t n, RandomStream& stream) {
  if (n < 2) throw DomainError("random_majorizing_pair: need n >= 2");
  std::vector<double> eta(n);
  double total = 0.0;
  for (auto& x : eta) {
    x = stream.exponential();
    total += x;
  }
  for (auto& x : eta) x /= total;

  std::vector<double> theta(eta);
  const std::size_t steps =
      1 + static_cast<std::size_t>(stream.uniform01() * static_cast<double>(n - 1));
  std::size_t applied = 0;
  while (applied < steps) {
    const auto i = static_cast<std::size_t>(stream.uniform01() * static_cast<double>(n)) % n;
    const auto j = static_cast<std::size_t>(stream.uniform01() * static_cast<double>(n)) % n;
    if (i == j || theta[i] == theta[j]) continue;
    TTransform(i, j, stream.uniform(0.1, 0.9)).apply(theta);
    ++applied;
  }
  return {WeightVector(std::move(eta)), WeightVector(std::move(theta))};
}

}  // namespace heavytail

#endif
