#ifndef HEAVYTAIL_STPETERSBURG_HPP
#define HEAVYTAIL_STPETERSBURG_HPP

#include <cstdint>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "heavytail/errors.hpp"
#include "heavytail/rational.hpp"

namespace heavytail {

/// Exact probability mass of a weighted sum of independent St. Petersburg
/// lotteries, enumerated below a cutoff. Atom values are sums of w_i 2^k, so
/// the support is dyadic in each weight; probabilities have power-of-two
/// denominators. The mass at or beyond the cutoff is folded into tail_cut,
/// and atoms + tail_cut == 1 exactly.
struct DyadicPMF {
  std::map<Rational, Rational> atoms;
  Rational tail_cut = 0;
  Rational cutoff = 0;
  bool strict = true;  // atoms hold values v with v < cutoff (else v <= cutoff)

  Rational atom_mass() const {
    Rational s = 0;
    for (const auto& [value, mass] : atoms) s += mass;
    return s;
  }
  Rational total() const { return atom_mass() + tail_cut; }
};

inline constexpr std::uint64_t kDefaultStpNodeBudget = 100'000'000;

namespace detail {

struct StpEnumerator {
  const std::vector<Rational>& weights;
  Rational cutoff;
  bool strict;
  std::uint64_t budget;
  std::uint64_t nodes = 0;
  DyadicPMF pmf;
  // min_rest[i] = sum_{j >= i} 2 w_j, the smallest reachable remaining sum.
  std::vector<Rational> min_rest;

  StpEnumerator(const std::vector<Rational>& w, Rational x, bool strict_,
                std::uint64_t budget_)
      : weights(w), cutoff(std::move(x)), strict(strict_), budget(budget_) {
    min_rest.assign(weights.size() + 1, Rational(0));
    for (std::size_t i = weights.size(); i-- > 0;)
      min_rest[i] = min_rest[i + 1] + 2 * weights[i];
    pmf.cutoff = cutoff;
    pmf.strict = strict;
  }

  bool passes(const Rational& value) const {
    return strict ? value < cutoff : value <= cutoff;
  }

  void run() {
    recurse(0, Rational(0), Rational(1));
  }

  // Levels k are explored in increasing order; once the smallest completion of
  // a branch reaches the cutoff, every higher level does too, and the whole
  // geometric remainder 2^(1-k) goes to the tail.
  void recurse(std::size_t i, const Rational& prefix_sum, const Rational& prob) {
    if (i == weights.size()) {
      pmf.atoms[prefix_sum] += prob;
      return;
    }
    Rational level_value = weights[i];  // w_i 2^k, starting at k = 1
    Rational level_prob(1, 2);
    for (int k = 1;; ++k) {
      level_value *= 2;
      if (++nodes > budget) {
        std::ostringstream msg;
        msg << "St. Petersburg enumeration exceeded " << budget
            << " nodes; accumulated lower bound P = "
            << to_fraction_string(pmf.atom_mass());
        throw BudgetError(msg.str());
      }
      if (passes(prefix_sum + level_value + min_rest[i + 1])) {
        recurse(i + 1, prefix_sum + level_value, prob * level_prob);
      } else {
        // remaining mass of this geometric level and all deeper ones
        pmf.tail_cut += prob * 2 * level_prob;
        break;
      }
      level_prob /= 2;
    }
  }
};

}  // namespace detail

/// Exact PMF of sum_i w_i X_i below cutoff x, X_i iid St. Petersburg.
inline DyadicPMF stp_sum_pmf(const std::vector<Rational>& weights,
                             const Rational& x, bool strict,
                             std::uint64_t node_budget = kDefaultStpNodeBudget) {
  if (weights.empty()) throw DomainError("stp_sum_pmf: no weights");
  for (const auto& w : weights)
    if (w <= 0) throw DomainError("stp_sum_pmf: weights must be positive");
  if (x <= 0) throw DomainError("stp_sum_pmf: cutoff must be positive");
  detail::StpEnumerator e(weights, x, strict, node_budget);
  e.run();
  return std::move(e.pmf);
}

/// P(sum_i w_i X_i < x), or <= x with the strict flag off, as an exact rational.
inline Rational stp_sum_cdf_exact(const std::vector<Rational>& weights,
                                  const Rational& x, bool strict = true,
                                  std::uint64_t node_budget = kDefaultStpNodeBudget) {
  return stp_sum_pmf(weights, x, strict, node_budget).atom_mass();
}

/// Per-point exact CDFs of the equally weighted k-lottery and l-lottery
/// portfolios. When l/k is a power of two the l-portfolio dominates, so its
/// CDF never exceeds the k-portfolio's.
inline std::vector<std::pair<Rational, Rational>> stp_dominance_pair(
    std::size_t k, std::size_t l, const std::vector<Rational>& x_grid,
    bool strict = true, std::uint64_t node_budget = kDefaultStpNodeBudget) {
  if (k < 1 || l < 1) throw DomainError("stp_dominance_pair: k, l must be >= 1");
  const std::vector<Rational> wk(k, Rational(1, static_cast<unsigned>(k)));
  const std::vector<Rational> wl(l, Rational(1, static_cast<unsigned>(l)));
  std::vector<std::pair<Rational, Rational>> out;
  out.reserve(x_grid.size());
  for (const auto& x : x_grid) {
    out.emplace_back(stp_sum_cdf_exact(wk, x, strict, node_budget),
                     stp_sum_cdf_exact(wl, x, strict, node_budget));
  }
  return out;
}

}  // namespace heavytail

#endif
