#ifndef HEAVYTAIL_RANDOM_HPP
#define HEAVYTAIL_RANDOM_HPP

#include <cmath>
#include <cstdint>
#include <limits>

#include "heavytail/errors.hpp"

namespace heavytail {

inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

/// Deterministic random stream: xoshiro256++ keyed by (seed, stream_id).
///
/// Streams with distinct ids are independent for practical purposes, so
/// parallel work is partitioned by assigning disjoint stream ids. The
/// sequence depends only on (seed, stream_id), never on thread layout.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::uint64_t mix = seed;
    (void)splitmix64_next(mix);
    mix ^= 0xD2B74407B1CE6E93ull * (stream_id + 1);
    for (auto& word : state_) word = splitmix64_next(mix);
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform01() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1); never returns an exact endpoint.
  double uniform_open01() {
    return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  bool bernoulli(double p) { return uniform01() < p; }

  /// Standard normal via Box-Muller (cosine branch only, two uniforms per draw).
  double normal() {
    const double u1 = uniform_open01();
    const double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  double exponential() { return -std::log(uniform_open01()); }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }
  std::uint64_t state_[4];
};

/// Gamma(shape, 1) sampler.
///
/// shape >= 1 uses Marsaglia-Tsang squeeze rejection. shape < 1 boosts to
/// shape+1 and multiplies by U^(1/shape), which stays accurate at the very
/// small shapes that extremely heavy-tailed models need.
inline double gamma_sample(RandomStream& stream, double shape) {
  if (!(shape > 0.0)) throw DomainError("gamma_sample: shape must be > 0");
  if (shape < 1.0) {
    const double boosted = gamma_sample(stream, shape + 1.0);
    return boosted * std::pow(stream.uniform_open01(), 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = stream.normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = stream.uniform_open01();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

}  // namespace heavytail

#endif
