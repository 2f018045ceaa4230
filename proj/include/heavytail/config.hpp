#ifndef HEAVYTAIL_CONFIG_HPP
#define HEAVYTAIL_CONFIG_HPP

#include <cstdint>
#include <string>

#include "heavytail/dominance.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

inline const char* version() {
#ifdef HEAVYTAIL_VERSION
  return HEAVYTAIL_VERSION;
#else
  return "0.1.0";
#endif
}

enum class OutputFormat { csv, json_lines };

/// Shared run configuration for statistical commands and catalog entries.
struct RunConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 1'000'000;
  double confidence = 0.99;
  GridSpec grid;
  std::string output_dir = "out";
  OutputFormat format = OutputFormat::csv;
  int threads = 1;

  void validate_statistical() const {
    if (samples < 1000)
      throw ConfigError("statistical commands require samples >= 1e3");
    if (!(confidence > 0.5 && confidence < 1.0))
      throw ConfigError("confidence must lie in (0.5, 1)");
    if (grid.points < 2) throw ConfigError("grid needs at least 2 points");
  }
};

/// FNV-1a of a label; used to carve disjoint stream partitions out of the
/// 64-bit stream-id space per catalog entry / purpose.
inline std::uint64_t stream_partition(const std::string& label) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace heavytail

#endif
