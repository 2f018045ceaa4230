#ifndef HEAVYTAIL_REPORT_HPP
#define HEAVYTAIL_REPORT_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "heavytail/config.hpp"
#include "heavytail/dominance.hpp"
#include "heavytail/errors.hpp"

namespace heavytail {

/// Shortest round-trippable decimal form; keeps emitted files bit-identical
/// across runs and thread counts.
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline void ensure_dir(const std::string& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
}

/// Versioned key=value verdict document. Every document embeds the tool
/// version, the resolved config, the seed, and the catalog anchor id.
inline void write_verdict_document(const std::string& path,
                                   const std::string& anchor,
                                   const DominanceVerdict& verdict,
                                   const RunConfig& config,
                                   const std::string& extra = "") {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "heavytail-verdict v1\n";
  out << "version=" << version() << "\n";
  out << "anchor=" << anchor << "\n";
  out << "seed=" << config.seed << "\n";
  out << "samples=" << config.samples << "\n";
  out << "confidence=" << format_double(config.confidence) << "\n";
  out << "grid_points=" << config.grid.points << "\n";
  out << "threads=" << config.threads << "\n";
  out << "relation=" << to_string(verdict.relation) << "\n";
  out << "n_low=" << verdict.n_low << "\n";
  out << "n_high=" << verdict.n_high << "\n";
  out << "band=" << format_double(verdict.band) << "\n";
  out << "min_margin=" << format_double(verdict.strictness) << "\n";
  if (!extra.empty()) out << extra;
  out << "grid_size=" << verdict.grid.size() << "\n";
  for (std::size_t i = 0; i < verdict.grid.size(); ++i) {
    out << "margin[" << i << "]=" << format_double(verdict.grid[i]) << ","
        << format_double(verdict.margins[i]) << "\n";
  }
}

inline void write_verdict_jsonl(const std::string& path,
                                const std::string& anchor,
                                const DominanceVerdict& verdict,
                                const RunConfig& config) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  nlohmann::json head{{"record", "heavytail-verdict"},
                      {"schema", 1},
                      {"version", version()},
                      {"anchor", anchor},
                      {"seed", config.seed},
                      {"samples", config.samples},
                      {"confidence", config.confidence},
                      {"relation", to_string(verdict.relation)},
                      {"band", verdict.band},
                      {"min_margin", verdict.strictness}};
  out << head.dump() << "\n";
  for (std::size_t i = 0; i < verdict.grid.size(); ++i) {
    nlohmann::json row{{"record", "margin"},
                       {"x", verdict.grid[i]},
                       {"margin", verdict.margins[i]},
                       {"band", verdict.bands[i]}};
    out << row.dump() << "\n";
  }
}

/// Survival curves for both arms: x, surv_low, surv_high, margin, band.
inline void write_curves_csv(const std::string& path,
                             const DominanceVerdict& verdict,
                             const EmpiricalDistribution& low,
                             const EmpiricalDistribution& high) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "x,survival_low,survival_high,margin,band\n";
  for (std::size_t i = 0; i < verdict.grid.size(); ++i) {
    const double x = verdict.grid[i];
    out << format_double(x) << "," << format_double(low.survival(x)) << ","
        << format_double(high.survival(x)) << ","
        << format_double(verdict.margins[i]) << ","
        << format_double(verdict.bands[i]) << "\n";
  }
}

/// Empirical CDF curves (FIG1-style): x, cdf_low, cdf_high.
inline void write_cdf_csv(const std::string& path,
                          const std::vector<double>& grid,
                          const EmpiricalDistribution& low,
                          const EmpiricalDistribution& high) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  out << "x,cdf_low,cdf_high\n";
  for (double x : grid) {
    out << format_double(x) << "," << format_double(low.cdf(x)) << ","
        << format_double(high.cdf(x)) << "\n";
  }
}

}  // namespace heavytail

#endif
