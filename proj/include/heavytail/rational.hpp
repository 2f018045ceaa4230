#ifndef HEAVYTAIL_RATIONAL_HPP
#define HEAVYTAIL_RATIONAL_HPP

#include <sstream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "heavytail/errors.hpp"

namespace heavytail {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", "p" or a plain decimal like "0.25" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ConfigError("empty rational literal");
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const BigInt num(text.substr(0, slash));
      const BigInt den(text.substr(slash + 1));
      if (den == 0) throw ConfigError("rational with zero denominator: " + text);
      return Rational(num, den);
    }
    const auto dot = text.find('.');
    if (dot == std::string::npos) return Rational(BigInt(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    const std::size_t frac_len = text.size() - dot - 1;
    BigInt den = 1;
    for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
    return Rational(BigInt(digits), den);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse rational literal '" + text + "'");
  }
}

/// Reduced fraction "p/q" (or "p" for integers).
inline std::string to_fraction_string(const Rational& r) {
  std::ostringstream out;
  if (denominator(r) == 1) out << numerator(r);
  else out << numerator(r) << "/" << denominator(r);
  return out.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace heavytail

#endif
