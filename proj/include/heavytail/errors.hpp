#ifndef HEAVYTAIL_ERRORS_HPP
#define HEAVYTAIL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace heavytail {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An argument outside the mathematical domain of an operation.
struct DomainError : Error {
  using Error::Error;
};

// Vector lengths do not match.
struct DimensionError : Error {
  using Error::Error;
};

// A majorization precondition does not hold.
struct OrderError : Error {
  using Error::Error;
};

// A scenario or preference specification violates one of its invariants.
struct SpecError : Error {
  using Error::Error;
};

// An enumeration or lattice exceeded its configured budget.
struct BudgetError : Error {
  using Error::Error;
};

// Bad run configuration (CLI flags, config file, unsupported combination).
struct ConfigError : Error {
  using Error::Error;
};

}  // namespace heavytail

#endif
