#pragma once

#include <stdexcept>
#include <string>

namespace rydberg {

// Invalid input: bad schema, out-of-range parameters, inconsistent geometry.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The numerics could not produce a trustworthy answer (integration drift,
// no bracketing sign change, closed-form pole).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rydberg
