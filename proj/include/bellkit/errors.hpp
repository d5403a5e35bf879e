#pragma once

#include <stdexcept>
#include <string>

namespace bellkit {

// Bad input: malformed distributions, out-of-range parameters, broken schemas.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Arithmetic breakdown: rational overflow, non-converging pivots, lost precision.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace bellkit
