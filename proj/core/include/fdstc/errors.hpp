#pragma once

#include <stdexcept>

namespace fdstc {

// Bad input: shapes, names, parameters, inadmissible invariants.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Computation failed numerically: rank deficiency, singular systems.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace fdstc
