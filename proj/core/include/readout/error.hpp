#pragma once

#include <stdexcept>
#include <string>

namespace readout {

// Violated precondition on a model parameter (rate, level, delta, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Exhaustive enumeration would exceed the configured sequence budget.
class BudgetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation produced or would produce a non-finite / underflowed value.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace readout
