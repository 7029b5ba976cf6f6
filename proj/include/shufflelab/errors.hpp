#pragma once

#include <stdexcept>
#include <string>

namespace shufflelab {

/// Bad arguments or violated preconditions. The CLI maps this to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact computation would exceed its enumeration budget (CLI exit code 3).
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace shufflelab
