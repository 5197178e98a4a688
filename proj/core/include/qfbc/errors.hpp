#pragma once

#include <stdexcept>

namespace qfbc {

/// Raised for out-of-range widths, round counts, keys or inputs.
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when a superposition interface is used on a classical-only oracle.
class ModeViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an exhaustive search would exceed the configured bit budget.
class ResourceGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qfbc
