#pragma once

#include <stdexcept>
#include <string>

namespace a2fg {

/// Input violates a documented precondition (degenerate configuration,
/// excluded parameter value, malformed file).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A construction failed to re-verify its defining equations. For admissible
/// inputs this cannot happen; seeing it means a bug or a precision problem.
class ConsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A numeric computation could not reach its accuracy target.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace a2fg
