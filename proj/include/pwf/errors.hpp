#pragma once

#include <stdexcept>
#include <string>

namespace pwf {

/// Input violates an operation precondition (bad grid, wrong space, cap exceeded).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A numerical invariant that should hold to rounding failed to hold.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File could not be opened, read, or parsed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {
inline void require(bool cond, const std::string& what) {
  if (!cond) throw ValidationError(what);
}
}  // namespace detail

}  // namespace pwf
