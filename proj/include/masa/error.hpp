#pragma once

#include <stdexcept>
#include <string>

namespace masa {

/// Malformed or inconsistent input: bad spec strings, tables that are not
/// groups, relations on mismatched ground sets, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The request is well-formed but exceeds an exhaustive-search bound.
class UnsupportedSize : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A floating-point routine could not reach a decision at the configured
/// tolerance (rank gap too small, eigenvalue clusters collide).
class ToleranceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace masa
