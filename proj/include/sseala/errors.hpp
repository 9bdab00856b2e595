#pragma once

#include <stdexcept>
#include <string>

namespace sseala {

// Malformed or inconsistent input (bad shapes, non-skew matrices, mixed contexts).
struct ArgumentError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold for the given data.
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The requested element or operation does not exist in the chosen algebra.
struct UnsupportedOperation : std::logic_error {
  using std::logic_error::logic_error;
};

// A construction failed its own consistency check.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace sseala
