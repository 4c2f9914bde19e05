#pragma once

#include <stdexcept>
#include <string>

namespace boolpres {

// Malformed text input. The CLI maps this to exit code 2.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An operation was called outside its precondition (unknown index,
// mismatched presentations, size caps, ...). The CLI maps this to exit code 1.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A relation set derives x_j >= x_i for i < j or some x_k _|_ x_k.
struct InconsistentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace boolpres
