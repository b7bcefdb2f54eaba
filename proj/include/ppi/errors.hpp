#pragma once

#include <stdexcept>
#include <string>

namespace ppi {

// Domain-level precondition failure: the inputs are well formed but do not
// admit the requested operation (infeasible triple, a power that is not a
// partial isometry, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A tolerance-governed integrity check failed after the computation ran.
// The message carries the violated condition and its residual.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ppi
