#pragma once

#include <stdexcept>
#include <string>

namespace itespec {

// Input outside the mathematical domain of an operation (negative order,
// non-positive argument, gamma == 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A documented precondition on a numerical input does not hold, e.g. a
// point handed to a classifier is not a root.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An iterative procedure failed to reach its acceptance criterion.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace itespec
