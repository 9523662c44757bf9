#pragma once

#include <stdexcept>
#include <string>

namespace xxz {

// Precondition violations raised by the library. The CLI maps every one of
// these to exit code 2.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class RangeError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DomainError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class InconsistentQuery : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// Path enumeration would exceed the configured cap; use a closed form.
class CapExceeded : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

class DivisionByZero : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Raised when an exact polynomial division leaves a remainder.
class InexactDivision : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace xxz
