#pragma once

#include <stdexcept>
#include <string>

namespace cylwig {

// Every validation failure raised by the library derives from Error, so callers
// (the CLI in particular) can map the whole family to one exit status.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// Raised when an operation needs K(sigma, l) != 0 and the kernel vanishes.
class NonInvertibleKernelError : public Error {
 public:
  using Error::Error;
};

// Raised when the Fock-space embedding condition fails for the kernel.
class AdmissibilityError : public Error {
 public:
  using Error::Error;
};

// Raised when computed data breaks an invariant it is guaranteed to satisfy
// for valid input (unit trace, positivity, Hermiticity...).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace cylwig
