#pragma once

#include <stdexcept>
#include <string>

namespace chevgrade {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad input to a constructor (e.g. an inadmissible family/rank pair).
class ConstructionError : public Error {
 public:
  using Error::Error;
};

/// An argument has the wrong shape, dimension or is not a member of the
/// expected set (non-root, basis mismatch, wrong tensor axes, ...).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

/// A documented precondition does not hold. The message carries a witness.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Exact arithmetic hit a vanishing denominator.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Floating-point evaluation at a pole, critical point or singular Jacobian.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

/// A consistency check that should be impossible to fail did fail.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace chevgrade
