#pragma once

#include <stdexcept>
#include <string>

namespace qlat {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A documented precondition of an operation does not hold (bad shape,
/// wrong rank, degenerate input, ...). The CLI maps this to exit code 2.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// An enumeration would exceed its configured size guard.
class GuardExceeded : public Error {
 public:
  using Error::Error;
};

/// A search for an object that the mathematics promises came back empty.
class NotFound : public Error {
 public:
  using Error::Error;
};

/// An internal consistency check failed; the computed object contradicts a
/// property that must hold (e.g. a uniqueness count different from one).
class InvariantViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace qlat
