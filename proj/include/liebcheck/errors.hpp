#pragma once

#include <stdexcept>
#include <string>

namespace liebcheck {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input matrix is not self-adjoint within the ingestion tolerance.
class NotHermitian : public Error {
 public:
  using Error::Error;
};

/// The Hermitian eigen-solver reported a failure.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

/// A scalar function was applied outside its domain, or a matrix that must be
/// positive definite is not.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exponential argument exceeds the overflow guard.
class Overflow : public Error {
 public:
  using Error::Error;
};

/// An optimizer run ended without meeting its gradient tolerance.
class NotConverged : public Error {
 public:
  using Error::Error;
};

class DimMismatch : public Error {
 public:
  using Error::Error;
};

/// Matrix or report file could not be parsed.
class ParseError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace liebcheck
