#pragma once

#include <stdexcept>
#include <string>

namespace eqlab {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An input violates an operation's precondition (bad dimensions, prices
/// outside the open orthant, mismatched path endpoints, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A computation failed numerically: overflow, singular systems, solver
/// non-convergence, degenerate equilibria.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Reading or writing an external file failed, or the file is malformed.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace eqlab
