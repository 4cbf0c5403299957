#pragma once

#include <stdexcept>
#include <string>

namespace qnls {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Inadmissible input: bad grid, parameter set, gauge or precondition.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// NaN/Inf or other breakdown detected during a computation.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An iterative solve ended without meeting its convergence criteria.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Checkpoint or config file could not be read or has the wrong layout.
class FormatError : public Error {
 public:
  using Error::Error;
};

}  // namespace qnls
