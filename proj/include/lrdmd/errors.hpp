#pragma once

#include <stdexcept>
#include <string>

namespace lrdmd {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (files, shapes, parameters).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical guard tripped: rank guard, divergence, non-finite data.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Requested rank exceeds what the data supports.
class RankGuardError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace lrdmd
