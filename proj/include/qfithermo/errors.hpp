#pragma once

#include <stdexcept>
#include <string>

namespace qfithermo {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input rejected before any computation: bad shape, broken normalization,
/// out-of-range physical parameter, malformed configuration.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// A numerical guard tripped: solver non-convergence, a violated invariant,
/// or a failed self-audit.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Fock-space truncation is no longer faithful (population reached the cutoff).
class TruncationError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

}  // namespace qfithermo
