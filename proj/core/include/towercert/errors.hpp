#pragma once

#include <stdexcept>
#include <string>

namespace towercert {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or mathematically invalid user input.
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed (Weil bound, non-integral L-coefficient, ...).
/// Always indicates a bug or corrupted input data, never a legitimate verdict.
class InconsistencyError : public Error {
 public:
  using Error::Error;
};

/// A p-adic computation cannot be decided at the available precision.
class PrecisionError : public Error {
 public:
  using Error::Error;
};

/// The hypotheses of a criterion are not met (e.g. positive rank).
class InapplicableError : public Error {
 public:
  using Error::Error;
};

/// Writes a single warning line to the diagnostic stream.
void log_warning(const std::string& message);

}  // namespace towercert
