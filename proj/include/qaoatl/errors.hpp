#pragma once

#include <stdexcept>
#include <string>

namespace qaoatl {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A value lies outside its documented domain (unsupported size, negative
/// shots, angle vector of the wrong sign structure, ...).
class RangeError : public Error {
 public:
  using Error::Error;
};

/// Two containers that must agree in shape do not (vector lengths, matrix
/// dimensions, gamma/beta length mismatch, ...).
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// A configuration object is incomplete or inconsistent (missing penalty
/// coefficient, nonpositive budget, bad mode string, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// The request is well-formed but exceeds a hard resource cap (too many
/// qubits for dense simulation or exhaustive enumeration).
class ResourceError : public Error {
 public:
  using Error::Error;
};

/// A numeric routine produced a non-finite value or failed to converge.
class NumericError : public Error {
 public:
  using Error::Error;
};

/// Externally supplied data violates its contract (non-monotone schedule
/// table, malformed CSV row, ...).
class InputError : public Error {
 public:
  using Error::Error;
};

/// A file could not be read or written.
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace qaoatl
