#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cheb1 {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two entries of a vector tie for the maximal absolute value.
class AlternanceTie : public Error {
 public:
  using Error::Error;
};

/// Operand sizes are incompatible.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The matrix has a row or column with tied maxima, so the alternating
/// minimization iteration is not well defined on it.
class NotPC : public Error {
 public:
  using Error::Error;
};

/// A vector that must have all components nonzero has a zero component.
class NotChebyshev : public Error {
 public:
  using Error::Error;
};

/// Requested enumeration or search exceeds the configured size limit.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// A sign pattern does not match the variable set of a DNF.
class VariableMismatch : public Error {
 public:
  using Error::Error;
};

/// Malformed input text; carries a 1-based line and column when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(what + (line ? " (line " + std::to_string(line) +
                                 (column ? ", column " + std::to_string(column) : "") + ")"
                           : "")),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Matrix shape outside the supported domain (both sizes must be >= 2).
class ShapeError : public Error {
 public:
  using Error::Error;
};

/// A numeric value is NaN, infinite, or otherwise out of domain.
class ValueError : public Error {
 public:
  using Error::Error;
};

}  // namespace cheb1
