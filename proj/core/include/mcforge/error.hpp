#pragma once

#include <stdexcept>
#include <string>

namespace mcforge {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Division by zero, or by a multiple of the characteristic in char-p mode.
class ArithmeticError : public Error {
 public:
  using Error::Error;
};

/// Malformed input: dimension mismatches, bad indices, broken invariants.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An enumeration or truncation budget was exhausted.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// A lower central or coradical series failed to terminate.
class NotNilpotent : public Error {
 public:
  using Error::Error;
};

}  // namespace mcforge
