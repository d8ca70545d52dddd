#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prn {

// Root of every error this library throws on bad input or failed
// preconditions. Internal logic errors still use the standard assert.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Construction and validation.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ProbabilitySumError : public Error {
 public:
  using Error::Error;
};

class ZeroProbabilityError : public Error {
 public:
  using Error::Error;
};

class PartialFunctionError : public Error {
 public:
  using Error::Error;
};

class UnknownState : public Error {
 public:
  using Error::Error;
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

// Matrix and chain analysis.
class OrderMismatch : public Error {
 public:
  using Error::Error;
};

class MultipleRecurrentClasses : public Error {
 public:
  using Error::Error;
};

class NoConvergence : public Error {
 public:
  using Error::Error;
};

// Morphisms.
class NotHomomorphism : public Error {
 public:
  using Error::Error;
};

class NotEndomorphism : public Error {
 public:
  using Error::Error;
};

class SpaceMismatch : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

// Network algebra.
class CombinerNotStochastic : public Error {
 public:
  using Error::Error;
};

class NotInvariant : public Error {
 public:
  using Error::Error;
};

class CapExceeded : public Error {
 public:
  using Error::Error;
};

// Linear networks.
class FieldMismatch : public Error {
 public:
  using Error::Error;
};

// Text formats. Position is 1-based; column 0 means "whole line".
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
      : Error(locate(what, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string locate(const std::string& what, std::size_t line, std::size_t column) {
    if (line == 0) return what;
    std::string s = "line " + std::to_string(line);
    if (column > 0) s += ", column " + std::to_string(column);
    return s + ": " + what;
  }

  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

}  // namespace prn
