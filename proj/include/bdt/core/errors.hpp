#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bdt {

/// Base of every error thrown by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RegistryMismatch : public Error {
 public:
  RegistryMismatch() : Error("operands belong to different variable registries") {}
};

class BlockMismatch : public Error {
 public:
  BlockMismatch() : Error("operators act on different variable blocks") {}
};

class DivisionByZero : public Error {
 public:
  explicit DivisionByZero(const std::string& what) : Error(what) {}
};

/// Raised when input data is rejected before any computation (bad tables,
/// degenerate dressing data, inconsistent kernels, ...).
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(what) {}
};

/// Ore division was asked to pivot on a letter the divisor cannot use.
class UnsupportedDivisor : public Error {
 public:
  explicit UnsupportedDivisor(const std::string& what) : Error(what) {}
};

class ResourceLimitExceeded : public Error {
 public:
  explicit ResourceLimitExceeded(const std::string& what) : Error(what) {}
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
              message),
        message_(message),
        line_(line),
        column_(column) {}

  const std::string& message() const noexcept { return message_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string message_;
  std::size_t line_;
  std::size_t column_;
};

}  // namespace bdt
