#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace liftratio {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingVariable : public Error {
 public:
  explicit MissingVariable(std::string var)
      : Error("missing value for variable '" + var + "'"), var_(std::move(var)) {}
  const std::string& variable() const noexcept { return var_; }

 private:
  std::string var_;
};

class NotDivisible : public Error {
 public:
  NotDivisible() : Error("polynomial division is not exact") {}
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class IndexOutOfRange : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input. `line` is 1-based, 0 when not line-oriented.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : Error(line == 0 ? reason : "line " + std::to_string(line) + ": " + reason), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

class MissingVoltage : public ParseError {
 public:
  MissingVoltage(std::size_t line, const std::string& edge)
      : ParseError(line, "edge " + edge + " has no voltage but a fold is declared") {}
};

class BadPermutation : public ParseError {
 public:
  using ParseError::ParseError;
};

class BaseHasNoArborescence : public Error {
 public:
  explicit BaseHasNoArborescence(const std::string& root)
      : Error("base graph has no arborescence rooted at '" + root + "'") {}
};

class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::string required, std::uint64_t budget)
      : Error("enumeration needs " + required + " evaluations, budget is " + std::to_string(budget)),
        required_(std::move(required)),
        budget_(budget) {}
  const std::string& required() const noexcept { return required_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::string required_;
  std::uint64_t budget_;
};

}  // namespace liftratio
