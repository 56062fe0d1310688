#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace soundsearch {

// A partial operation failed (division by zero, negative exponent). Callers
// inside the evaluator turn this into the error state.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unknown function/predicate symbol, arity mismatch, or a value that does not
// belong to the algebra it is used with.
class SymbolError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Violated precondition of a library call.
class UsageError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// An oracle query would enumerate more assignments than the budget allows.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(format(msg, line, column)), line_(line), column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  static std::string format(const std::string& msg, std::size_t line, std::size_t column) {
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace soundsearch
