#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dialectic {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed formula or knowledge-base text. line/column are 1-based.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Semantic errors in a knowledge base: duplicate labels, priority cycles,
// references to unknown labels.
class KbError : public Error {
 public:
  using Error::Error;
};

class UnknownLabel : public Error {
 public:
  explicit UnknownLabel(const std::string& label) : Error("unknown label '" + label + "'") {}
};

// A configured search budget ran out. Never accompanied by a partial answer.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

struct Limits {
  std::uint64_t max_subsets = 1'000'000;    // candidate label sets examined per support query
  std::uint64_t max_sat_calls = 1'000'000;  // solver invocations per support query
  std::uint64_t max_conflicts = 1'000'000;  // conflicts per solver invocation
};

}  // namespace dialectic
