#pragma once

#include <stdexcept>
#include <string>

namespace crnosc {

/// Malformed network text. Line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) +
                           ": " + message),
        line_(line),
        column_(column),
        message_(message) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::string& message() const { return message_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::string message_;
};

/// An operation was called on input outside its domain (wrong shape, rank, ...).
/// `code` is a short machine-readable tag such as "SourcesCollinear".
class PreconditionError : public std::runtime_error {
 public:
  PreconditionError(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

}  // namespace crnosc
