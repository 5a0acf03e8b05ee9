#pragma once

#include <stdexcept>
#include <string>

namespace ltlsps {

/// Syntax error with source position and the token set that would have been
/// accepted at that point.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& message, int line, int column,
             std::string expected = {})
      : std::runtime_error(std::to_string(line) + ":" +
                           std::to_string(column) + ": " + message +
                           (expected.empty() ? "" : " (expected " + expected + ")")),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  int line() const { return line_; }
  int column() const { return column_; }
  const std::string& expected() const { return expected_; }

private:
  int line_;
  int column_;
  std::string expected_;
};

}  // namespace ltlsps
