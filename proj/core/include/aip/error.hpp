#pragma once

#include <stdexcept>
#include <string>

namespace aip {

// Base class for every domain error raised by the library. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by the text-format readers. Line and column are 1-based; column 0
// means "whole line".
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line, int column)
      : Error(Format(message, line, column)),
        line_(line),
        column_(column) {}

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  static std::string Format(const std::string& message, int line, int column) {
    std::string out = "line " + std::to_string(line);
    if (column > 0) out += ", column " + std::to_string(column);
    return out + ": " + message;
  }

  int line_;
  int column_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace aip
