#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace aip::text {

struct Token {
  std::string_view text;
  int column = 0;  // 1-based
};

// One non-blank, non-comment line split on whitespace.
struct Line {
  int number = 0;  // 1-based
  std::vector<Token> tokens;

  const Token& operator[](std::size_t i) const { return tokens[i]; }
  std::size_t size() const { return tokens.size(); }
};

// Splits text into lines, drops `#` comments and blank lines.
std::vector<Line> Tokenize(std::string_view text);

// Cursor over a line's tokens that raises ParseError with positions.
class LineReader {
 public:
  explicit LineReader(const Line& line, std::size_t start = 0)
      : line_(line), pos_(start) {}

  bool done() const { return pos_ >= line_.size(); }
  const Token& Peek() const;
  std::string_view Word();
  void Expect(std::string_view keyword);
  bool Accept(std::string_view keyword);
  double Double();
  float Float();
  std::int64_t Int();
  std::uint64_t UInt64();
  void ExpectEnd() const;
  [[noreturn]] void Fail(const std::string& message) const;
  [[noreturn]] void FailAt(const Token& token,
                           const std::string& message) const;

 private:
  const Line& line_;
  std::size_t pos_;
};

std::optional<double> ParseDouble(std::string_view s);
std::optional<std::int64_t> ParseInt(std::string_view s);
std::optional<std::uint64_t> ParseUInt64(std::string_view s);

// Shortest representation that round-trips exactly.
std::string FormatDouble(double value);
std::string FormatFloat(float value);
// Fixed significant-digit form (printf %.Ng).
std::string FormatSignificant(double value, int digits);

}  // namespace aip::text
