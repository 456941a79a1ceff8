#include "aip/text.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "aip/error.hpp"

namespace aip::text {
namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

std::vector<Line> Tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::string_view raw = text.substr(start, end - start);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
      raw = raw.substr(0, hash);
    }
    Line line;
    line.number = number;
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && IsSpace(raw[i])) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && !IsSpace(raw[j])) ++j;
      line.tokens.push_back({raw.substr(i, j - i), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    start = end + 1;
  }
  return lines;
}

const Token& LineReader::Peek() const {
  if (done()) Fail("unexpected end of line");
  return line_[pos_];
}

std::string_view LineReader::Word() {
  const Token& t = Peek();
  ++pos_;
  return t.text;
}

void LineReader::Expect(std::string_view keyword) {
  const Token& t = Peek();
  if (t.text != keyword) {
    FailAt(t, "expected '" + std::string(keyword) + "', got '" +
                  std::string(t.text) + "'");
  }
  ++pos_;
}

bool LineReader::Accept(std::string_view keyword) {
  if (!done() && line_[pos_].text == keyword) {
    ++pos_;
    return true;
  }
  return false;
}

double LineReader::Double() {
  const Token& t = Peek();
  const auto v = ParseDouble(t.text);
  if (!v) FailAt(t, "expected a number, got '" + std::string(t.text) + "'");
  ++pos_;
  return *v;
}

float LineReader::Float() {
  const Token& t = Peek();
  float value = 0;
  const auto* first = t.text.data();
  const auto* last = first + t.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    FailAt(t, "expected a number, got '" + std::string(t.text) + "'");
  }
  ++pos_;
  return value;
}

std::int64_t LineReader::Int() {
  const Token& t = Peek();
  const auto v = ParseInt(t.text);
  if (!v) FailAt(t, "expected an integer, got '" + std::string(t.text) + "'");
  ++pos_;
  return *v;
}

std::uint64_t LineReader::UInt64() {
  const Token& t = Peek();
  const auto v = ParseUInt64(t.text);
  if (!v) {
    FailAt(t, "expected an unsigned integer, got '" + std::string(t.text) +
                  "'");
  }
  ++pos_;
  return *v;
}

void LineReader::ExpectEnd() const {
  if (!done()) {
    FailAt(line_[pos_],
           "unexpected token '" + std::string(line_[pos_].text) + "'");
  }
}

void LineReader::Fail(const std::string& message) const {
  throw ParseError(message, line_.number, 0);
}

void LineReader::FailAt(const Token& token, const std::string& message) const {
  throw ParseError(message, line_.number, token.column);
}

std::optional<double> ParseDouble(std::string_view s) {
  double value = 0;
  const auto* first = s.data();
  const auto* last = first + s.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> ParseInt(std::string_view s) {
  std::int64_t value = 0;
  const auto* first = s.data();
  const auto* last = first + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::optional<std::uint64_t> ParseUInt64(std::string_view s) {
  std::uint64_t value = 0;
  const auto* first = s.data();
  const auto* last = first + s.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  return value;
}

std::string FormatDouble(double value) {
  if (value == 0) value = 0;  // drop the sign of -0
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                       value);
  return std::string(buf.data(), ptr);
}

std::string FormatFloat(float value) {
  if (value == 0) value = 0;
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                       value);
  return std::string(buf.data(), ptr);
}

std::string FormatSignificant(double value, int digits) {
  if (value == 0) value = 0;
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%.*g", digits, value);
  return buf.data();
}

}  // namespace aip::text
