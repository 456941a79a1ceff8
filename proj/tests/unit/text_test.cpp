#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "aip/error.hpp"
#include "aip/text.hpp"

namespace aip::text {
namespace {

TEST(Tokenize, DropsCommentsAndBlankLines) {
  const auto lines = Tokenize("a b  # comment\n\n   \n# whole line\n  c\td\n");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0].number, 1);
  ASSERT_EQ(lines[0].size(), 2u);
  EXPECT_EQ(lines[0][0].text, "a");
  EXPECT_EQ(lines[0][1].column, 3);
  EXPECT_EQ(lines[1].number, 5);
  EXPECT_EQ(lines[1][0].column, 3);
  EXPECT_EQ(lines[1][1].text, "d");
}

TEST(Tokenize, HandlesCrLf) {
  const auto lines = Tokenize("x 1\r\ny 2\r\n");
  ASSERT_EQ(lines.size(), 2u);
  EXPECT_EQ(lines[0][1].text, "1");
  EXPECT_EQ(lines[1][1].text, "2");
}

TEST(LineReader, ReportsLineAndColumnOfBadToken) {
  const auto lines = Tokenize("\nvalue 1.5 oops\n");
  LineReader r(lines[0], 1);
  EXPECT_EQ(r.Double(), 1.5);
  try {
    r.Double();
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_EQ(e.column(), 11);
  }
}

TEST(LineReader, ExpectEndRejectsTrailingTokens) {
  const auto lines = Tokenize("a b");
  LineReader r(lines[0], 1);
  EXPECT_THROW(r.ExpectEnd(), ParseError);
  r.Word();
  EXPECT_NO_THROW(r.ExpectEnd());
  EXPECT_THROW(r.Word(), ParseError);
}

TEST(ParseNumbers, RejectsPartialAndNonFinite) {
  EXPECT_EQ(ParseDouble("2.5"), 2.5);
  EXPECT_EQ(ParseDouble("-1e-3"), -1e-3);
  EXPECT_FALSE(ParseDouble("2.5x"));
  EXPECT_FALSE(ParseDouble(""));
  EXPECT_FALSE(ParseDouble("nan"));
  EXPECT_FALSE(ParseDouble("inf"));
  EXPECT_EQ(ParseInt("-42"), -42);
  EXPECT_FALSE(ParseInt("4.2"));
  EXPECT_EQ(ParseUInt64("18446744073709551615"),
            std::numeric_limits<std::uint64_t>::max());
  EXPECT_FALSE(ParseUInt64("-1"));
}

TEST(FormatDouble, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, 123456789.125, -2.5, 6.02214076e23}) {
    const std::string s = FormatDouble(v);
    EXPECT_EQ(*ParseDouble(s), v) << s;
  }
  EXPECT_EQ(FormatDouble(0.1), "0.1");
  EXPECT_EQ(FormatDouble(-0.0), "0");
  EXPECT_EQ(FormatDouble(2.0), "2");
}

TEST(FormatSignificant, NineDigits) {
  EXPECT_EQ(FormatSignificant(1.0 / 3.0, 9), "0.333333333");
  EXPECT_EQ(FormatSignificant(1.6, 9), "1.6");
  EXPECT_EQ(FormatSignificant(359.99999999, 9), "360");
}

}  // namespace
}  // namespace aip::text
