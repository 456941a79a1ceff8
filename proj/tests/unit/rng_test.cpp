#include <gtest/gtest.h>

#include <cmath>

#include "aip/rng.hpp"

namespace aip {
namespace {

TEST(SplitMix64, MatchesPublishedReferenceStream) {
  SplitMix64 zero(0);
  EXPECT_EQ(zero.Next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(zero.Next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(zero.Next(), 0x06c45d188009454fULL);

  SplitMix64 r(1234567);
  EXPECT_EQ(r.Next(), 6457827717110365317ULL);
  EXPECT_EQ(r.Next(), 3203168211198807973ULL);
  EXPECT_EQ(r.Next(), 9817491932198370423ULL);
  EXPECT_EQ(r.Next(), 4593380528125082431ULL);
  EXPECT_EQ(r.Next(), 16408922859458223821ULL);
}

TEST(SplitMix64, UniformUsesTop53Bits) {
  SplitMix64 a(99), b(99);
  for (int i = 0; i < 1000; ++i) {
    const double u = a.Uniform();
    EXPECT_EQ(u, std::ldexp(static_cast<double>(b.Next() >> 11), -53));
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(SplitMix64, UniformRangeAndBelow) {
  SplitMix64 r(7);
  for (int i = 0; i < 10000; ++i) {
    const double x = r.Uniform(-2.0, 3.0);
    EXPECT_GE(x, -2.0);
    EXPECT_LT(x, 3.0);
    EXPECT_LT(r.Below(13), 13u);
  }
  SplitMix64 one(5);
  EXPECT_EQ(one.Below(1), 0u);
}

TEST(PixelSeed, XorsRowMajorIndex) {
  EXPECT_EQ(PixelSeed(0, 0, 0, 640), 0u);
  EXPECT_EQ(PixelSeed(0, 3, 2, 640), 2u * 640u + 3u);
  EXPECT_EQ(PixelSeed(0xff00, 1, 1, 16), 0xff00u ^ 17u);
}

}  // namespace
}  // namespace aip
