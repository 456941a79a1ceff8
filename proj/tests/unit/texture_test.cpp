#include <gtest/gtest.h>

#include "aip/texture.hpp"

namespace aip {
namespace {

TEST(MipChain, CeilHalvingDownToOneTexel) {
  const ImageRgbF base(5, 3, 0.5f);
  const auto chain = BuildMipChain(base);
  ASSERT_EQ(chain.size(), 4u);
  EXPECT_EQ(chain[1].width, 3);
  EXPECT_EQ(chain[1].height, 2);
  EXPECT_EQ(chain[2].width, 2);
  EXPECT_EQ(chain[2].height, 1);
  EXPECT_EQ(chain[3].width, 1);
  EXPECT_EQ(chain[3].height, 1);
  for (const auto& level : chain) {
    for (float v : level.data) EXPECT_FLOAT_EQ(v, 0.5f);
  }
}

TEST(MipChain, OddEdgeAveragesOnlyExistingTexels) {
  ImageRgbF base(3, 1);
  const float values[3] = {0.0f, 1.0f, 0.25f};
  for (int x = 0; x < 3; ++x) {
    for (int c = 0; c < 3; ++c) base.at(x, 0, c) = values[x];
  }
  const auto chain = BuildMipChain(base);
  EXPECT_FLOAT_EQ(chain[1].at(0, 0), 0.5f);
  EXPECT_FLOAT_EQ(chain[1].at(1, 0), 0.25f);
}

TEST(Texture, CheckerSamplesNearestWithRepeat) {
  const Texture t = Texture::Checker("c", 4, 4, 2, Rgb(0, 0, 0), Rgb(1, 1, 1));
  const Rgb a = t.Sample(Vec2(0.1, 0.1), 0);
  const Rgb b = t.Sample(Vec2(0.6, 0.1), 0);
  EXPECT_NE(a, b);
  EXPECT_EQ(t.Sample(Vec2(1.1, 0.1), 0), a);
  EXPECT_EQ(t.Sample(Vec2(-0.9, 0.1), 0), a);
  // Level past the end clamps to the 1x1 average.
  const Rgb top = t.Sample(Vec2(0.3, 0.7), 99);
  EXPECT_NEAR(top.x(), 0.5, 1e-6);
}

}  // namespace
}  // namespace aip
