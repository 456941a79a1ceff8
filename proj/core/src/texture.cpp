#include "aip/texture.hpp"

#include <algorithm>

#include "aip/error.hpp"

namespace aip {

std::vector<ImageRgbF> BuildMipChain(const ImageRgbF& base) {
  if (base.width <= 0 || base.height <= 0) {
    throw Error("texture: empty base level");
  }
  std::vector<ImageRgbF> chain{base};
  while (chain.back().width > 1 || chain.back().height > 1) {
    const ImageRgbF& src = chain.back();
    ImageRgbF dst((src.width + 1) / 2, (src.height + 1) / 2);
    for (int y = 0; y < dst.height; ++y) {
      for (int x = 0; x < dst.width; ++x) {
        const int x1 = std::min(2 * x + 1, src.width - 1);
        const int y1 = std::min(2 * y + 1, src.height - 1);
        for (int c = 0; c < 3; ++c) {
          double sum = 0;
          int n = 0;
          for (int sy = 2 * y; sy <= y1; ++sy) {
            for (int sx = 2 * x; sx <= x1; ++sx) {
              sum += src.at(sx, sy, c);
              ++n;
            }
          }
          dst.at(x, y, c) = static_cast<float>(sum / n);
        }
      }
    }
    chain.push_back(std::move(dst));
  }
  return chain;
}

Texture::Texture(std::string name, TextureSource source, ImageRgbF base)
    : name_(std::move(name)),
      source_(std::move(source)),
      mips_(BuildMipChain(base)) {}

Texture Texture::Checker(std::string name, int width, int height, int tiles,
                         const Rgb& a, const Rgb& b) {
  if (width <= 0 || height <= 0 || tiles <= 0) {
    throw Error("texture: checker dimensions must be positive");
  }
  TextureSource source;
  source.kind = TextureSource::Kind::kChecker;
  source.width = width;
  source.height = height;
  source.tiles = tiles;
  source.color_a = a;
  source.color_b = b;
  ImageRgbF base(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const int tx = x * tiles / width;
      const int ty = y * tiles / height;
      const Rgb& color = ((tx + ty) % 2 == 0) ? a : b;
      for (int c = 0; c < 3; ++c) {
        base.at(x, y, c) = static_cast<float>(color[c]);
      }
    }
  }
  return Texture(std::move(name), std::move(source), std::move(base));
}

Rgb Texture::Sample(const Vec2& uv, int level) const {
  const ImageRgbF& img = mips_[std::clamp(level, 0, levels() - 1)];
  const double u = uv.x() - std::floor(uv.x());
  const double v = uv.y() - std::floor(uv.y());
  const int x = std::min(static_cast<int>(u * img.width), img.width - 1);
  const int y = std::min(static_cast<int>(v * img.height), img.height - 1);
  return {img.at(x, y, 0), img.at(x, y, 1), img.at(x, y, 2)};
}

}  // namespace aip
