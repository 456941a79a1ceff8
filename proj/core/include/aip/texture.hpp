#pragma once

#include <string>
#include <vector>

#include "aip/image.hpp"
#include "aip/math.hpp"

namespace aip {

// Where a texture's base level came from. Kept so the scene can be written
// back out in canonical form.
struct TextureSource {
  enum class Kind { kChecker, kFile };
  Kind kind = Kind::kChecker;
  std::string path;  // kFile, as written in the scene file
  int width = 0;     // kChecker
  int height = 0;
  int tiles = 1;
  Rgb color_a = Rgb::Zero();
  Rgb color_b = Rgb::Ones();

  bool operator==(const TextureSource&) const = default;
};

// Texture with a full mip chain. Level k is ceil(w/2^k) x ceil(h/2^k); the
// chain ends at 1x1. Addressing is repeat; sampling is nearest-texel on a
// single (nearest) mip level.
class Texture {
 public:
  Texture() = default;
  Texture(std::string name, TextureSource source, ImageRgbF base);

  static Texture Checker(std::string name, int width, int height, int tiles,
                         const Rgb& a, const Rgb& b);

  const std::string& name() const { return name_; }
  const TextureSource& source() const { return source_; }
  const std::vector<ImageRgbF>& mips() const { return mips_; }
  int levels() const { return static_cast<int>(mips_.size()); }

  Rgb Sample(const Vec2& uv, int level) const;

  bool operator==(const Texture&) const = default;

 private:
  std::string name_;
  TextureSource source_;
  std::vector<ImageRgbF> mips_;
};

// 2x2 box-filtered mip chain. Odd edges average only the texels that exist.
std::vector<ImageRgbF> BuildMipChain(const ImageRgbF& base);

}  // namespace aip
