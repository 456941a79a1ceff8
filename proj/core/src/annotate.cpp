#include "aip/annotate.hpp"

#include <algorithm>

namespace aip {

double PerspectiveDepth(const Vec3& camera_origin, const Vec3& hit_point) {
  return (hit_point - camera_origin).norm();
}

double OrthographicDepth(const Vec3& camera_origin, const Vec3& camera_forward,
                         const Vec3& hit_point) {
  const Vec3 offset = hit_point - camera_origin;
  // The min only absorbs rounding when forward is not exactly unit length.
  return std::min(offset.dot(camera_forward), offset.norm());
}

std::uint16_t EncodeDepth(double meters, const DepthEncoding& enc) {
  const double normalized = std::clamp(meters / enc.max_range, 0.0, 1.0);
  return static_cast<std::uint16_t>(std::round(65535.0 * normalized));
}

double DecodeDepth(std::uint16_t value, const DepthEncoding& enc) {
  return enc.max_range * static_cast<double>(value) / 65535.0;
}

Rgb8 EncodeNormal(const Vec3& normal) {
  Rgb8 out{};
  for (int c = 0; c < 3; ++c) {
    const double v = std::clamp((normal[c] + 1.0) * 0.5, 0.0, 1.0);
    out[c] = static_cast<std::uint8_t>(std::round(255.0 * v));
  }
  return out;
}

std::optional<Vec3> DecodeNormal(const Rgb8& rgb) {
  if (rgb == kNoNormal) return std::nullopt;
  Vec3 n;
  for (int c = 0; c < 3; ++c) n[c] = 2.0 * rgb[c] / 255.0 - 1.0;
  const double len = n.norm();
  if (!(len > 0)) return std::nullopt;
  return n / len;
}

std::uint8_t LabelOf(const Scene& scene, const Hit& hit) {
  if (!hit.valid()) return 0;
  return scene.objects[hit.object].class_id;
}

}  // namespace aip
