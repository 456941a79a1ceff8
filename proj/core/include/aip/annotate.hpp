#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "aip/accel.hpp"
#include "aip/math.hpp"
#include "aip/scene.hpp"

namespace aip {

struct DepthEncoding {
  double max_range = 10.0;  // meters, maps to 65535
};

using Rgb8 = std::array<std::uint8_t, 3>;

inline constexpr std::uint16_t kDepthMiss = 65535;
inline constexpr Rgb8 kNoNormal = {128, 128, 128};

// Euclidean distance from the camera origin to the hit point.
double PerspectiveDepth(const Vec3& camera_origin, const Vec3& hit_point);

// Distance along the camera's forward axis. Never exceeds the perspective
// depth of the same point.
double OrthographicDepth(const Vec3& camera_origin, const Vec3& camera_forward,
                         const Vec3& hit_point);

// round(65535 * clamp(d / max_range, 0, 1)), halves away from zero.
std::uint16_t EncodeDepth(double meters, const DepthEncoding& enc = {});
double DecodeDepth(std::uint16_t value, const DepthEncoding& enc = {});

// World-frame normal to RGB: round(255 * (n + 1) / 2) per channel. The zero
// vector (ray miss) encodes to (128,128,128).
Rgb8 EncodeNormal(const Vec3& normal);

// Inverse of EncodeNormal, renormalized. std::nullopt for the no-normal code.
std::optional<Vec3> DecodeNormal(const Rgb8& rgb);

// Class id of the hit object, 0 ("other") on a miss.
std::uint8_t LabelOf(const Scene& scene, const Hit& hit);

}  // namespace aip
