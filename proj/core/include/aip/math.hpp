#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <cmath>
#include <limits>

namespace aip {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat4 = Eigen::Matrix4d;
using Rgb = Eigen::Vector3d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline double DegToRad(double deg) { return deg * (kPi / 180.0); }
inline double RadToDeg(double rad) { return rad * (180.0 / kPi); }

// sin/cos of an angle in degrees, exact at multiples of 90 so that axis-aligned
// cameras produce axis-aligned frames with no rounding residue.
struct SinCos {
  double sin;
  double cos;
};
SinCos SinCosDeg(double deg);

// Wraps into [0, 360).
double WrapDegrees(double deg);

struct Aabb {
  Vec3 min = Vec3::Constant(kInf);
  Vec3 max = Vec3::Constant(-kInf);

  bool valid() const { return (min.array() <= max.array()).all(); }
  void Extend(const Vec3& p) {
    min = min.cwiseMin(p);
    max = max.cwiseMax(p);
  }
  void Extend(const Aabb& b) {
    min = min.cwiseMin(b.min);
    max = max.cwiseMax(b.max);
  }
  bool Contains(const Vec3& p, double tol = 0.0) const {
    return (p.array() >= min.array() - tol).all() &&
           (p.array() <= max.array() + tol).all();
  }
  Vec3 center() const { return 0.5 * (min + max); }
  Vec3 extent() const { return max - min; }

  bool operator==(const Aabb&) const = default;
};

}  // namespace aip

namespace aip {

// Spelled out row by row so the rounding is the same on every build.
inline Vec3 TransformPoint(const Mat4& m, const Vec3& p) {
  Vec3 out;
  for (int r = 0; r < 3; ++r) {
    out[r] = m(r, 0) * p.x() + m(r, 1) * p.y() + m(r, 2) * p.z() + m(r, 3);
  }
  return out;
}

}  // namespace aip
