#include "aip/camera.hpp"

#include <algorithm>

namespace aip {

Pose NormalizePose(Pose pose) {
  pose.yaw = WrapDegrees(pose.yaw);
  pose.pitch = std::clamp(pose.pitch, -kMaxPitch, kMaxPitch);
  return pose;
}

CameraFrame MakeCameraFrame(const Pose& pose) {
  const SinCos yaw = SinCosDeg(pose.yaw);
  const SinCos pitch = SinCosDeg(pose.pitch);
  CameraFrame f;
  f.origin = pose.position;
  f.forward = Vec3(yaw.sin * pitch.cos, pitch.sin, yaw.cos * pitch.cos);
  f.right = f.forward.cross(Vec3::UnitY()).normalized();
  f.up = f.right.cross(f.forward);
  return f;
}

Ray PrimaryRay(const CameraIntrinsics& intrinsics, const CameraFrame& frame,
               double px, double py, double jx, double jy) {
  const double tan_half = std::tan(DegToRad(intrinsics.vertical_fov) * 0.5);
  const double sx =
      (2.0 * (px + jx) / intrinsics.width - 1.0) * tan_half * intrinsics.aspect();
  const double sy = (1.0 - 2.0 * (py + jy) / intrinsics.height) * tan_half;
  Ray ray;
  ray.origin = frame.origin;
  ray.direction = (frame.forward + sx * frame.right + sy * frame.up).normalized();
  ray.t_min = intrinsics.near;
  return ray;
}

Ray PrimaryRay(const CameraIntrinsics& intrinsics, const Pose& pose, double px,
               double py, double jx, double jy) {
  return PrimaryRay(intrinsics, MakeCameraFrame(pose), px, py, jx, jy);
}

}  // namespace aip
