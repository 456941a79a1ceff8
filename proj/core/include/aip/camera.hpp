#pragma once

#include "aip/accel.hpp"
#include "aip/math.hpp"
#include "aip/scene.hpp"

namespace aip {

inline constexpr double kMaxPitch = 89.0;

// Camera pose: yaw about +y (0 looks down +z, 90 looks down +x), pitch up
// positive, no roll.
struct Pose {
  Vec3 position = Vec3::Zero();
  double yaw = 0.0;    // degrees, [0, 360)
  double pitch = 0.0;  // degrees, [-89, 89]

  bool operator==(const Pose&) const = default;
};

// Wraps yaw and clamps pitch into their legal ranges.
Pose NormalizePose(Pose pose);

// Orthonormal right-handed frame: right x up = -forward.
struct CameraFrame {
  Vec3 origin;
  Vec3 forward;
  Vec3 right;
  Vec3 up;
};

CameraFrame MakeCameraFrame(const Pose& pose);

// Ray from the camera origin through image position (px + jx, py + jy),
// where (0, 0) is the top-left image corner and jitter (0.5, 0.5) is the
// pixel center. t_min is the near distance.
Ray PrimaryRay(const CameraIntrinsics& intrinsics, const CameraFrame& frame,
               double px, double py, double jx, double jy);
Ray PrimaryRay(const CameraIntrinsics& intrinsics, const Pose& pose, double px,
               double py, double jx = 0.5, double jy = 0.5);

}  // namespace aip
