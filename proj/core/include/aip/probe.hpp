#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aip/accel.hpp"
#include "aip/camera.hpp"
#include "aip/scene.hpp"

namespace aip {

// kManual marks trajectories recorded interactively (waypoints) rather than
// generated.
enum class TrajectoryMode { kRandom, kGroup, kManual };

std::string TrajectoryModeName(TrajectoryMode mode);
TrajectoryMode TrajectoryModeFromName(std::string_view name);

inline constexpr int kMaxRejectionsPerPose = 10000;
inline constexpr double kRandomPitchLimit = 30.0;

struct TrajectoryConfig {
  std::uint64_t seed = 0;
  int count = 1;
  TrajectoryMode mode = TrajectoryMode::kRandom;
  double step_size = 0.25;        // meters, group walk step
  double look_sensitivity = 10.0;  // degrees
  int group_size = 1;
  double height = 1.6;  // eye height, meters
  double margin = 0.3;  // clearance from bounds and geometry, meters

  void Validate() const;
  bool operator==(const TrajectoryConfig&) const = default;
};

struct Trajectory {
  static constexpr int kVersion = 1;

  TrajectoryConfig config;
  std::string scene;
  std::vector<Pose> poses;

  bool operator==(const Trajectory&) const = default;
};

// Checks that a pose lies inside the scene bounds shrunk by `margin`, that
// six axis-aligned probes of length `margin` hit nothing, and that the
// position is not enclosed by a closed mesh (an upward ray does not exit
// through a back face).
class PoseValidator {
 public:
  PoseValidator(const Scene& scene, double margin);
  bool operator()(const Pose& pose) const;

 private:
  const Scene* scene_;
  double margin_;
  AccelStructure accel_;
};

bool ValidatePose(const Pose& pose, const Scene& scene, double margin);

// Rounds every pose field to the 9-significant-digit decimal form used by
// trajectory files and wraps yaw, so a pose survives save/load bit-exactly.
Pose CanonicalPose(const Pose& pose);

// Draw order per random pose: x, z, yaw, pitch. Group walk steps draw
// heading, yaw factor, pitch factor. Rejected candidates consume their draws
// and are redrawn; after kMaxRejectionsPerPose rejections generation fails.
Trajectory GenerateTrajectory(const TrajectoryConfig& config,
                              const Scene& scene);

// Text form, header `aiptraj v1`, one `pose x z height yaw pitch` record per
// line with 9 significant digits, terminated by `end`.
std::string SerializeTrajectory(const Trajectory& trajectory);
Trajectory ParseTrajectory(std::string_view text);

void SaveTrajectory(const std::filesystem::path& path,
                    const Trajectory& trajectory);
Trajectory LoadTrajectory(const std::filesystem::path& path);

// Throws aip::Error naming the first pose that fails validation.
void CheckTrajectoryAgainst(const Trajectory& trajectory, const Scene& scene);

std::string FormatPoseRecord(const Pose& pose);

}  // namespace aip
