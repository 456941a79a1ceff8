#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "aip/ablation.hpp"
#include "aip/camera.hpp"
#include "aip/probe.hpp"
#include "aip/protocol.hpp"
#include "aip/render.hpp"
#include "aip/scene.hpp"

namespace aip {

enum class Overlay { kColor, kDepth, kNormals, kLabels };

std::string OverlayName(Overlay overlay);
Overlay OverlayFromName(const std::string& name);

struct SessionConfig {
  CameraIntrinsics preview{320, 240, 60.0, 0.05};
  std::string lighting = "day";
  double step_scale = 0.25;  // meters per unit of input move
  double margin = 0.3;       // pose clearance, as in generated trajectories
  std::uint64_t seed = 1;
  std::filesystem::path output_dir = "aip_session";  // exports and captures
  int threads = 0;
};

struct SessionState {
  Pose pose;
  std::string lighting;
  FidelityPreset fidelity;
  Overlay overlay = Overlay::kColor;
  std::vector<Pose> waypoints;
  std::uint64_t frame_counter = 0;
  std::uint64_t seed = 0;
  long long input_seq = 0;
  bool rejected = false;  // last move was refused
};

// Applies one input step: `move` is camera-relative (x right, z forward),
// rotated by the current yaw and scaled by step_scale; y is dropped. Yaw
// wraps, pitch clamps to [-89, 89]. The position changes only when the new
// pose validates; `rejected` records the outcome.
void ApplyInput(SessionState& state, const PoseValidator& valid,
                const Vec3& move, double yaw_delta, double pitch_delta,
                double step_scale);

// Protocol state machine for one connection, independent of transport.
class Session {
 public:
  Session(const Scene& scene, const Renderer& renderer, SessionConfig config);

  struct Outcome {
    std::vector<Message> replies;
    bool needs_frame = false;
    bool close = false;
  };

  Outcome Handle(const Message& message);
  Message RenderFrame();

  const SessionState& state() const { return state_; }
  bool greeted() const { return greeted_; }
  const std::filesystem::path& last_export() const { return last_export_; }

 private:
  Outcome HandleSet(const Message& message);
  Outcome Export();
  Outcome Capture();

  const Scene* scene_;
  const Renderer* renderer_;
  SessionConfig config_;
  PoseValidator valid_;
  SessionState state_;
  bool greeted_ = false;
  int exports_ = 0;
  int captures_ = 0;
  std::filesystem::path last_export_;
};

// Grayscale view of a depth buffer: near is bright, misses are black.
ImageRgb8 DepthOverlay(const ImageGray16& depth);
ImageRgb8 LabelOverlay(const ImageGray8& labels);

}  // namespace aip
