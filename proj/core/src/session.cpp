#include "aip/session.hpp"

#include <cmath>

#include "aip/annotate.hpp"
#include "aip/dataset.hpp"
#include "aip/digest.hpp"
#include "aip/image_io.hpp"
#include "aip/text.hpp"

namespace aip {
namespace {

namespace fs = std::filesystem;

double ParseNumber(const std::string& s, const char* what) {
  const auto v = text::ParseDouble(s);
  if (!v || !std::isfinite(*v)) {
    throw ProtocolError(std::string("bad number for ") + what);
  }
  return *v;
}

Vec3 ParseVector(const std::string& s) {
  Vec3 out;
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const std::size_t comma = s.find(',', start);
    if ((i == 2) != (comma == std::string::npos)) {
      throw ProtocolError("move needs three comma-separated numbers");
    }
    out[i] = ParseNumber(s.substr(start, i == 2 ? std::string::npos
                                                : comma - start),
                         "move");
    start = comma + 1;
  }
  return out;
}

// Scene center at eye height, then progressively random poses.
Pose InitialPose(const Scene& scene, const PoseValidator& valid,
                 const SessionConfig& config) {
  Pose center;
  const Vec3 c = scene.bounds.center();
  center.position = Vec3(c.x(), 1.6, c.z());
  center = CanonicalPose(center);
  if (valid(center)) return center;
  TrajectoryConfig tc;
  tc.seed = config.seed;
  tc.count = 1;
  tc.margin = config.margin;
  return GenerateTrajectory(tc, scene).poses.front();
}

}  // namespace

std::string OverlayName(Overlay overlay) {
  switch (overlay) {
    case Overlay::kColor:
      return "color";
    case Overlay::kDepth:
      return "depth";
    case Overlay::kNormals:
      return "normals";
    case Overlay::kLabels:
      return "labels";
  }
  return "color";
}

Overlay OverlayFromName(const std::string& name) {
  if (name == "color") return Overlay::kColor;
  if (name == "depth") return Overlay::kDepth;
  if (name == "normals") return Overlay::kNormals;
  if (name == "labels") return Overlay::kLabels;
  throw Error("unknown overlay '" + name + "'");
}

void ApplyInput(SessionState& state, const PoseValidator& valid,
                const Vec3& move, double yaw_delta, double pitch_delta,
                double step_scale) {
  const SinCos yaw = SinCosDeg(state.pose.yaw);
  const Vec3 forward(yaw.sin, 0.0, yaw.cos);
  const Vec3 right(-yaw.cos, 0.0, yaw.sin);
  Pose moved = state.pose;
  moved.position += step_scale * (move.x() * right + move.z() * forward);
  moved.yaw = WrapDegrees(state.pose.yaw + yaw_delta);
  moved.pitch = std::clamp(state.pose.pitch + pitch_delta, -kMaxPitch, kMaxPitch);
  moved = CanonicalPose(moved);

  const bool moving = move.x() != 0.0 || move.z() != 0.0;
  state.rejected = false;
  if (moving && !valid(moved)) {
    moved.position = state.pose.position;
    state.rejected = true;
  }
  state.pose = moved;
}

Session::Session(const Scene& scene, const Renderer& renderer,
                 SessionConfig config)
    : scene_(&scene),
      renderer_(&renderer),
      config_(std::move(config)),
      valid_(scene, config_.margin) {
  if (!scene.FindProfile(config_.lighting)) {
    config_.lighting = scene.profiles.front().name;
  }
  state_.lighting = config_.lighting;
  state_.fidelity = PreviewPreset();
  state_.seed = config_.seed;
  state_.pose = InitialPose(scene, valid_, config_);
}

Session::Outcome Session::Handle(const Message& message) {
  Outcome out;
  const std::string& type = message.type();
  if (!greeted_) {
    if (type != "hello") throw ProtocolError("expected hello, got '" + type + "'");
    const std::string& version = message.Require("version");
    if (version != std::to_string(kProtocolVersion)) {
      throw ProtocolError("protocol version mismatch: server speaks " +
                          std::to_string(kProtocolVersion) + ", client sent " +
                          version);
    }
    greeted_ = true;
    Message ack("ack");
    ack.Set("for", "hello");
    ack.Set("version", kProtocolVersion);
    ack.Set("scene", scene_->name);
    ack.Set("width", config_.preview.width);
    ack.Set("height", config_.preview.height);
    out.replies.push_back(std::move(ack));
    out.needs_frame = true;
    return out;
  }
  if (type == "hello") throw ProtocolError("duplicate hello");
  if (type == "input") {
    const Vec3 move = message.Has("move") ? ParseVector(message.Require("move"))
                                          : Vec3::Zero();
    const double yaw = message.Has("yaw")
                           ? ParseNumber(message.Require("yaw"), "yaw")
                           : 0.0;
    const double pitch = message.Has("pitch")
                             ? ParseNumber(message.Require("pitch"), "pitch")
                             : 0.0;
    if (const auto seq = message.Get("seq")) {
      const auto v = text::ParseInt(*seq);
      if (!v) throw ProtocolError("bad seq");
      state_.input_seq = *v;
    }
    ApplyInput(state_, valid_, move, yaw, pitch, config_.step_scale);
    out.needs_frame = true;
    return out;
  }
  if (type == "set") return HandleSet(message);
  if (type == "waypoint") {
    state_.waypoints.push_back(state_.pose);
    Message ack("ack");
    ack.Set("for", "waypoint");
    ack.Set("waypoints", static_cast<long long>(state_.waypoints.size()));
    ack.Set("pose", FormatPoseRecord(state_.pose));
    out.replies.push_back(std::move(ack));
    return out;
  }
  if (type == "export_trajectory") return Export();
  if (type == "capture") return Capture();
  throw ProtocolError("unknown message type '" + type + "'");
}

Session::Outcome Session::HandleSet(const Message& message) {
  Outcome out;
  const std::string& key = message.Require("key");
  const std::string& value = message.Require("value");
  try {
    if (key == "overlay") {
      state_.overlay = OverlayFromName(value);
    } else if (key == "lighting") {
      if (!scene_->FindProfile(value)) {
        throw Error("unknown lighting profile '" + value + "'");
      }
      state_.lighting = value;
    } else {
      FidelityPreset next = state_.fidelity;
      ApplyPresetField(next, key, value);
      next.settings.Validate();
      state_.fidelity = next;
    }
  } catch (const ProtocolError&) {
    throw;
  } catch (const Error& e) {
    out.replies.push_back(ErrorMessage(e.what(), false));
    return out;
  }
  Message ack("ack");
  ack.Set("for", "set");
  ack.Set("key", key);
  ack.Set("value", value);
  out.replies.push_back(std::move(ack));
  out.needs_frame = true;
  return out;
}

Session::Outcome Session::Export() {
  Outcome out;
  if (state_.waypoints.empty()) {
    out.replies.push_back(ErrorMessage("no waypoints recorded", false));
    return out;
  }
  Trajectory t;
  t.scene = scene_->name;
  t.config.seed = state_.seed;
  t.config.count = static_cast<int>(state_.waypoints.size());
  t.config.mode = TrajectoryMode::kManual;
  t.config.margin = config_.margin;
  t.config.step_size = config_.step_scale;
  t.config.height = state_.waypoints.front().position.y();
  t.poses = state_.waypoints;
  const std::string text = SerializeTrajectory(t);
  fs::create_directories(config_.output_dir);
  const fs::path path =
      config_.output_dir / ("trajectory_" + std::to_string(++exports_) + ".aiptraj");
  WriteTextFile(path, text);
  last_export_ = path;

  Message m("trajectory");
  m.Set("poses", static_cast<long long>(t.poses.size()));
  m.Set("sha256", Sha256Hex(text));
  m.Set("path", path.string());
  m.Set("data", Base64Encode(std::span(
                    reinterpret_cast<const std::uint8_t*>(text.data()), text.size())));
  out.replies.push_back(std::move(m));
  return out;
}

Session::Outcome Session::Capture() {
  Outcome out;
  const fs::path dir = config_.output_dir / ("capture_" + std::to_string(++captures_));
  const RenderSettings settings = HighPreset().Resolve(*scene_);
  const std::uint64_t frame_seed = state_.seed ^ state_.frame_counter;
  FrameOutput frame = renderer_->Render(state_.pose, state_.lighting, settings,
                                        scene_->camera_defaults, frame_seed,
                                        config_.threads);
  frame.meta.scenario = scene_->name + "/" + state_.lighting + "/high";
  ExportFrame(frame, dir, 0);
  WriteLabelLegend(*scene_, dir);
  Message ack("ack");
  ack.Set("for", "capture");
  ack.Set("path", dir.string());
  ack.Set("pose", FormatPoseRecord(state_.pose));
  out.replies.push_back(std::move(ack));
  return out;
}

ImageRgb8 DepthOverlay(const ImageGray16& depth) {
  ImageRgb8 out(depth.width, depth.height);
  for (std::size_t i = 0; i < depth.data.size(); ++i) {
    const std::uint16_t d = depth.data[i];
    const std::uint8_t g =
        d == kDepthMiss ? 0
                        : static_cast<std::uint8_t>(
                              std::lround(255.0 * (1.0 - d / 65535.0)));
    out.data[3 * i] = out.data[3 * i + 1] = out.data[3 * i + 2] = g;
  }
  return out;
}

ImageRgb8 LabelOverlay(const ImageGray8& labels) {
  ImageRgb8 out(labels.width, labels.height);
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    const auto c = LabelDisplayColor(labels.data[i]);
    for (int k = 0; k < 3; ++k) out.data[3 * i + k] = c[k];
  }
  return out;
}

Message Session::RenderFrame() {
  const RenderSettings settings = state_.fidelity.Resolve(*scene_);
  const FrameOutput frame = renderer_->Render(
      state_.pose, state_.lighting, settings, config_.preview,
      state_.seed ^ state_.frame_counter, config_.threads);
  ImageRgb8 view;
  switch (state_.overlay) {
    case Overlay::kColor:
      view = frame.color;
      break;
    case Overlay::kDepth:
      view = DepthOverlay(frame.depth_persp);
      break;
    case Overlay::kNormals:
      view = frame.normals;
      break;
    case Overlay::kLabels:
      view = LabelOverlay(frame.labels);
      break;
  }
  const std::vector<std::uint8_t> png = EncodePng(view);
  Message m("frame");
  m.Set("seq", static_cast<long long>(++state_.frame_counter));
  m.Set("input_seq", state_.input_seq);
  m.Set("overlay", OverlayName(state_.overlay));
  m.Set("lighting", state_.lighting);
  m.Set("pose", FormatPoseRecord(state_.pose));
  m.Set("rejected", state_.rejected ? 1 : 0);
  m.Set("width", view.width);
  m.Set("height", view.height);
  m.Set("png", Base64Encode(png));
  return m;
}

}  // namespace aip
