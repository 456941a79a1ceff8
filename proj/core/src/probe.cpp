#include "aip/probe.hpp"

#include <algorithm>
#include <sstream>

#include "aip/error.hpp"
#include "aip/image_io.hpp"
#include "aip/rng.hpp"
#include "aip/text.hpp"

namespace aip {
namespace {

constexpr int kPoseDigits = 9;

double Round9(double v) {
  return *text::ParseDouble(text::FormatSignificant(v, kPoseDigits));
}

double PlanarDistance(const Pose& a, const Pose& b) {
  const double dx = a.position.x() - b.position.x();
  const double dz = a.position.z() - b.position.z();
  return std::sqrt(dx * dx + dz * dz);
}

}  // namespace

std::string TrajectoryModeName(TrajectoryMode mode) {
  switch (mode) {
    case TrajectoryMode::kRandom:
      return "random";
    case TrajectoryMode::kGroup:
      return "group";
    case TrajectoryMode::kManual:
      return "manual";
  }
  return "random";
}

TrajectoryMode TrajectoryModeFromName(std::string_view name) {
  if (name == "random") return TrajectoryMode::kRandom;
  if (name == "group") return TrajectoryMode::kGroup;
  if (name == "manual") return TrajectoryMode::kManual;
  throw Error("unknown trajectory mode '" + std::string(name) + "'");
}

void TrajectoryConfig::Validate() const {
  if (count < 1) throw Error("trajectory count must be >= 1");
  if (!(step_size > 0)) throw Error("step_size must be positive");
  if (!(look_sensitivity > 0)) throw Error("look_sensitivity must be positive");
  if (group_size < 1) throw Error("group_size must be >= 1");
  if (mode == TrajectoryMode::kGroup && group_size > count) {
    throw Error("group_size must not exceed count");
  }
  if (!(margin >= 0)) throw Error("margin must be >= 0");
  if (!std::isfinite(height)) throw Error("height must be finite");
}

PoseValidator::PoseValidator(const Scene& scene, double margin)
    : scene_(&scene), margin_(margin), accel_(scene, 0) {}

bool PoseValidator::operator()(const Pose& pose) const {
  const Vec3& p = pose.position;
  if (!p.allFinite()) return false;
  if (!(pose.pitch >= -kMaxPitch && pose.pitch <= kMaxPitch)) return false;
  const Aabb& b = scene_->bounds;
  for (int a = 0; a < 3; ++a) {
    if (p[a] < b.min[a] + margin_ || p[a] > b.max[a] - margin_) return false;
  }
  if (margin_ > 0) {
    for (int a = 0; a < 3; ++a) {
      for (const double sign : {1.0, -1.0}) {
        Ray probe;
        probe.origin = p;
        probe.direction = Vec3::Zero();
        probe.direction[a] = sign;
        probe.t_min = 0.0;
        probe.t_max = margin_;
        if (accel_.Occluded(probe)) return false;
      }
    }
  }
  Ray up;
  up.origin = p;
  up.direction = Vec3::UnitY();
  const Hit hit = accel_.Intersect(up);
  if (hit.valid()) {
    const WorldTriangle& tri = accel_.triangles()[hit.primitive];
    if (tri.e1.cross(tri.e2).y() > 0) return false;
  }
  return true;
}

bool ValidatePose(const Pose& pose, const Scene& scene, double margin) {
  return PoseValidator(scene, margin)(pose);
}

Pose CanonicalPose(const Pose& pose) {
  Pose out;
  out.position =
      Vec3(Round9(pose.position.x()), Round9(pose.position.y()),
           Round9(pose.position.z()));
  out.yaw = WrapDegrees(Round9(WrapDegrees(pose.yaw)));
  out.pitch = std::clamp(Round9(pose.pitch), -kMaxPitch, kMaxPitch);
  return out;
}

Trajectory GenerateTrajectory(const TrajectoryConfig& config,
                              const Scene& scene) {
  config.Validate();
  if (config.mode == TrajectoryMode::kManual) {
    throw Error("manual trajectories are recorded, not generated");
  }
  const Aabb& b = scene.bounds;
  const double x_lo = b.min.x() + config.margin;
  const double x_hi = b.max.x() - config.margin;
  const double z_lo = b.min.z() + config.margin;
  const double z_hi = b.max.z() - config.margin;
  if (!(x_lo <= x_hi && z_lo <= z_hi)) {
    throw Error("walkable region is empty");
  }

  const PoseValidator valid(scene, config.margin);
  SplitMix64 rng(config.seed);
  Trajectory out;
  out.config = config;
  out.scene = scene.name;
  out.poses.reserve(config.count);

  auto exhausted = [&] {
    return Error("no valid pose found after " +
                std::to_string(kMaxRejectionsPerPose) + " rejections (pose " +
                std::to_string(out.poses.size()) + ")");
  };
  auto random_pose = [&] {
    for (int attempt = 0; attempt < kMaxRejectionsPerPose; ++attempt) {
      Pose p;
      const double x = rng.Uniform(x_lo, x_hi);
      const double z = rng.Uniform(z_lo, z_hi);
      p.yaw = rng.Uniform(0.0, 360.0);
      p.pitch = rng.Uniform(-kRandomPitchLimit, kRandomPitchLimit);
      p.position = Vec3(x, config.height, z);
      p = CanonicalPose(p);
      if (valid(p)) return p;
    }
    throw exhausted();
  };
  auto walk_step = [&](const Pose& from) {
    for (int attempt = 0; attempt < kMaxRejectionsPerPose; ++attempt) {
      const double heading = rng.Uniform(0.0, 2.0 * kPi);
      const double yaw_u = rng.Uniform(-1.0, 1.0);
      const double pitch_u = rng.Uniform(-1.0, 1.0);
      Pose p;
      p.position = from.position + config.step_size * Vec3(std::cos(heading), 0.0,
                                                            std::sin(heading));
      p.yaw = from.yaw + config.look_sensitivity * yaw_u;
      p.pitch = from.pitch + config.look_sensitivity * pitch_u * 0.5;
      p = CanonicalPose(p);
      // Decimal rounding may stretch a step by a few nanometers; such
      // candidates are redrawn so the step bound holds exactly.
      if (PlanarDistance(p, from) <= config.step_size && valid(p)) return p;
    }
    throw exhausted();
  };

  if (config.mode == TrajectoryMode::kRandom) {
    for (int i = 0; i < config.count; ++i) out.poses.push_back(random_pose());
  } else {
    while (static_cast<int>(out.poses.size()) < config.count) {
      out.poses.push_back(random_pose());
      for (int k = 1; k < config.group_size &&
                      static_cast<int>(out.poses.size()) < config.count;
           ++k) {
        out.poses.push_back(walk_step(out.poses.back()));
      }
    }
  }
  return out;
}

std::string FormatPoseRecord(const Pose& pose) {
  auto f = [](double v) { return text::FormatSignificant(v, kPoseDigits); };
  return f(pose.position.x()) + " " + f(pose.position.z()) + " " +
         f(pose.position.y()) + " " + f(pose.yaw) + " " + f(pose.pitch);
}

std::string SerializeTrajectory(const Trajectory& t) {
  const TrajectoryConfig& c = t.config;
  std::ostringstream out;
  out << "aiptraj v" << Trajectory::kVersion << "\n";
  out << "scene " << (t.scene.empty() ? "-" : t.scene) << "\n";
  out << "seed " << c.seed << "\n";
  out << "count " << t.poses.size() << "\n";
  out << "mode " << TrajectoryModeName(c.mode) << "\n";
  out << "step_size " << text::FormatDouble(c.step_size) << "\n";
  out << "look_sensitivity " << text::FormatDouble(c.look_sensitivity) << "\n";
  out << "group_size " << c.group_size << "\n";
  out << "height " << text::FormatDouble(c.height) << "\n";
  out << "margin " << text::FormatDouble(c.margin) << "\n";
  for (const Pose& p : t.poses) out << "pose " << FormatPoseRecord(p) << "\n";
  out << "end\n";
  return out.str();
}

Trajectory ParseTrajectory(std::string_view source) {
  const std::vector<text::Line> lines = text::Tokenize(source);
  if (lines.empty()) throw ParseError("empty trajectory file", 1, 0);
  {
    text::LineReader r(lines.front());
    const text::Token& magic = r.Peek();
    if (magic.text != "aiptraj") r.FailAt(magic, "missing 'aiptraj' header");
    r.Word();
    const text::Token& version = r.Peek();
    if (version.text != "v1") {
      r.FailAt(version,
               "unsupported trajectory version '" + std::string(version.text) +
                   "'");
    }
    r.Word();
    r.ExpectEnd();
  }

  Trajectory t;
  TrajectoryConfig& c = t.config;
  bool saw_count = false;
  bool saw_end = false;
  std::int64_t count = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const text::Line& line = lines[i];
    if (saw_end) {
      text::LineReader(line).FailAt(line[0], "content after 'end'");
    }
    text::LineReader r(line, 1);
    const std::string_view key = line[0].text;
    if (key == "scene") {
      const std::string name(r.Word());
      t.scene = name == "-" ? "" : name;
    } else if (key == "seed") {
      c.seed = r.UInt64();
    } else if (key == "count") {
      count = r.Int();
      saw_count = true;
    } else if (key == "mode") {
      const text::Token& token = r.Peek();
      try {
        c.mode = TrajectoryModeFromName(r.Word());
      } catch (const Error& e) {
        r.FailAt(token, e.what());
      }
    } else if (key == "step_size") {
      c.step_size = r.Double();
    } else if (key == "look_sensitivity") {
      c.look_sensitivity = r.Double();
    } else if (key == "group_size") {
      c.group_size = static_cast<int>(r.Int());
    } else if (key == "height") {
      c.height = r.Double();
    } else if (key == "margin") {
      c.margin = r.Double();
    } else if (key == "pose") {
      Pose p;
      const double x = r.Double();
      const double z = r.Double();
      const double y = r.Double();
      p.position = Vec3(x, y, z);
      p.yaw = r.Double();
      p.pitch = r.Double();
      if (p.yaw < 0 || p.yaw >= 360) r.Fail("yaw outside [0, 360)");
      if (p.pitch < -kMaxPitch || p.pitch > kMaxPitch) {
        r.Fail("pitch outside [-89, 89]");
      }
      t.poses.push_back(p);
    } else if (key == "end") {
      saw_end = true;
    } else {
      r.FailAt(line[0], "unknown key '" + std::string(key) + "'");
    }
    r.ExpectEnd();
  }
  const int last_line = lines.back().number;
  if (!saw_end) throw ParseError("truncated trajectory: missing 'end'", last_line, 0);
  if (!saw_count) throw ParseError("missing 'count'", last_line, 0);
  if (count != static_cast<std::int64_t>(t.poses.size())) {
    throw ParseError("count " + std::to_string(count) + " does not match " +
                         std::to_string(t.poses.size()) + " pose records",
                     last_line, 0);
  }
  c.count = static_cast<int>(count);
  try {
    c.Validate();
  } catch (const Error& e) {
    throw ParseError(e.what(), last_line, 0);
  }
  return t;
}

void SaveTrajectory(const std::filesystem::path& path,
                    const Trajectory& trajectory) {
  WriteTextFile(path, SerializeTrajectory(trajectory));
}

Trajectory LoadTrajectory(const std::filesystem::path& path) {
  return ParseTrajectory(ReadTextFile(path));
}

void CheckTrajectoryAgainst(const Trajectory& trajectory, const Scene& scene) {
  const PoseValidator valid(scene, trajectory.config.margin);
  for (std::size_t i = 0; i < trajectory.poses.size(); ++i) {
    if (!valid(trajectory.poses[i])) {
      throw Error("pose " + std::to_string(i) + " is not valid in scene '" +
                  scene.name + "'");
    }
  }
}

}  // namespace aip
