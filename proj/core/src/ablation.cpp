#include "aip/ablation.hpp"

#include <cmath>
#include <algorithm>
#include <set>
#include <sstream>

#include "aip/builtin_scenes.hpp"
#include "aip/dataset.hpp"
#include "aip/digest.hpp"
#include "aip/error.hpp"
#include "aip/image_io.hpp"
#include "aip/text.hpp"
#include "aip/version.hpp"

namespace aip {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> Words(const text::Line& line) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i < line.size(); ++i) {
    out.emplace_back(line[i].text);
  }
  return out;
}

}  // namespace

RenderSettings FidelityPreset::Resolve(const Scene& scene) const {
  RenderSettings s = settings;
  if (lod_last) s.lod_index = std::max(0, scene.MaxLodCount() - 1);
  s.Validate();
  return s;
}

FidelityPreset HighPreset() {
  FidelityPreset p;
  p.name = "high";
  p.settings.render_scale = 1.0;
  p.settings.mip_bias = 0;
  p.settings.shadow_samples = 16;
  p.settings.reflection_depth = 2;
  p.settings.aa_samples = 4;
  p.settings.lod_index = 0;
  return p;
}

FidelityPreset LowPreset() {
  FidelityPreset p;
  p.name = "low";
  p.settings.render_scale = 0.5;
  p.settings.mip_bias = 2;
  p.settings.shadow_samples = 1;
  p.settings.reflection_depth = 0;
  p.settings.aa_samples = 1;
  p.settings.lod_index = 0;
  p.lod_last = true;
  return p;
}

FidelityPreset PreviewPreset() {
  FidelityPreset p;
  p.name = "preview";
  p.settings.render_scale = 1.0;
  p.settings.mip_bias = 0;
  p.settings.shadow_samples = 1;
  p.settings.reflection_depth = 1;
  p.settings.aa_samples = 1;
  p.settings.lod_index = 0;
  return p;
}

std::string Scenario::id() const {
  return map + "/" + lighting + "/" + fidelity.name;
}

std::vector<Scenario> ExpandMatrix(const std::vector<std::string>& maps,
                                   const std::vector<std::string>& lightings,
                                   const std::vector<FidelityPreset>& fidelities) {
  if (maps.empty()) throw Error("matrix has no maps");
  if (lightings.empty()) throw Error("matrix has no lighting profiles");
  if (fidelities.empty()) throw Error("matrix has no fidelity presets");
  std::vector<Scenario> out;
  std::set<std::string> seen;
  for (const std::string& map : maps) {
    for (const std::string& lighting : lightings) {
      for (const FidelityPreset& fidelity : fidelities) {
        if (lighting == kUnlitProfile && fidelity.name != kHighPreset) continue;
        Scenario s{map, lighting, fidelity};
        if (!seen.insert(s.id()).second) {
          throw Error("duplicate scenario id '" + s.id() + "'");
        }
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

void ApplyPresetField(FidelityPreset& p, const std::string& key,
                      const std::string& value) {
  auto integer = [&]() -> int {
    const auto v = text::ParseInt(value);
    if (!v) throw Error("preset field '" + key + "' needs an integer");
    return static_cast<int>(*v);
  };
  if (key == "render_scale") {
    const auto v = text::ParseDouble(value);
    if (!v) throw Error("render_scale needs a number");
    p.settings.render_scale = *v;
  } else if (key == "mip_bias") {
    p.settings.mip_bias = integer();
  } else if (key == "shadow_samples") {
    p.settings.shadow_samples = integer();
  } else if (key == "reflection_depth") {
    p.settings.reflection_depth = integer();
  } else if (key == "aa_samples") {
    p.settings.aa_samples = integer();
  } else if (key == "lod_index") {
    p.lod_last = value == "last";
    if (!p.lod_last) p.settings.lod_index = integer();
  } else if (key == "shading") {
    if (value == "lit") {
      p.settings.shading = ShadingMode::kLit;
    } else if (value == "unlit") {
      p.settings.shading = ShadingMode::kUnlit;
    } else {
      throw Error("shading must be lit or unlit");
    }
  } else {
    throw Error("unknown preset field '" + key + "'");
  }
}

FidelityPreset ParsePresetFields(const std::string& name,
                                 const std::vector<std::string>& fields) {
  FidelityPreset p = HighPreset();
  p.name = name;
  for (const std::string& field : fields) {
    const std::size_t eq = field.find('=');
    if (eq == std::string::npos) {
      throw Error("preset field '" + field + "' is not key=value");
    }
    ApplyPresetField(p, field.substr(0, eq), field.substr(eq + 1));
  }
  p.settings.Validate();
  return p;
}

FidelityPreset MatrixConfig::FindPreset(const std::string& name) const {
  for (const FidelityPreset& p : presets) {
    if (p.name == name) return p;
  }
  if (name == "high") return HighPreset();
  if (name == "low") return LowPreset();
  throw Error("unknown fidelity preset '" + name + "'");
}

MatrixConfig ParseMatrixConfig(std::string_view source) {
  const std::vector<text::Line> lines = text::Tokenize(source);
  if (lines.empty()) throw ParseError("empty matrix config", 1, 0);
  {
    text::LineReader r(lines.front());
    r.Expect("aipmatrix");
    r.Expect("v1");
    r.ExpectEnd();
  }
  MatrixConfig config;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const text::Line& line = lines[i];
    text::LineReader r(line, 1);
    const std::string_view key = line[0].text;
    if (key == "maps" || key == "lightings" || key == "fidelities") {
      auto& list = key == "maps"        ? config.maps
                   : key == "lightings" ? config.lightings
                                        : config.fidelities;
      const auto words = Words(line);
      list.insert(list.end(), words.begin(), words.end());
    } else if (key == "preset") {
      const std::string name(r.Word());
      if (name == "high" || name == "low") {
        r.FailAt(line[1], "preset name '" + name + "' is reserved");
      }
      std::vector<std::string> fields;
      while (!r.done()) fields.emplace_back(r.Word());
      try {
        config.presets.push_back(ParsePresetFields(name, fields));
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        r.Fail(e.what());
      }
    } else {
      r.FailAt(line[0], "unknown key '" + std::string(key) + "'");
    }
  }
  return config;
}

MatrixConfig LoadMatrixConfig(const fs::path& path) {
  return ParseMatrixConfig(ReadTextFile(path));
}

fs::path ScenarioDir(const fs::path& out_root, const Scenario& scenario) {
  return out_root / scenario.map / scenario.lighting / scenario.fidelity.name;
}

CaptureReport CaptureScenario(const Scenario& scenario, const Renderer& renderer,
                              const Trajectory& trajectory,
                              const CameraIntrinsics& intrinsics,
                              const fs::path& out_root, int threads) {
  const Scene& scene = renderer.scene();
  if (scene.name != scenario.map) {
    throw Error("scenario map '" + scenario.map + "' does not match scene '" +
                scene.name + "'");
  }
  if (!scene.FindProfile(scenario.lighting)) {
    throw Error("scene '" + scene.name + "' has no lighting profile '" +
                scenario.lighting + "'");
  }
  CheckTrajectoryAgainst(trajectory, scene);
  const RenderSettings settings = scenario.fidelity.Resolve(scene);

  const fs::path dir = ScenarioDir(out_root, scenario);
  fs::create_directories(dir);
  const std::string trajectory_text = SerializeTrajectory(trajectory);
  WriteTextFile(dir / "trajectory.aiptraj", trajectory_text);
  WriteLabelLegend(scene, dir);

  Manifest manifest;
  manifest.scene = scene.name;
  manifest.scenario = scenario.id();
  manifest.trajectory_digest = Sha256Hex(trajectory_text);
  manifest.tool_version = ToolVersion();
  for (std::size_t i = 0; i < trajectory.poses.size(); ++i) {
    const Pose& pose = trajectory.poses[i];
    const std::uint64_t frame_seed =
        trajectory.config.seed ^ static_cast<std::uint64_t>(i);
    FrameOutput frame = renderer.Render(pose, scenario.lighting, settings,
                                        intrinsics, frame_seed, threads);
    frame.meta.scenario = scenario.id();
    const ExportedFrame exported = ExportFrame(frame, dir, static_cast<int>(i));
    manifest.records.push_back(MakeManifestRecord(exported, pose, dir));
  }
  const std::string manifest_text = SerializeManifest(manifest);
  WriteTextFile(dir / Manifest::kFileName, manifest_text);

  CaptureReport report;
  report.scenario = scenario.id();
  report.dir = dir;
  report.frames = manifest.records.size();
  report.files = report.frames * kAllBuffers.size();
  report.digest = Sha256Hex(manifest_text);
  return report;
}

std::vector<CaptureReport> RunAblation(const MatrixConfig& config,
                                       const Trajectory& trajectory,
                                       const CameraIntrinsics& intrinsics,
                                       const fs::path& out_root, int threads) {
  std::vector<Scene> scenes;
  std::vector<std::string> names;
  for (const std::string& spec : config.maps) {
    scenes.push_back(ResolveScene(spec));
    names.push_back(scenes.back().name);
  }
  std::vector<FidelityPreset> fidelities;
  for (const std::string& f : config.fidelities) {
    fidelities.push_back(config.FindPreset(f));
  }
  const std::vector<Scenario> scenarios =
      ExpandMatrix(names, config.lightings, fidelities);
  for (const Scenario& s : scenarios) {
    const Scene& scene = scenes[static_cast<std::size_t>(
        std::find(names.begin(), names.end(), s.map) - names.begin())];
    if (!scene.FindProfile(s.lighting)) {
      throw Error("scene '" + scene.name + "' has no lighting profile '" +
                  s.lighting + "'");
    }
    CheckTrajectoryAgainst(trajectory, scene);
  }

  std::vector<CaptureReport> reports;
  std::ostringstream index;
  index << "# scenario frames sha256\n";
  for (std::size_t m = 0; m < scenes.size(); ++m) {
    const Renderer renderer(scenes[m]);
    for (const Scenario& s : scenarios) {
      if (s.map != names[m]) continue;
      reports.push_back(
          CaptureScenario(s, renderer, trajectory, intrinsics, out_root, threads));
      index << s.id() << " " << reports.back().frames << " "
            << reports.back().digest << "\n";
    }
  }
  WriteTextFile(out_root / "ablation.txt", index.str());
  return reports;
}

bool GroundTruthDiff::ground_truth_equal() const {
  for (std::size_t d : differing) {
    if (d != 0) return false;
  }
  return true;
}

GroundTruthDiff DiffGroundTruth(const fs::path& dir_a, const fs::path& dir_b) {
  const Manifest a = ReadManifest(dir_a / Manifest::kFileName);
  const Manifest b = ReadManifest(dir_b / Manifest::kFileName);
  if (a.records.size() != b.records.size()) {
    throw Error("manifests differ in frame count");
  }
  if (a.trajectory_digest != b.trajectory_digest) {
    throw Error("captures come from different trajectories");
  }
  GroundTruthDiff diff;
  diff.frames = a.records.size();
  double abs_sum = 0.0;
  std::uint64_t samples = 0;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    const ManifestRecord& ra = a.records[i];
    const ManifestRecord& rb = b.records[i];
    if (ra.index != rb.index || !(ra.pose == rb.pose)) {
      throw Error("manifests differ at frame " + std::to_string(i));
    }
    for (std::size_t c = 0; c < kGroundTruthBuffers.size(); ++c) {
      const int slot = static_cast<int>(kGroundTruthBuffers[c]);
      const auto bytes_a = ReadFileBytes(dir_a / ra.files[slot].path);
      const auto bytes_b = ReadFileBytes(dir_b / rb.files[slot].path);
      if (bytes_a != bytes_b) ++diff.differing[c];
    }
    const int color = static_cast<int>(Buffer::kColor);
    const ImageRgb8 ca = ReadPngRgb8(dir_a / ra.files[color].path);
    const ImageRgb8 cb = ReadPngRgb8(dir_b / rb.files[color].path);
    if (ca.width != cb.width || ca.height != cb.height) {
      throw Error("color images differ in size at frame " + std::to_string(i));
    }
    for (std::size_t k = 0; k < ca.data.size(); ++k) {
      abs_sum += std::abs(int(ca.data[k]) - int(cb.data[k]));
    }
    samples += ca.data.size();
  }
  diff.color_mad = samples ? abs_sum / (255.0 * static_cast<double>(samples)) : 0.0;
  return diff;
}

std::string FormatGroundTruthDiff(const GroundTruthDiff& diff) {
  std::ostringstream out;
  out << "frames " << diff.frames << "\n";
  for (std::size_t c = 0; c < kGroundTruthBuffers.size(); ++c) {
    out << BufferName(kGroundTruthBuffers[c]) << " "
        << (diff.differing[c] == 0 ? "equal" : "DIFFERENT");
    if (diff.differing[c]) out << " (" << diff.differing[c] << " frames)";
    out << "\n";
  }
  out << "color mad " << text::FormatSignificant(diff.color_mad, 6) << "\n";
  return out.str();
}

}  // namespace aip
