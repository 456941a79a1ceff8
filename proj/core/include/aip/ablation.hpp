#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aip/probe.hpp"
#include "aip/render.hpp"
#include "aip/scene.hpp"

namespace aip {

// A named set of render knobs. `lod_last` selects each scene's coarsest
// LOD level regardless of settings.lod_index.
struct FidelityPreset {
  std::string name;
  RenderSettings settings;
  bool lod_last = false;

  RenderSettings Resolve(const Scene& scene) const;
  bool operator==(const FidelityPreset&) const = default;
};

FidelityPreset HighPreset();
FidelityPreset LowPreset();
// Reduced preset for interactive previews.
FidelityPreset PreviewPreset();

struct Scenario {
  std::string map;       // scene name
  std::string lighting;  // profile name
  FidelityPreset fidelity;

  std::string id() const;  // "map/lighting/fidelity"
  bool operator==(const Scenario&) const = default;
};

inline constexpr const char* kUnlitProfile = "unlit";
inline constexpr const char* kHighPreset = "high";

// Cross product, maps outermost and fidelity innermost. The unlit profile
// only pairs with the "high" preset. Throws on empty lists and on duplicate
// scenario ids.
std::vector<Scenario> ExpandMatrix(const std::vector<std::string>& maps,
                                   const std::vector<std::string>& lightings,
                                   const std::vector<FidelityPreset>& fidelities);

// Matrix config, header `aipmatrix v1`:
//   maps builtin:brown_room builtin:blue_room
//   lightings day night unlit
//   fidelities high low
//   preset mid render_scale=0.75 shadow_samples=4 lod_index=last ...
struct MatrixConfig {
  std::vector<std::string> maps;  // scene specs accepted by ResolveScene
  std::vector<std::string> lightings;
  std::vector<std::string> fidelities;
  std::vector<FidelityPreset> presets;  // custom presets

  // Looks up `name` among custom presets, then high and low.
  FidelityPreset FindPreset(const std::string& name) const;
};

MatrixConfig ParseMatrixConfig(std::string_view text);
MatrixConfig LoadMatrixConfig(const std::filesystem::path& path);
// Unlisted fields default to the high preset.
FidelityPreset ParsePresetFields(const std::string& name,
                                 const std::vector<std::string>& fields);
// Sets one knob (render_scale, mip_bias, shadow_samples, reflection_depth,
// aa_samples, lod_index with "last", shading) without validating.
void ApplyPresetField(FidelityPreset& preset, const std::string& key,
                      const std::string& value);

struct CaptureReport {
  std::string scenario;
  std::filesystem::path dir;
  std::size_t frames = 0;
  std::size_t files = 0;  // image files written
  std::string digest;     // SHA-256 of the manifest text
};

// Renders every pose with frame_seed = trajectory seed ^ pose index and
// writes frames, legend, trajectory copy and manifest to
// out_root/<scenario id>/.
CaptureReport CaptureScenario(const Scenario& scenario, const Renderer& renderer,
                              const Trajectory& trajectory,
                              const CameraIntrinsics& intrinsics,
                              const std::filesystem::path& out_root,
                              int threads = 0);

std::filesystem::path ScenarioDir(const std::filesystem::path& out_root,
                                  const Scenario& scenario);

// Expands the config and captures every scenario; writes an index file
// `ablation.txt` under out_root listing ids and digests.
std::vector<CaptureReport> RunAblation(const MatrixConfig& config,
                                       const Trajectory& trajectory,
                                       const CameraIntrinsics& intrinsics,
                                       const std::filesystem::path& out_root,
                                       int threads = 0);

struct GroundTruthDiff {
  std::size_t frames = 0;
  // Indexed like kGroundTruthBuffers: frames whose files differ.
  std::array<std::size_t, 4> differing = {};
  double color_mad = 0.0;  // mean |a - b| / 255 over all color samples
  bool ground_truth_equal() const;
};

// Compares two capture directories of the same trajectory. Throws when the
// manifests disagree on frame count, poses or trajectory.
GroundTruthDiff DiffGroundTruth(const std::filesystem::path& dir_a,
                                const std::filesystem::path& dir_b);
std::string FormatGroundTruthDiff(const GroundTruthDiff& diff);

}  // namespace aip
