#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "aip/accel.hpp"
#include "aip/camera.hpp"
#include "aip/image.hpp"
#include "aip/rng.hpp"
#include "aip/scene.hpp"

namespace aip {

enum class ShadingMode { kLit, kUnlit };

struct RenderSettings {
  double render_scale = 1.0;  // (0, 1]
  int mip_bias = 0;           // >= 0
  int shadow_samples = 1;     // >= 1
  int reflection_depth = 0;   // >= 0
  int aa_samples = 1;         // 1 or 4
  int lod_index = 0;          // >= 0; clamps to each object's coarsest LOD
  ShadingMode shading = ShadingMode::kLit;

  // Throws aip::Error on any out-of-range field.
  void Validate() const;
  bool operator==(const RenderSettings&) const = default;
};

struct FrameMeta {
  std::string scenario;
  std::string profile;
  RenderSettings settings;
  std::uint64_t frame_seed = 0;
  int color_width = 0;   // internal color-pass resolution
  int color_height = 0;
  std::uint64_t rays_traced = 0;  // color pass: primary + shadow + reflection
};

struct FrameOutput {
  ImageRgb8 color;
  ImageGray16 depth_persp;
  ImageGray16 depth_ortho;
  ImageRgb8 normals;
  ImageGray8 labels;
  Pose pose;
  FrameMeta meta;
};

// Ground-truth buffers plus the object id behind every pixel (kNoObject on
// a miss). All channels come from one primary ray per pixel center.
struct GroundTruth {
  ImageGray16 depth_persp;
  ImageGray16 depth_ortho;
  ImageRgb8 normals;
  ImageGray8 labels;
  ImageU32 object_ids;
};

// Per-ray shading state threaded through reflection bounces.
struct ShadeContext {
  const LightingProfile* profile = nullptr;
  const RenderSettings* settings = nullptr;
  const AccelStructure* accel = nullptr;
  double pixel_angle = 0.0;  // radians subtended by one color-pass pixel
  SplitMix64* rng = nullptr;
  std::uint64_t rays = 0;
};

// Holds one acceleration structure per LOD level. Rendering is a pure
// function of (scene, pose, profile, settings, intrinsics, frame_seed): the
// thread count never changes the output.
class Renderer {
 public:
  explicit Renderer(const Scene& scene);

  const Scene& scene() const { return *scene_; }
  const AccelStructure& accel(int lod_index) const;

  FrameOutput Render(const Pose& pose, const std::string& profile,
                     const RenderSettings& settings,
                     const CameraIntrinsics& intrinsics,
                     std::uint64_t frame_seed, int threads = 0) const;

  // LOD 0, pixel centers, no jitter; independent of every RenderSettings
  // field and of the lighting profile.
  GroundTruth RenderGroundTruth(const Pose& pose,
                                const CameraIntrinsics& intrinsics,
                                int threads = 0) const;

  // Radiance leaving `hit` toward the ray origin. Lit: ambient * albedo plus,
  // per light, visibility * (Lambert + Blinn-Phong * specular_strength), plus
  // reflectivity * mirror bounce while depth_budget > 0. Unlit: albedo.
  Rgb Shade(const Ray& ray, const Hit& hit, int depth_budget,
            double distance, ShadeContext& ctx) const;

 private:
  double Visibility(const Vec3& origin, const Light& light, const Vec3& to_light,
                    double light_distance, ShadeContext& ctx) const;

  const Scene* scene_;
  std::vector<AccelStructure> accels_;
};

// Builds a Renderer for a single frame.
FrameOutput RenderFrame(const Scene& scene, const Pose& pose,
                        const std::string& profile,
                        const RenderSettings& settings,
                        const CameraIntrinsics& intrinsics,
                        std::uint64_t frame_seed, int threads = 0);

// round(255 * clamp(c, 0, 1)), halves away from zero.
std::uint8_t QuantizeChannel(double c);

// Bilinear, half-pixel-aligned resampling to (width, height), quantized.
ImageRgb8 UpsampleBilinear(const ImageRgbF& src, int width, int height);

// Runs fn(row) for every row in [0, rows) on `threads` workers (0 = all
// hardware threads).
void ParallelRows(int rows, int threads, const std::function<void(int)>& fn);

}  // namespace aip
