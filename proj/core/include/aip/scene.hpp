#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aip/math.hpp"
#include "aip/mesh.hpp"
#include "aip/texture.hpp"

namespace aip {

inline constexpr std::size_t kMaxClasses = 256;
inline constexpr double kMinTriangleArea = 1e-12;

struct Material {
  std::string name;
  Rgb albedo = Rgb::Constant(0.8);
  double specular_strength = 0.0;  // [0,1]
  double shininess = 32.0;         // > 0
  double reflectivity = 0.0;       // [0,1], mirror component
  std::optional<std::size_t> texture;  // index into Scene::textures

  bool operator==(const Material&) const = default;
};

struct SceneObject {
  std::string id;
  std::vector<TriangleMesh> lods;  // lods[0] is full detail
  Mat4 transform = Mat4::Identity();
  std::size_t material = 0;  // index into Scene::materials
  std::uint8_t class_id = 0;

  // Objects without the requested level use their coarsest one.
  const TriangleMesh& lod(int index) const;

  bool operator==(const SceneObject&) const = default;
};

struct Light {
  enum class Kind { kDirectional, kPoint };
  Kind kind = Kind::kDirectional;
  Vec3 direction = Vec3(0, -1, 0);  // travel direction, unit (directional)
  Vec3 position = Vec3::Zero();     // point
  Rgb color = Rgb::Ones();
  double intensity = 1.0;
  // Soft-shadow extent: disc radius in meters for point lights, tangent of
  // the angular radius for directional lights.
  double radius = 0.0;

  bool operator==(const Light&) const = default;
};

struct LightingProfile {
  std::string name;
  Rgb ambient = Rgb::Zero();  // also the sky color seen by missing rays
  std::vector<Light> lights;
  bool unlit = false;         // render albedo only

  bool operator==(const LightingProfile&) const = default;
};

struct CameraIntrinsics {
  int width = 640;
  int height = 480;
  double vertical_fov = 60.0;  // degrees, (0, 180)
  double near = 0.05;          // meters

  double aspect() const { return static_cast<double>(width) / height; }
  bool operator==(const CameraIntrinsics&) const = default;
};

struct Scene {
  std::string name;
  std::vector<SceneObject> objects;
  std::vector<Material> materials;
  std::vector<Texture> textures;
  std::vector<LightingProfile> profiles;
  std::vector<std::string> classes{"other"};  // index = class id
  CameraIntrinsics camera_defaults;
  Aabb bounds;
  double max_range = 10.0;  // depth encoding range, meters

  const LightingProfile* FindProfile(const std::string& name) const;
  std::optional<std::uint8_t> FindClass(const std::string& name) const;
  int MaxLodCount() const;

  bool operator==(const Scene&) const = default;
};

// World-space bounds of every LOD of every object.
Aabb ComputeBounds(const Scene& scene);

// Checks every structural invariant and fills in `bounds` when it is unset.
// Throws aip::Error naming the first violation.
void ValidateScene(Scene& scene);

}  // namespace aip
