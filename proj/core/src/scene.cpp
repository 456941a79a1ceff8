#include "aip/scene.hpp"

#include <algorithm>
#include <set>

#include "aip/error.hpp"

namespace aip {
namespace {

Rgb Clamp01(const Rgb& c) { return c.cwiseMax(0.0).cwiseMin(1.0); }

void ValidateTransform(const SceneObject& object) {
  const Mat4& m = object.transform;
  if (m(3, 0) != 0 || m(3, 1) != 0 || m(3, 2) != 0 || m(3, 3) != 1) {
    throw Error("object '" + object.id + "': transform is not affine");
  }
  const double det = m.topLeftCorner<3, 3>().determinant();
  if (!std::isfinite(det) || std::abs(det) <= 1e-12) {
    throw Error("object '" + object.id + "': non-invertible transform");
  }
}

void ValidateMesh(const SceneObject& object, std::size_t lod_index) {
  const TriangleMesh& mesh = object.lods[lod_index];
  if (mesh.triangles.empty()) {
    throw Error("object '" + object.id + "': lod " +
                std::to_string(lod_index) + " has no triangles");
  }
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    const Triangle& tri = mesh.triangles[t];
    for (std::uint32_t index : tri) {
      if (index >= mesh.vertices.size()) {
        throw Error("object '" + object.id + "': vertex index " +
                    std::to_string(index) + " out of range");
      }
    }
    const Vec3 a = TransformPoint(
        object.transform, mesh.vertices[tri[0]].position.cast<double>());
    const Vec3 b = TransformPoint(
        object.transform, mesh.vertices[tri[1]].position.cast<double>());
    const Vec3 c = TransformPoint(
        object.transform, mesh.vertices[tri[2]].position.cast<double>());
    const double area = 0.5 * (b - a).cross(c - a).norm();
    if (!(area > kMinTriangleArea)) {
      throw Error("object '" + object.id + "': degenerate triangle " +
                  std::to_string(t) + " in lod " + std::to_string(lod_index));
    }
  }
}

}  // namespace

const TriangleMesh& SceneObject::lod(int index) const {
  const auto last = static_cast<int>(lods.size()) - 1;
  return lods[static_cast<std::size_t>(std::clamp(index, 0, last))];
}

const LightingProfile* Scene::FindProfile(const std::string& profile) const {
  for (const LightingProfile& p : profiles) {
    if (p.name == profile) return &p;
  }
  return nullptr;
}

std::optional<std::uint8_t> Scene::FindClass(const std::string& cls) const {
  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (classes[i] == cls) return static_cast<std::uint8_t>(i);
  }
  return std::nullopt;
}

int Scene::MaxLodCount() const {
  std::size_t count = 1;
  for (const SceneObject& o : objects) count = std::max(count, o.lods.size());
  return static_cast<int>(count);
}

Aabb ComputeBounds(const Scene& scene) {
  Aabb box;
  for (const SceneObject& object : scene.objects) {
    for (const TriangleMesh& mesh : object.lods) {
      for (const Vertex& v : mesh.vertices) {
        box.Extend(TransformPoint(object.transform, v.position.cast<double>()));
      }
    }
  }
  return box;
}

void ValidateScene(Scene& scene) {
  if (scene.name.empty()) throw Error("scene has no name");

  if (scene.classes.empty() || scene.classes.front() != "other") {
    throw Error("class id 0 must be 'other'");
  }
  if (scene.classes.size() > kMaxClasses) {
    throw Error("more than 256 classes");
  }
  {
    std::set<std::string> seen;
    for (const std::string& c : scene.classes) {
      if (!seen.insert(c).second) throw Error("duplicate class '" + c + "'");
    }
  }

  const CameraIntrinsics& cam = scene.camera_defaults;
  if (cam.width <= 0 || cam.height <= 0) {
    throw Error("camera resolution must be positive");
  }
  if (!(cam.vertical_fov > 0 && cam.vertical_fov < 180)) {
    throw Error("camera vertical fov must be in (0, 180)");
  }
  if (!(cam.near > 0)) throw Error("camera near must be positive");
  if (!(scene.max_range > 0)) throw Error("max_range must be positive");

  for (Material& m : scene.materials) {
    m.albedo = Clamp01(m.albedo);
    m.specular_strength = std::clamp(m.specular_strength, 0.0, 1.0);
    m.reflectivity = std::clamp(m.reflectivity, 0.0, 1.0);
    if (!(m.shininess > 0)) {
      throw Error("material '" + m.name + "': shininess must be positive");
    }
    if (m.texture && *m.texture >= scene.textures.size()) {
      throw Error("material '" + m.name + "': texture index out of range");
    }
  }

  std::set<std::string> ids;
  for (const SceneObject& object : scene.objects) {
    if (!ids.insert(object.id).second) {
      throw Error("duplicate object id '" + object.id + "'");
    }
    if (object.lods.empty()) {
      throw Error("object '" + object.id + "' has no geometry");
    }
    if (object.class_id >= scene.classes.size()) {
      throw Error("object '" + object.id + "': class id out of range");
    }
    if (object.material >= scene.materials.size()) {
      throw Error("object '" + object.id + "': material index out of range");
    }
    ValidateTransform(object);
    for (std::size_t l = 0; l < object.lods.size(); ++l) {
      ValidateMesh(object, l);
    }
  }

  const Aabb geometry = ComputeBounds(scene);
  if (!scene.bounds.valid()) {
    if (!geometry.valid()) {
      throw Error("scene has neither geometry nor declared bounds");
    }
    scene.bounds = geometry;
  } else if (geometry.valid()) {
    const double tol = 1e-9 * (1.0 + scene.bounds.extent().norm());
    if (!scene.bounds.Contains(geometry.min, tol) ||
        !scene.bounds.Contains(geometry.max, tol)) {
      throw Error("declared bounds do not contain all vertices");
    }
  }

  if (scene.profiles.empty()) throw Error("missing lighting profile");
  std::set<std::string> profile_names;
  Aabb light_region = scene.bounds;
  light_region.min.array() -= 10.0;
  light_region.max.array() += 10.0;
  for (LightingProfile& profile : scene.profiles) {
    if (!profile_names.insert(profile.name).second) {
      throw Error("duplicate lighting profile '" + profile.name + "'");
    }
    profile.ambient = Clamp01(profile.ambient);
    for (Light& light : profile.lights) {
      if (!(light.intensity >= 0)) {
        throw Error("profile '" + profile.name + "': negative light intensity");
      }
      if (!(light.radius >= 0)) {
        throw Error("profile '" + profile.name + "': negative light radius");
      }
      if (light.kind == Light::Kind::kDirectional) {
        const double n = light.direction.norm();
        if (!(n > 0) || !std::isfinite(n)) {
          throw Error("profile '" + profile.name +
                      "': directional light needs a nonzero direction");
        }
        if (std::abs(n - 1.0) > 1e-12) light.direction /= n;
      } else if (!light_region.Contains(light.position)) {
        throw Error("profile '" + profile.name +
                    "': point light outside scene bounds + 10 m");
      }
    }
  }
}

}  // namespace aip
