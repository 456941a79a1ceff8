#include "support/fixtures.hpp"

#include <Eigen/Geometry>

#include "aip/rng.hpp"

namespace aip::testing {
namespace {

Vertex V(const Vec3& p) {
  Vertex v;
  v.position = p.cast<float>();
  return v;
}

}  // namespace

Scene EmptyScene(const std::string& name) {
  Scene s;
  s.name = name;
  s.classes = {"other", "thing"};
  Material m;
  m.name = "gray";
  m.albedo = Rgb(0.5, 0.4, 0.3);
  s.materials.push_back(m);

  LightingProfile day;
  day.name = "day";
  day.ambient = Rgb::Constant(0.2);
  Light sun;
  sun.kind = Light::Kind::kDirectional;
  sun.direction = Vec3(0.2, -1.0, 0.3).normalized();
  sun.intensity = 1.0;
  sun.radius = 0.05;
  day.lights.push_back(sun);
  s.profiles.push_back(day);

  LightingProfile night;
  night.name = "night";
  night.ambient = Rgb::Constant(0.02);
  Light bulb;
  bulb.kind = Light::Kind::kPoint;
  bulb.position = Vec3(0.0, 2.0, 0.5);
  bulb.intensity = 4.0;
  bulb.radius = 0.2;
  night.lights.push_back(bulb);
  s.profiles.push_back(night);

  LightingProfile unlit;
  unlit.name = "unlit";
  unlit.ambient = Rgb::Constant(0.5);
  unlit.unlit = true;
  s.profiles.push_back(unlit);
  return s;
}

TriangleMesh QuadMesh(const Vec3& a, const Vec3& b, const Vec3& c,
                      const Vec3& d) {
  TriangleMesh m;
  m.vertices = {V(a), V(b), V(c), V(d)};
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

TriangleMesh BoxMesh(const Vec3& lo, const Vec3& hi, bool inward) {
  TriangleMesh m;
  for (int i = 0; i < 8; ++i) {
    m.vertices.push_back(V(Vec3(i & 1 ? hi.x() : lo.x(), i & 2 ? hi.y() : lo.y(),
                                i & 4 ? hi.z() : lo.z())));
  }
  // Counter-clockwise seen from outside.
  m.triangles = {{0, 2, 3}, {0, 3, 1}, {4, 5, 7}, {4, 7, 6},  // -z, +z
                 {0, 4, 6}, {0, 6, 2}, {1, 3, 7}, {1, 7, 5},  // -x, +x
                 {0, 1, 5}, {0, 5, 4}, {2, 6, 7}, {2, 7, 3}};  // -y, +y
  if (inward) {
    for (Triangle& t : m.triangles) std::swap(t[1], t[2]);
  }
  return m;
}

Scene QuadAheadScene(double distance, double half) {
  Scene s = EmptyScene("quad_ahead");
  SceneObject quad;
  quad.id = "quad";
  quad.class_id = 1;
  quad.lods.push_back(QuadMesh(Vec3(-half, -half, distance), Vec3(-half, half, distance),
                               Vec3(half, half, distance), Vec3(half, -half, distance)));
  s.objects.push_back(quad);
  ValidateScene(s);
  return s;
}

Scene RandomTriangleScene(std::uint64_t seed, int max_triangles) {
  SplitMix64 rng(seed);
  Scene s = EmptyScene("random_" + std::to_string(seed));
  const int total = 1 + static_cast<int>(rng.Below(static_cast<std::uint64_t>(max_triangles)));
  int made = 0;
  int object_index = 0;
  while (made < total) {
    const int n = std::min(total - made, 1 + static_cast<int>(rng.Below(12)));
    SceneObject o;
    o.id = "obj" + std::to_string(object_index++);
    o.class_id = static_cast<std::uint8_t>(rng.Below(2));
    TriangleMesh mesh;
    for (int t = 0; t < n; ++t) {
      Vec3 p[3];
      do {
        for (Vec3& q : p) {
          q = Vec3(rng.Uniform(-1.5, 1.5), rng.Uniform(-1.5, 1.5), rng.Uniform(-1.5, 1.5));
        }
      } while ((p[1] - p[0]).cross(p[2] - p[0]).norm() < 1e-3);
      const auto base = static_cast<std::uint32_t>(mesh.vertices.size());
      for (const Vec3& q : p) mesh.vertices.push_back(V(q));
      mesh.triangles.push_back({base, base + 1, base + 2});
    }
    o.lods.push_back(mesh);
    const Eigen::AngleAxisd rot(rng.Uniform(0.0, 2.0 * kPi),
                                Vec3(rng.Uniform(-1, 1), rng.Uniform(-1, 1),
                                     rng.Uniform(-1, 1)).normalized());
    o.transform.topLeftCorner<3, 3>() = rot.toRotationMatrix();
    o.transform.topRightCorner<3, 1>() =
        Vec3(rng.Uniform(-0.5, 0.5), rng.Uniform(-0.5, 0.5), 4.0 + rng.Uniform(-0.5, 0.5));
    s.objects.push_back(o);
    made += n;
  }
  ValidateScene(s);
  return s;
}

Scene WallRoomScene() {
  Scene s = EmptyScene("wall_room");
  SceneObject shell;
  shell.id = "shell";
  shell.lods.push_back(BoxMesh(Vec3(-3, 0, -3), Vec3(3, 3, 3), true));
  s.objects.push_back(shell);
  SceneObject wall;
  wall.id = "wall";
  wall.class_id = 1;
  wall.lods.push_back(BoxMesh(Vec3(-3, 0, 1.0), Vec3(3, 3, 1.1)));
  s.objects.push_back(wall);
  ValidateScene(s);
  return s;
}

std::filesystem::path FreshDir(const std::string& name) {
  const char* root = std::getenv("TEST_TMPDIR");
  std::filesystem::path dir =
      std::filesystem::path(root ? root : std::filesystem::temp_directory_path().string()) /
      "aip_tests" / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace aip::testing
