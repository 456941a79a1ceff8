#include "aip/builtin_scenes.hpp"

#include <array>
#include <filesystem>

#include "aip/error.hpp"
#include "aip/scene_format.hpp"

namespace aip {
namespace {

constexpr std::array<const char*, 15> kRoomClasses = {
    "wall",  "floor", "ceiling", "couch", "table",  "TV",      "plant",  "lamp",
    "window", "door", "chair",   "rug",   "shelf",  "picture", "curtain"};

// Room extents in meters; the floor is y = 0 and the room is centered on the
// origin in x/z.
constexpr double kRoomX = 3.0;
constexpr double kRoomZ = 2.5;
constexpr double kRoomHeight = 2.8;

// Window opening in the +z wall.
constexpr double kWindowHalfWidth = 0.9;
constexpr double kWindowBottom = 0.9;
constexpr double kWindowTop = 2.1;

class MeshBuilder {
 public:
  // Axis-aligned rectangle on the plane `axis == coord`, facing `sign` along
  // that axis. UVs are in meters along the two in-plane axes.
  MeshBuilder& Quad(int axis, double coord, int sign, double u0, double u1,
                    double v0, double v1) {
    const int ua = (axis + 1) % 3;
    const int va = (axis + 2) % 3;
    auto point = [&](double u, double v) {
      Eigen::Vector3f p;
      p[axis] = static_cast<float>(coord);
      p[ua] = static_cast<float>(u);
      p[va] = static_cast<float>(v);
      return p;
    };
    const auto base = static_cast<std::uint32_t>(mesh_.vertices.size());
    const std::array<std::array<double, 2>, 4> corners = {
        {{u0, v0}, {u1, v0}, {u1, v1}, {u0, v1}}};
    for (const auto& c : corners) {
      Vertex vx;
      vx.position = point(c[0], c[1]);
      vx.uv = Eigen::Vector2f(static_cast<float>(c[0] - u0),
                              static_cast<float>(c[1] - v0));
      mesh_.vertices.push_back(vx);
    }
    if (sign > 0) {
      mesh_.triangles.push_back({base, base + 1, base + 2});
      mesh_.triangles.push_back({base, base + 2, base + 3});
    } else {
      mesh_.triangles.push_back({base, base + 2, base + 1});
      mesh_.triangles.push_back({base, base + 3, base + 2});
    }
    return *this;
  }

  // Closed box with outward-facing triangles.
  MeshBuilder& Box(const Vec3& lo, const Vec3& hi) {
    for (int axis = 0; axis < 3; ++axis) {
      const int ua = (axis + 1) % 3;
      const int va = (axis + 2) % 3;
      Quad(axis, hi[axis], +1, lo[ua], hi[ua], lo[va], hi[va]);
      Quad(axis, lo[axis], -1, lo[ua], hi[ua], lo[va], hi[va]);
    }
    return *this;
  }

  // UV sphere with smooth normals, outward winding.
  MeshBuilder& Sphere(const Vec3& center, double radius, int slices,
                      int stacks) {
    const auto base = static_cast<std::uint32_t>(mesh_.vertices.size());
    auto add = [&](const Vec3& dir) {
      Vertex v;
      v.position = (center + radius * dir).cast<float>();
      v.normal = dir.cast<float>();
      mesh_.vertices.push_back(v);
    };
    add(Vec3(0, 1, 0));
    for (int i = 1; i < stacks; ++i) {
      const double theta = kPi * i / stacks;
      for (int j = 0; j < slices; ++j) {
        const double phi = 2 * kPi * j / slices;
        add(Vec3(std::sin(theta) * std::cos(phi), std::cos(theta),
                 std::sin(theta) * std::sin(phi)));
      }
    }
    add(Vec3(0, -1, 0));
    const std::uint32_t top = base;
    const auto bottom = static_cast<std::uint32_t>(mesh_.vertices.size() - 1);
    auto ring = [&](int i, int j) {
      return base + 1 + static_cast<std::uint32_t>((i - 1) * slices) +
             static_cast<std::uint32_t>(j % slices);
    };
    for (int j = 0; j < slices; ++j) {
      AddOutward(center, {top, ring(1, j), ring(1, j + 1)});
      AddOutward(center, {bottom, ring(stacks - 1, j + 1),
                          ring(stacks - 1, j)});
    }
    for (int i = 1; i + 1 < stacks; ++i) {
      for (int j = 0; j < slices; ++j) {
        AddOutward(center, {ring(i, j), ring(i + 1, j), ring(i + 1, j + 1)});
        AddOutward(center, {ring(i, j), ring(i + 1, j + 1), ring(i, j + 1)});
      }
    }
    return *this;
  }

  TriangleMesh Build() { return std::move(mesh_); }

 private:
  void AddOutward(const Vec3& center, Triangle t) {
    const Vec3 a = mesh_.vertices[t[0]].position.cast<double>();
    const Vec3 b = mesh_.vertices[t[1]].position.cast<double>();
    const Vec3 c = mesh_.vertices[t[2]].position.cast<double>();
    const Vec3 n = (b - a).cross(c - a);
    if (n.dot((a + b + c) / 3.0 - center) < 0) std::swap(t[1], t[2]);
    mesh_.triangles.push_back(t);
  }

  TriangleMesh mesh_;
};

struct Palette {
  Rgb wall, floor_a, floor_b, ceiling, couch, table, tv, plant, pot, lamp,
      shade, window, door, chair, rug_a, rug_b, shelf, picture_a, picture_b,
      curtain, vase;
};

Palette BrownPalette() {
  Palette p;
  p.wall = {0.62, 0.50, 0.38};
  p.floor_a = {0.45, 0.30, 0.18};
  p.floor_b = {0.38, 0.24, 0.14};
  p.ceiling = {0.90, 0.87, 0.82};
  p.couch = {0.40, 0.24, 0.14};
  p.table = {0.30, 0.19, 0.11};
  p.tv = {0.04, 0.04, 0.05};
  p.plant = {0.20, 0.45, 0.18};
  p.pot = {0.55, 0.33, 0.22};
  p.lamp = {0.25, 0.22, 0.20};
  p.shade = {0.92, 0.85, 0.70};
  p.window = {0.85, 0.82, 0.76};
  p.door = {0.42, 0.28, 0.16};
  p.chair = {0.35, 0.22, 0.12};
  p.rug_a = {0.60, 0.25, 0.15};
  p.rug_b = {0.80, 0.68, 0.45};
  p.shelf = {0.33, 0.21, 0.12};
  p.picture_a = {0.85, 0.60, 0.20};
  p.picture_b = {0.20, 0.30, 0.55};
  p.curtain = {0.70, 0.55, 0.35};
  p.vase = {0.75, 0.72, 0.65};
  return p;
}

Palette BluePalette() {
  Palette p;
  p.wall = {0.42, 0.52, 0.68};
  p.floor_a = {0.62, 0.64, 0.68};
  p.floor_b = {0.48, 0.50, 0.56};
  p.ceiling = {0.88, 0.90, 0.94};
  p.couch = {0.14, 0.24, 0.50};
  p.table = {0.82, 0.84, 0.88};
  p.tv = {0.03, 0.03, 0.06};
  p.plant = {0.18, 0.50, 0.35};
  p.pot = {0.25, 0.35, 0.60};
  p.lamp = {0.70, 0.72, 0.78};
  p.shade = {0.80, 0.88, 0.95};
  p.window = {0.95, 0.96, 0.98};
  p.door = {0.22, 0.30, 0.45};
  p.chair = {0.30, 0.40, 0.62};
  p.rug_a = {0.20, 0.32, 0.58};
  p.rug_b = {0.78, 0.82, 0.90};
  p.shelf = {0.60, 0.66, 0.78};
  p.picture_a = {0.15, 0.55, 0.70};
  p.picture_b = {0.92, 0.80, 0.40};
  p.curtain = {0.30, 0.42, 0.70};
  p.vase = {0.65, 0.75, 0.90};
  return p;
}

class SceneAssembler {
 public:
  explicit SceneAssembler(Scene& scene) : scene_(scene) {}

  std::size_t Texture(aip::Texture t) {
    scene_.textures.push_back(std::move(t));
    return scene_.textures.size() - 1;
  }

  std::size_t Material(const std::string& name, const Rgb& albedo,
                       double specular = 0.0, double shininess = 32.0,
                       double reflectivity = 0.0,
                       std::optional<std::size_t> texture = std::nullopt) {
    aip::Material m;
    m.name = name;
    m.albedo = albedo;
    m.specular_strength = specular;
    m.shininess = shininess;
    m.reflectivity = reflectivity;
    m.texture = texture;
    scene_.materials.push_back(std::move(m));
    return scene_.materials.size() - 1;
  }

  void Object(const std::string& id, const std::string& cls,
              std::size_t material, std::vector<TriangleMesh> lods,
              const Mat4& transform = Mat4::Identity()) {
    const auto class_id = scene_.FindClass(cls);
    if (!class_id) throw Error("builtin scene: unknown class " + cls);
    SceneObject o;
    o.id = id;
    o.class_id = *class_id;
    o.material = material;
    o.lods = std::move(lods);
    o.transform = transform;
    scene_.objects.push_back(std::move(o));
  }

 private:
  Scene& scene_;
};

TriangleMesh BoxMesh(const Vec3& lo, const Vec3& hi) {
  return MeshBuilder().Box(lo, hi).Build();
}

std::vector<TriangleMesh> SphereLods(const Vec3& center, double radius) {
  return {MeshBuilder().Sphere(center, radius, 24, 16).Build(),
          MeshBuilder().Sphere(center, radius, 12, 8).Build(),
          MeshBuilder().Sphere(center, radius, 6, 4).Build()};
}

void AddRoomProfiles(Scene& scene) {
  LightingProfile day;
  day.name = "day";
  day.ambient = {0.34, 0.36, 0.42};
  Light sun;
  sun.kind = Light::Kind::kDirectional;
  sun.direction = Vec3(0.25, -0.55, -1.0).normalized();
  sun.color = {1.0, 0.95, 0.85};
  sun.intensity = 2.4;
  sun.radius = 0.03;
  day.lights.push_back(sun);
  Light fill;
  fill.kind = Light::Kind::kPoint;
  fill.position = {0.0, 2.6, 0.0};
  fill.color = {1.0, 1.0, 1.0};
  fill.intensity = 2.5;
  day.lights.push_back(fill);

  LightingProfile night;
  night.name = "night";
  night.ambient = {0.03, 0.035, 0.06};
  Light ceiling;
  ceiling.kind = Light::Kind::kPoint;
  ceiling.position = {0.0, 2.5, 0.2};
  ceiling.color = {1.0, 0.84, 0.62};
  ceiling.intensity = 3.6;
  ceiling.radius = 0.15;
  night.lights.push_back(ceiling);
  Light lamp;
  lamp.kind = Light::Kind::kPoint;
  lamp.position = {-2.35, 1.35, -1.8};
  lamp.color = {1.0, 0.78, 0.5};
  lamp.intensity = 1.2;
  lamp.radius = 0.05;
  night.lights.push_back(lamp);

  LightingProfile unlit;
  unlit.name = "unlit";
  unlit.ambient = {0.5, 0.5, 0.5};
  unlit.unlit = true;

  scene.profiles = {day, night, unlit};
}

Scene MakeRoom(const std::string& name, const Palette& pal) {
  Scene scene;
  scene.name = name;
  for (const char* c : kRoomClasses) scene.classes.emplace_back(c);
  SceneAssembler a(scene);

  const auto floor_tex = a.Texture(
      Texture::Checker("floor_planks", 256, 256, 4, pal.floor_a, pal.floor_b));
  const auto rug_tex = a.Texture(
      Texture::Checker("rug_pattern", 256, 256, 16, pal.rug_a, pal.rug_b));
  const auto picture_tex = a.Texture(Texture::Checker(
      "picture_art", 128, 128, 8, pal.picture_a, pal.picture_b));

  const auto m_wall = a.Material("wall_paint", pal.wall, 0.05, 8);
  const auto m_floor =
      a.Material("floor_wood", Rgb::Ones(), 0.3, 48, 0.12, floor_tex);
  const auto m_ceiling = a.Material("ceiling_paint", pal.ceiling);
  const auto m_couch = a.Material("couch_fabric", pal.couch, 0.05, 4);
  const auto m_table = a.Material("table_finish", pal.table, 0.5, 64, 0.15);
  const auto m_tv = a.Material("tv_screen", pal.tv, 0.9, 128, 0.35);
  const auto m_plant = a.Material("plant_leaves", pal.plant, 0.1, 16);
  const auto m_pot = a.Material("plant_pot", pal.pot, 0.2, 16);
  const auto m_lamp = a.Material("lamp_metal", pal.lamp, 0.7, 96, 0.2);
  const auto m_shade = a.Material("lamp_shade", pal.shade, 0.0, 8);
  const auto m_window = a.Material("window_frame", pal.window, 0.4, 64, 0.25);
  const auto m_door = a.Material("door_wood", pal.door, 0.2, 24);
  const auto m_chair = a.Material("chair_wood", pal.chair, 0.3, 32);
  const auto m_rug = a.Material("rug_wool", Rgb::Ones(), 0.0, 4, 0.0, rug_tex);
  const auto m_shelf = a.Material("shelf_wood", pal.shelf, 0.3, 32);
  const auto m_picture =
      a.Material("picture_canvas", Rgb::Ones(), 0.1, 16, 0.0, picture_tex);
  const auto m_curtain = a.Material("curtain_cloth", pal.curtain, 0.0, 4);
  const auto m_vase = a.Material("vase_ceramic", pal.vase, 0.8, 128, 0.3);

  const double X = kRoomX;
  const double Z = kRoomZ;
  const double H = kRoomHeight;

  // Shell: inward-facing quads.
  a.Object("floor", "floor", m_floor,
           {MeshBuilder().Quad(1, 0.0, +1, -Z, Z, -X, X).Build()});
  a.Object("ceiling", "ceiling", m_ceiling,
           {MeshBuilder().Quad(1, H, -1, -Z, Z, -X, X).Build()});
  a.Object("wall_west", "wall", m_wall,
           {MeshBuilder().Quad(0, -X, +1, 0, H, -Z, Z).Build()});
  a.Object("wall_east", "wall", m_wall,
           {MeshBuilder().Quad(0, X, -1, 0, H, -Z, Z).Build()});
  a.Object("wall_south", "wall", m_wall,
           {MeshBuilder().Quad(2, -Z, +1, -X, X, 0, H).Build()});
  a.Object("wall_north", "wall", m_wall,
           {MeshBuilder()
                .Quad(2, Z, -1, -X, -kWindowHalfWidth, 0, H)
                .Quad(2, Z, -1, kWindowHalfWidth, X, 0, H)
                .Quad(2, Z, -1, -kWindowHalfWidth, kWindowHalfWidth, 0,
                      kWindowBottom)
                .Quad(2, Z, -1, -kWindowHalfWidth, kWindowHalfWidth,
                      kWindowTop, H)
                .Build()});

  // Window frame around the opening; the opening itself is open to the sky.
  {
    const double w = kWindowHalfWidth;
    const double t = 0.05;
    a.Object("window", "window", m_window,
             {MeshBuilder()
                  .Box({-w - t, kWindowTop - t, Z - 0.08}, {w + t, kWindowTop + t, Z})
                  .Box({-w - t, kWindowBottom - t, Z - 0.12},
                       {w + t, kWindowBottom + t, Z})
                  .Box({-w - t, kWindowBottom, Z - 0.08}, {-w + t, kWindowTop, Z})
                  .Box({w - t, kWindowBottom, Z - 0.08}, {w + t, kWindowTop, Z})
                  .Box({-0.025, kWindowBottom, Z - 0.06}, {0.025, kWindowTop, Z})
                  .Build()});
  }
  a.Object("curtain_left", "curtain", m_curtain,
           {BoxMesh({-1.45, 0.3, Z - 0.16}, {-0.98, 2.6, Z - 0.1})});
  a.Object("curtain_right", "curtain", m_curtain,
           {BoxMesh({0.98, 0.3, Z - 0.16}, {1.45, 2.6, Z - 0.1})});

  a.Object("door", "door", m_door,
           {BoxMesh({1.2, 0.0, -Z}, {2.1, 2.1, -Z + 0.05})});
  a.Object("picture", "picture", m_picture,
           {MeshBuilder()
                .Box({-X, 1.2, -0.6}, {-X + 0.03, 1.9, 0.6})
                .Build()});

  // Media wall.
  a.Object("tv", "TV", m_tv, {BoxMesh({X - 0.12, 1.0, -0.65}, {X - 0.04, 1.7, 0.65})});
  a.Object("media_shelf", "shelf", m_shelf,
           {BoxMesh({X - 0.45, 0.0, -0.95}, {X, 0.55, 0.95})});
  a.Object("bookshelf", "shelf", m_shelf,
           {MeshBuilder()
                .Box({1.6, 0.0, -Z + 0.02}, {2.6, 0.04, -Z + 0.38})
                .Box({1.6, 0.9, -Z + 0.02}, {2.6, 0.94, -Z + 0.38})
                .Box({1.6, 1.0, -Z + 0.02}, {2.6, 1.04, -Z + 0.38})
                .Box({1.6, 0.04, -Z + 0.02}, {1.64, 1.0, -Z + 0.38})
                .Box({2.56, 0.04, -Z + 0.02}, {2.6, 1.0, -Z + 0.38})
                .Build()});

  // Seating area facing the media wall.
  a.Object("couch", "couch", m_couch,
           {MeshBuilder()
                .Box({-2.4, 0.0, -1.1}, {-1.5, 0.45, 1.1})
                .Box({-2.75, 0.0, -1.1}, {-2.4, 0.9, 1.1})
                .Box({-2.75, 0.0, -1.3}, {-1.5, 0.65, -1.1})
                .Box({-2.75, 0.0, 1.1}, {-1.5, 0.65, 1.3})
                .Build()});
  {
    MeshBuilder table;
    table.Box({-0.9, 0.40, -0.5}, {0.3, 0.45, 0.5});
    for (const double x : {-0.85, 0.2}) {
      for (const double z : {-0.45, 0.4}) {
        table.Box({x, 0.0, z}, {x + 0.05, 0.40, z + 0.05});
      }
    }
    a.Object("coffee_table", "table", m_table, {table.Build()});
  }
  a.Object("vase", "other", m_vase, SphereLods({-0.3, 0.53, 0.0}, 0.08));
  a.Object("rug", "rug", m_rug, {BoxMesh({-2.0, 0.0, -1.6}, {1.2, 0.01, 1.6})});
  {
    MeshBuilder chair;
    const Vec3 o(0.8, 0.0, 1.3);
    chair.Box(o + Vec3(0, 0.42, 0), o + Vec3(0.5, 0.47, 0.5));
    chair.Box(o + Vec3(0, 0.47, 0.45), o + Vec3(0.5, 1.0, 0.5));
    for (const double x : {0.0, 0.45}) {
      for (const double z : {0.0, 0.45}) {
        chair.Box(o + Vec3(x, 0, z), o + Vec3(x + 0.05, 0.42, z + 0.05));
      }
    }
    a.Object("chair", "chair", m_chair, {chair.Build()});
  }

  // Plant in the corner by the window.
  a.Object("plant_pot", "plant", m_pot,
           {BoxMesh({-2.75, 0.0, 1.7}, {-2.45, 0.35, 2.0})});
  a.Object("plant_foliage", "plant", m_plant,
           SphereLods({-2.6, 0.75, 1.85}, 0.38));

  // Floor lamp behind the couch corner.
  a.Object("lamp_stand", "lamp", m_lamp,
           {MeshBuilder()
                .Box({-2.75, 0.0, -1.95}, {-2.45, 0.03, -1.65})
                .Box({-2.62, 0.03, -1.82}, {-2.58, 1.45, -1.78})
                .Build()});
  a.Object("lamp_shade", "lamp", m_shade, SphereLods({-2.6, 1.6, -1.8}, 0.2));

  AddRoomProfiles(scene);
  ValidateScene(scene);
  return scene;
}

Scene MakeAbstractShapes() {
  Scene scene;
  scene.name = "abstract_shapes";
  for (const char* c : {"ground", "backdrop", "cube", "sphere", "pillar",
                        "slab", "orb"}) {
    scene.classes.emplace_back(c);
  }
  SceneAssembler a(scene);
  const auto ground_tex = a.Texture(Texture::Checker(
      "ground_grid", 256, 256, 8, {0.85, 0.85, 0.85}, {0.25, 0.25, 0.25}));
  const auto m_ground =
      a.Material("ground", Rgb::Ones(), 0.1, 16, 0.05, ground_tex);
  const auto m_backdrop = a.Material("backdrop", {0.7, 0.72, 0.75});
  const auto m_cube = a.Material("cube_red", {0.8, 0.15, 0.12}, 0.4, 48);
  const auto m_sphere =
      a.Material("sphere_chrome", {0.85, 0.85, 0.9}, 0.9, 128, 0.6);
  const auto m_pillar = a.Material("pillar_green", {0.2, 0.65, 0.3}, 0.2, 16);
  const auto m_slab = a.Material("slab_blue", {0.15, 0.3, 0.8}, 0.3, 32);
  const auto m_orb = a.Material("orb_yellow", {0.9, 0.8, 0.2}, 0.5, 64);

  a.Object("ground", "ground", m_ground,
           {MeshBuilder().Quad(1, 0.0, +1, -3.5, 3.5, -3.5, 3.5).Build()});
  a.Object("backdrop", "backdrop", m_backdrop,
           {MeshBuilder().Quad(2, 3.5, -1, -3.5, 3.5, 0.0, 3.0).Build()});
  a.Object("cube", "cube", m_cube, {BoxMesh({-1.8, 0.0, 0.8}, {-0.8, 1.0, 1.8})});
  a.Object("sphere", "sphere", m_sphere, SphereLods({0.6, 0.7, 1.6}, 0.7));
  a.Object("pillar", "pillar", m_pillar,
           {BoxMesh({1.9, 0.0, -0.4}, {2.3, 2.4, 0.0})});
  // Unit slab rotated 30 degrees about y and lifted on the ground.
  Mat4 slab = Mat4::Identity();
  slab.topLeftCorner<3, 3>() =
      Eigen::AngleAxisd(DegToRad(30.0), Vec3::UnitY()).toRotationMatrix();
  slab.topRightCorner<3, 1>() = Vec3(-1.6, 0.0, -1.2);
  a.Object("slab", "slab", m_slab,
           {BoxMesh({-0.6, 0.0, -0.3}, {0.6, 0.25, 0.3})}, slab);
  a.Object("orb", "orb", m_orb, SphereLods({0.2, 0.3, -0.6}, 0.3));

  LightingProfile day;
  day.name = "day";
  day.ambient = {0.45, 0.5, 0.6};
  Light sun;
  sun.direction = Vec3(-0.4, -1.0, 0.6).normalized();
  sun.color = {1.0, 0.96, 0.9};
  sun.intensity = 1.6;
  sun.radius = 0.04;
  day.lights.push_back(sun);

  LightingProfile night;
  night.name = "night";
  night.ambient = {0.02, 0.02, 0.05};
  Light bulb;
  bulb.kind = Light::Kind::kPoint;
  bulb.position = {0.0, 3.0, -1.0};
  bulb.color = {0.9, 0.9, 1.0};
  bulb.intensity = 9.0;
  bulb.radius = 0.2;
  night.lights.push_back(bulb);

  LightingProfile unlit;
  unlit.name = "unlit";
  unlit.ambient = {0.5, 0.5, 0.5};
  unlit.unlit = true;
  scene.profiles = {day, night, unlit};

  ValidateScene(scene);
  return scene;
}

}  // namespace

Scene MakeBuiltinScene(BuiltinScene which) {
  switch (which) {
    case BuiltinScene::kBrownRoom:
      return MakeRoom("brown_room", BrownPalette());
    case BuiltinScene::kBlueRoom:
      return MakeRoom("blue_room", BluePalette());
    case BuiltinScene::kAbstractShapes:
      return MakeAbstractShapes();
  }
  throw Error("unknown builtin scene");
}

std::optional<BuiltinScene> BuiltinSceneFromName(std::string_view name) {
  if (name == "brown_room") return BuiltinScene::kBrownRoom;
  if (name == "blue_room") return BuiltinScene::kBlueRoom;
  if (name == "abstract_shapes") return BuiltinScene::kAbstractShapes;
  return std::nullopt;
}

std::string BuiltinSceneName(BuiltinScene which) {
  switch (which) {
    case BuiltinScene::kBrownRoom:
      return "brown_room";
    case BuiltinScene::kBlueRoom:
      return "blue_room";
    case BuiltinScene::kAbstractShapes:
      return "abstract_shapes";
  }
  return {};
}

std::vector<std::string> BuiltinSceneNames() {
  return {"brown_room", "blue_room", "abstract_shapes"};
}

Scene ResolveScene(const std::string& spec) {
  constexpr std::string_view kPrefix = "builtin:";
  if (spec.rfind(kPrefix, 0) == 0) {
    const std::string name = spec.substr(kPrefix.size());
    const auto which = BuiltinSceneFromName(name);
    if (!which) throw Error("unknown builtin scene '" + name + "'");
    return MakeBuiltinScene(*which);
  }
  if (const auto which = BuiltinSceneFromName(spec);
      which && !std::filesystem::exists(spec)) {
    return MakeBuiltinScene(*which);
  }
  return LoadSceneFile(spec);
}

}  // namespace aip
