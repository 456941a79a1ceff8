#include "aip/scene_format.hpp"

#include <map>
#include <sstream>

#include "aip/error.hpp"
#include "aip/image_io.hpp"
#include "aip/text.hpp"

namespace aip {
namespace {

using text::Line;
using text::LineReader;

constexpr std::string_view kHeader = "aipscene";

Rgb ReadRgb(LineReader& r) {
  const double red = r.Double();
  const double green = r.Double();
  const double blue = r.Double();
  return {red, green, blue};
}

std::string Name(LineReader& r) { return std::string(r.Word()); }

struct PendingLight {
  std::string profile;
  Light light;
  int line = 0;
};

class SceneParser {
 public:
  SceneParser(std::string_view source, std::filesystem::path base_dir)
      : lines_(text::Tokenize(source)), base_dir_(std::move(base_dir)) {}

  Scene Parse() {
    if (lines_.empty()) throw ParseError("empty scene file", 1, 0);
    ParseHeader(lines_.front());
    std::size_t i = 1;
    while (i < lines_.size()) {
      const Line& line = lines_[i];
      const std::string_view keyword = line[0].text;
      LineReader r(line, 1);
      if (keyword == "name") {
        scene_.name = Name(r);
      } else if (keyword == "camera") {
        scene_.camera_defaults.width = static_cast<int>(r.Int());
        scene_.camera_defaults.height = static_cast<int>(r.Int());
        scene_.camera_defaults.vertical_fov = r.Double();
        scene_.camera_defaults.near = r.Double();
      } else if (keyword == "max_range") {
        scene_.max_range = r.Double();
      } else if (keyword == "bounds") {
        for (int k = 0; k < 3; ++k) scene_.bounds.min[k] = r.Double();
        for (int k = 0; k < 3; ++k) scene_.bounds.max[k] = r.Double();
        if (!scene_.bounds.valid()) r.Fail("bounds min exceeds max");
      } else if (keyword == "class") {
        ParseClass(r);
      } else if (keyword == "texture") {
        ParseTexture(r);
      } else if (keyword == "material") {
        ParseMaterial(r);
      } else if (keyword == "profile") {
        ParseProfile(r);
      } else if (keyword == "light") {
        ParseLight(r, line.number);
      } else if (keyword == "object") {
        i = ParseObject(i);
        continue;
      } else {
        LineReader(line).FailAt(line[0], "unknown statement '" +
                                             std::string(keyword) + "'");
      }
      r.ExpectEnd();
      ++i;
    }
    ResolveLights();
    ValidateScene(scene_);
    return std::move(scene_);
  }

 private:
  void ParseHeader(const Line& line) {
    LineReader r(line);
    const text::Token& first = r.Peek();
    if (first.text != kHeader) {
      r.FailAt(first, "missing 'aipscene v1' header");
    }
    r.Word();
    const text::Token& version = r.Peek();
    if (version.text != "v1") {
      r.FailAt(version, "unsupported scene version '" +
                            std::string(version.text) + "'");
    }
    r.Word();
    r.ExpectEnd();
  }

  void ParseClass(LineReader& r) {
    const text::Token& token = r.Peek();
    std::string name = Name(r);
    if (scene_.FindClass(name)) r.FailAt(token, "duplicate class '" + name + "'");
    if (scene_.classes.size() >= kMaxClasses) {
      r.FailAt(token, "more than 256 classes");
    }
    scene_.classes.push_back(std::move(name));
  }

  void ParseTexture(LineReader& r) {
    const text::Token& name_token = r.Peek();
    std::string name = Name(r);
    if (textures_.count(name)) {
      r.FailAt(name_token, "duplicate texture '" + name + "'");
    }
    const text::Token& kind = r.Peek();
    const std::string_view kind_text = r.Word();
    if (kind_text == "checker") {
      const auto w = r.Int();
      const auto h = r.Int();
      const auto tiles = r.Int();
      const Rgb a = ReadRgb(r);
      const Rgb b = ReadRgb(r);
      if (w <= 0 || h <= 0 || tiles <= 0 || w > 8192 || h > 8192) {
        r.FailAt(kind, "checker dimensions out of range");
      }
      scene_.textures.push_back(Texture::Checker(
          name, static_cast<int>(w), static_cast<int>(h),
          static_cast<int>(tiles), a, b));
    } else if (kind_text == "file") {
      const text::Token& path_token = r.Peek();
      const std::string path = Name(r);
      ImageRgb8 pixels;
      try {
        pixels = ReadPngRgb8(base_dir_ / path);
      } catch (const IoError& e) {
        r.FailAt(path_token, e.what());
      }
      ImageRgbF base(pixels.width, pixels.height);
      for (std::size_t k = 0; k < pixels.data.size(); ++k) {
        base.data[k] = static_cast<float>(pixels.data[k]) / 255.0f;
      }
      TextureSource source;
      source.kind = TextureSource::Kind::kFile;
      source.path = path;
      scene_.textures.emplace_back(name, std::move(source), std::move(base));
    } else {
      r.FailAt(kind, "unknown texture kind '" + std::string(kind_text) + "'");
    }
    textures_[name] = scene_.textures.size() - 1;
  }

  void ParseMaterial(LineReader& r) {
    const text::Token& name_token = r.Peek();
    Material m;
    m.name = Name(r);
    if (materials_.count(m.name)) {
      r.FailAt(name_token, "duplicate material '" + m.name + "'");
    }
    r.Expect("albedo");
    m.albedo = ReadRgb(r);
    while (!r.done()) {
      const text::Token& key = r.Peek();
      const std::string_view word = r.Word();
      if (word == "specular") {
        m.specular_strength = r.Double();
      } else if (word == "shininess") {
        m.shininess = r.Double();
        if (!(m.shininess > 0)) r.FailAt(key, "shininess must be positive");
      } else if (word == "reflectivity") {
        m.reflectivity = r.Double();
      } else if (word == "texture") {
        const text::Token& tex = r.Peek();
        const std::string tex_name = Name(r);
        const auto it = textures_.find(tex_name);
        if (it == textures_.end()) {
          r.FailAt(tex, "unknown texture '" + tex_name + "'");
        }
        m.texture = it->second;
      } else {
        r.FailAt(key, "unknown material attribute '" + std::string(word) +
                          "'");
      }
    }
    materials_[m.name] = scene_.materials.size();
    scene_.materials.push_back(std::move(m));
  }

  void ParseProfile(LineReader& r) {
    const text::Token& name_token = r.Peek();
    LightingProfile p;
    p.name = Name(r);
    if (scene_.FindProfile(p.name)) {
      r.FailAt(name_token, "duplicate lighting profile '" + p.name + "'");
    }
    r.Expect("ambient");
    p.ambient = ReadRgb(r);
    p.unlit = r.Accept("unlit");
    scene_.profiles.push_back(std::move(p));
  }

  void ParseLight(LineReader& r, int line_number) {
    PendingLight pending;
    pending.line = line_number;
    pending.profile = Name(r);
    const text::Token& kind = r.Peek();
    const std::string_view kind_text = r.Word();
    Light& light = pending.light;
    if (kind_text == "directional") {
      light.kind = Light::Kind::kDirectional;
      for (int k = 0; k < 3; ++k) light.direction[k] = r.Double();
      if (!(light.direction.norm() > 0)) {
        r.FailAt(kind, "directional light needs a nonzero direction");
      }
    } else if (kind_text == "point") {
      light.kind = Light::Kind::kPoint;
      for (int k = 0; k < 3; ++k) light.position[k] = r.Double();
    } else {
      r.FailAt(kind, "unknown light kind '" + std::string(kind_text) + "'");
    }
    r.Expect("color");
    light.color = ReadRgb(r);
    r.Expect("intensity");
    const text::Token& intensity = r.Peek();
    light.intensity = r.Double();
    if (light.intensity < 0) r.FailAt(intensity, "negative light intensity");
    if (r.Accept("radius")) {
      const text::Token& radius = r.Peek();
      light.radius = r.Double();
      if (light.radius < 0) r.FailAt(radius, "negative light radius");
    }
    pending_lights_.push_back(std::move(pending));
  }

  void ResolveLights() {
    for (PendingLight& pending : pending_lights_) {
      LightingProfile* target = nullptr;
      for (LightingProfile& p : scene_.profiles) {
        if (p.name == pending.profile) target = &p;
      }
      if (!target) {
        throw ParseError("missing lighting profile '" + pending.profile + "'",
                         pending.line, 0);
      }
      target->lights.push_back(std::move(pending.light));
    }
    if (scene_.profiles.empty()) {
      throw ParseError("missing lighting profile: none declared",
                       lines_.back().number, 0);
    }
  }

  // Returns the index of the line after the object's `end`.
  std::size_t ParseObject(std::size_t i) {
    const Line& head = lines_[i];
    LineReader r(head, 1);
    SceneObject object;
    const text::Token& id_token = r.Peek();
    object.id = Name(r);
    if (object_ids_.count(object.id)) {
      r.FailAt(id_token, "duplicate object id '" + object.id + "'");
    }
    object_ids_[object.id] = scene_.objects.size();
    r.Expect("class");
    const text::Token& class_token = r.Peek();
    const std::string class_text = Name(r);
    if (const auto id = text::ParseInt(class_text)) {
      if (*id < 0 || static_cast<std::size_t>(*id) >= scene_.classes.size()) {
        r.FailAt(class_token, "class id out of range");
      }
      object.class_id = static_cast<std::uint8_t>(*id);
    } else if (const auto id = scene_.FindClass(class_text)) {
      object.class_id = *id;
    } else {
      r.FailAt(class_token, "unknown class name '" + class_text + "'");
    }
    r.Expect("material");
    const text::Token& material_token = r.Peek();
    const std::string material = Name(r);
    const auto it = materials_.find(material);
    if (it == materials_.end()) {
      r.FailAt(material_token, "unknown material '" + material + "'");
    }
    object.material = it->second;
    r.ExpectEnd();

    ++i;
    while (true) {
      if (i >= lines_.size()) {
        throw ParseError("object '" + object.id + "' is missing 'end'",
                         head.number, 0);
      }
      const Line& line = lines_[i];
      const std::string_view keyword = line[0].text;
      LineReader lr(line, 1);
      if (keyword == "end") {
        lr.ExpectEnd();
        ++i;
        break;
      }
      if (keyword == "transform") {
        Mat4 m = Mat4::Identity();
        for (int row = 0; row < 3; ++row) {
          for (int col = 0; col < 4; ++col) m(row, col) = lr.Double();
        }
        lr.ExpectEnd();
        const double det = m.topLeftCorner<3, 3>().determinant();
        if (!(std::abs(det) > 1e-12)) {
          lr.FailAt(line[0], "non-invertible transform");
        }
        object.transform = m;
        ++i;
      } else if (keyword == "lod") {
        if (lr.Accept("file")) {
          const text::Token& path_token = lr.Peek();
          const std::string path = Name(lr);
          lr.ExpectEnd();
          try {
            object.lods.push_back(ReadMeshSidecar(base_dir_ / path));
          } catch (const IoError& e) {
            lr.FailAt(path_token, e.what());
          }
          ++i;
        } else {
          lr.ExpectEnd();
          i = ParseInlineMesh(i + 1, object);
        }
      } else {
        lr.FailAt(line[0], "unknown object statement '" +
                               std::string(keyword) + "'");
      }
    }
    if (object.lods.empty()) {
      throw ParseError("object '" + object.id + "' has no lod", head.number,
                       0);
    }
    CheckTriangles(object, head.number);
    scene_.objects.push_back(std::move(object));
    return i;
  }

  std::size_t ParseInlineMesh(std::size_t i, SceneObject& object) {
    TriangleMesh mesh;
    const int start_line = lines_[i - 1].number;
    while (true) {
      if (i >= lines_.size()) {
        throw ParseError("lod is missing 'end'", start_line, 0);
      }
      const Line& line = lines_[i];
      const std::string_view keyword = line[0].text;
      LineReader r(line, 1);
      if (keyword == "end") {
        r.ExpectEnd();
        ++i;
        break;
      }
      if (keyword == "v") {
        Vertex v;
        for (int k = 0; k < 3; ++k) v.position[k] = r.Float();
        if (r.Accept("n")) {
          for (int k = 0; k < 3; ++k) v.normal[k] = r.Float();
        }
        if (r.Accept("uv")) {
          for (int k = 0; k < 2; ++k) v.uv[k] = r.Float();
        }
        r.ExpectEnd();
        mesh.vertices.push_back(v);
      } else if (keyword == "f") {
        Triangle t{};
        for (auto& index : t) {
          const text::Token& token = r.Peek();
          const auto value = r.Int();
          if (value < 0 ||
              static_cast<std::size_t>(value) >= mesh.vertices.size()) {
            r.FailAt(token, "vertex index out of range");
          }
          index = static_cast<std::uint32_t>(value);
        }
        r.ExpectEnd();
        mesh.triangles.push_back(t);
      } else {
        r.FailAt(line[0],
                 "unknown mesh statement '" + std::string(keyword) + "'");
      }
      ++i;
    }
    if (mesh.triangles.empty()) {
      throw ParseError("lod has no triangles", start_line, 0);
    }
    object.lods.push_back(std::move(mesh));
    return i;
  }

  void CheckTriangles(const SceneObject& object, int line) {
    for (std::size_t l = 0; l < object.lods.size(); ++l) {
      const TriangleMesh& mesh = object.lods[l];
      for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
        const Triangle& tri = mesh.triangles[t];
        for (std::uint32_t index : tri) {
          if (index >= mesh.vertices.size()) {
            throw ParseError("object '" + object.id +
                                 "': vertex index out of range",
                             line, 0);
          }
        }
        const Vec3 a = TransformPoint(
            object.transform, mesh.vertices[tri[0]].position.cast<double>());
        const Vec3 b = TransformPoint(
            object.transform, mesh.vertices[tri[1]].position.cast<double>());
        const Vec3 c = TransformPoint(
            object.transform, mesh.vertices[tri[2]].position.cast<double>());
        if (!(0.5 * (b - a).cross(c - a).norm() > kMinTriangleArea)) {
          throw ParseError("object '" + object.id + "': degenerate triangle " +
                               std::to_string(t) + " in lod " +
                               std::to_string(l),
                           line, 0);
        }
      }
    }
  }

  std::vector<Line> lines_;
  std::filesystem::path base_dir_;
  Scene scene_;
  std::map<std::string, std::size_t> textures_;
  std::map<std::string, std::size_t> materials_;
  std::map<std::string, std::size_t> object_ids_;
  std::vector<PendingLight> pending_lights_;
};

std::string D(double v) { return text::FormatDouble(v); }
std::string F(float v) { return text::FormatFloat(v); }
std::string D3(const Vec3& v) { return D(v.x()) + " " + D(v.y()) + " " + D(v.z()); }

}  // namespace

Scene ParseScene(std::string_view source, const std::filesystem::path& base_dir) {
  return SceneParser(source, base_dir).Parse();
}

Scene LoadSceneFile(const std::filesystem::path& path) {
  return ParseScene(ReadTextFile(path), path.parent_path());
}

std::string SerializeScene(const Scene& scene) {
  std::ostringstream out;
  out << "aipscene v1\n";
  out << "name " << scene.name << "\n";
  const CameraIntrinsics& cam = scene.camera_defaults;
  out << "camera " << cam.width << " " << cam.height << " "
      << D(cam.vertical_fov) << " " << D(cam.near) << "\n";
  out << "max_range " << D(scene.max_range) << "\n";
  if (scene.bounds.valid()) {
    out << "bounds " << D3(scene.bounds.min) << " " << D3(scene.bounds.max)
        << "\n";
  }
  for (std::size_t c = 1; c < scene.classes.size(); ++c) {
    out << "class " << scene.classes[c] << "\n";
  }
  for (const Texture& t : scene.textures) {
    const TextureSource& s = t.source();
    out << "texture " << t.name();
    if (s.kind == TextureSource::Kind::kChecker) {
      out << " checker " << s.width << " " << s.height << " " << s.tiles << " "
          << D3(s.color_a) << " " << D3(s.color_b) << "\n";
    } else {
      out << " file " << s.path << "\n";
    }
  }
  for (const Material& m : scene.materials) {
    out << "material " << m.name << " albedo " << D3(m.albedo) << " specular "
        << D(m.specular_strength) << " shininess " << D(m.shininess)
        << " reflectivity " << D(m.reflectivity);
    if (m.texture) out << " texture " << scene.textures[*m.texture].name();
    out << "\n";
  }
  for (const LightingProfile& p : scene.profiles) {
    out << "profile " << p.name << " ambient " << D3(p.ambient)
        << (p.unlit ? " unlit" : "") << "\n";
  }
  for (const LightingProfile& p : scene.profiles) {
    for (const Light& l : p.lights) {
      out << "light " << p.name;
      if (l.kind == Light::Kind::kDirectional) {
        out << " directional " << D3(l.direction);
      } else {
        out << " point " << D3(l.position);
      }
      out << " color " << D3(l.color) << " intensity " << D(l.intensity)
          << " radius " << D(l.radius) << "\n";
    }
  }
  for (const SceneObject& o : scene.objects) {
    const std::string& cls = scene.classes[o.class_id];
    out << "object " << o.id << " class "
        << (text::ParseInt(cls) ? std::to_string(o.class_id) : cls)
        << " material " << scene.materials[o.material].name << "\n";
    if (o.transform != Mat4::Identity()) {
      out << "  transform";
      for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 4; ++col) out << " " << D(o.transform(row, col));
      }
      out << "\n";
    }
    for (const TriangleMesh& mesh : o.lods) {
      out << "  lod\n";
      for (const Vertex& v : mesh.vertices) {
        out << "    v " << F(v.position.x()) << " " << F(v.position.y()) << " "
            << F(v.position.z());
        if (v.normal != Eigen::Vector3f::Zero()) {
          out << " n " << F(v.normal.x()) << " " << F(v.normal.y()) << " "
              << F(v.normal.z());
        }
        if (v.uv != Eigen::Vector2f::Zero()) {
          out << " uv " << F(v.uv.x()) << " " << F(v.uv.y());
        }
        out << "\n";
      }
      for (const Triangle& t : mesh.triangles) {
        out << "    f " << t[0] << " " << t[1] << " " << t[2] << "\n";
      }
      out << "  end\n";
    }
    out << "end\n";
  }
  return out.str();
}

}  // namespace aip
