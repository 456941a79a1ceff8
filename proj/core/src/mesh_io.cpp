#include "aip/mesh.hpp"

#include <bit>
#include <cstring>

#include "aip/error.hpp"
#include "aip/image_io.hpp"

namespace aip {
namespace {

static_assert(std::endian::native == std::endian::little,
              "sidecar I/O assumes a little-endian host");

constexpr char kMagic[4] = {'A', 'I', 'P', 'M'};

template <typename T>
void Put(std::vector<std::uint8_t>& out, T value) {
  const auto* p = reinterpret_cast<const std::uint8_t*>(&value);
  out.insert(out.end(), p, p + sizeof(T));
}

class Cursor {
 public:
  explicit Cursor(const std::vector<std::uint8_t>& bytes) : bytes_(bytes) {}

  template <typename T>
  T Get() {
    if (offset_ + sizeof(T) > bytes_.size()) {
      throw IoError("mesh sidecar: truncated");
    }
    T value;
    std::memcpy(&value, bytes_.data() + offset_, sizeof(T));
    offset_ += sizeof(T);
    return value;
  }

  bool done() const { return offset_ == bytes_.size(); }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t offset_ = 0;
};

}  // namespace

std::vector<std::uint8_t> EncodeMeshSidecar(const TriangleMesh& mesh) {
  std::vector<std::uint8_t> out(std::begin(kMagic), std::end(kMagic));
  Put(out, static_cast<std::uint32_t>(mesh.vertices.size()));
  Put(out, static_cast<std::uint32_t>(mesh.triangles.size() * 3));
  for (const Vertex& v : mesh.vertices) {
    for (int i = 0; i < 3; ++i) Put(out, v.position[i]);
  }
  for (const Vertex& v : mesh.vertices) {
    for (int i = 0; i < 3; ++i) Put(out, v.normal[i]);
  }
  for (const Vertex& v : mesh.vertices) {
    for (int i = 0; i < 2; ++i) Put(out, v.uv[i]);
  }
  for (const Triangle& t : mesh.triangles) {
    for (std::uint32_t index : t) Put(out, index);
  }
  return out;
}

TriangleMesh DecodeMeshSidecar(const std::vector<std::uint8_t>& bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    throw IoError("mesh sidecar: bad magic");
  }
  std::vector<std::uint8_t> body(bytes.begin() + 4, bytes.end());
  Cursor cursor(body);
  const auto vertex_count = cursor.Get<std::uint32_t>();
  const auto index_count = cursor.Get<std::uint32_t>();
  if (index_count % 3 != 0) {
    throw IoError("mesh sidecar: index count not a multiple of 3");
  }
  const std::size_t expected = 8 + std::size_t{vertex_count} * 8 * 4 +
                               std::size_t{index_count} * 4;
  if (body.size() != expected) {
    throw IoError("mesh sidecar: size does not match header counts");
  }
  TriangleMesh mesh;
  mesh.vertices.resize(vertex_count);
  for (Vertex& v : mesh.vertices) {
    for (int i = 0; i < 3; ++i) v.position[i] = cursor.Get<float>();
  }
  for (Vertex& v : mesh.vertices) {
    for (int i = 0; i < 3; ++i) v.normal[i] = cursor.Get<float>();
  }
  for (Vertex& v : mesh.vertices) {
    for (int i = 0; i < 2; ++i) v.uv[i] = cursor.Get<float>();
  }
  mesh.triangles.resize(index_count / 3);
  for (Triangle& t : mesh.triangles) {
    for (std::uint32_t& index : t) {
      index = cursor.Get<std::uint32_t>();
      if (index >= vertex_count) {
        throw IoError("mesh sidecar: index out of range");
      }
    }
  }
  return mesh;
}

TriangleMesh ReadMeshSidecar(const std::filesystem::path& path) {
  try {
    return DecodeMeshSidecar(ReadFileBytes(path));
  } catch (const IoError& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

void WriteMeshSidecar(const std::filesystem::path& path,
                      const TriangleMesh& mesh) {
  WriteFileBytes(path, EncodeMeshSidecar(mesh));
}

}  // namespace aip
