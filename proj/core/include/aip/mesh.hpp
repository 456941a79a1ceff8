#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <vector>

#include <Eigen/Core>

namespace aip {

// Vertex attributes are single precision, matching the binary sidecar. A zero
// normal means "use the flat face normal".
struct Vertex {
  Eigen::Vector3f position = Eigen::Vector3f::Zero();
  Eigen::Vector3f normal = Eigen::Vector3f::Zero();
  Eigen::Vector2f uv = Eigen::Vector2f::Zero();

  bool operator==(const Vertex&) const = default;
};

using Triangle = std::array<std::uint32_t, 3>;

struct TriangleMesh {
  std::vector<Vertex> vertices;
  std::vector<Triangle> triangles;

  bool operator==(const TriangleMesh&) const = default;
};

// Binary sidecar:
//   "AIPM" | u32 vertex_count | u32 index_count |
//   f32 positions[3V] | f32 normals[3V] | f32 uvs[2V] | u32 indices[I]
// all little-endian. index_count must be a multiple of 3.
std::vector<std::uint8_t> EncodeMeshSidecar(const TriangleMesh& mesh);
TriangleMesh DecodeMeshSidecar(const std::vector<std::uint8_t>& bytes);

TriangleMesh ReadMeshSidecar(const std::filesystem::path& path);
void WriteMeshSidecar(const std::filesystem::path& path,
                      const TriangleMesh& mesh);

}  // namespace aip
