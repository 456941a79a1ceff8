#include <gtest/gtest.h>

#include "aip/error.hpp"
#include "aip/mesh.hpp"

namespace aip {
namespace {

TriangleMesh SampleMesh() {
  TriangleMesh m;
  for (int i = 0; i < 4; ++i) {
    Vertex v;
    v.position = Eigen::Vector3f(float(i), float(i * i) * 0.5f, -1.25f * i);
    v.normal = Eigen::Vector3f(0, 1, 0);
    v.uv = Eigen::Vector2f(0.25f * i, 1.0f - 0.25f * i);
    m.vertices.push_back(v);
  }
  m.triangles = {{0, 1, 2}, {0, 2, 3}};
  return m;
}

TEST(MeshSidecar, RoundTrip) {
  const TriangleMesh m = SampleMesh();
  const auto bytes = EncodeMeshSidecar(m);
  EXPECT_EQ(bytes.size(), 12u + 4u * (3 + 3 + 2) * 4 + 4u * 6);
  EXPECT_EQ(DecodeMeshSidecar(bytes), m);
}

TEST(MeshSidecar, RejectsCorruptInput) {
  auto bytes = EncodeMeshSidecar(SampleMesh());
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  EXPECT_THROW(DecodeMeshSidecar(bad_magic), Error);
  auto truncated = bytes;
  truncated.pop_back();
  EXPECT_THROW(DecodeMeshSidecar(truncated), Error);
  auto bad_index = bytes;
  bad_index[bad_index.size() - 4] = 9;  // last index -> 9 >= vertex count
  EXPECT_THROW(DecodeMeshSidecar(bad_index), Error);
}

}  // namespace
}  // namespace aip
