#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "aip/math.hpp"
#include "aip/scene.hpp"

namespace aip {

struct Ray {
  Vec3 origin = Vec3::Zero();
  Vec3 direction = Vec3::UnitZ();  // unit length for primary rays
  double t_min = 0.0;
  double t_max = kInf;
};

inline constexpr std::uint32_t kNoObject =
    std::numeric_limits<std::uint32_t>::max();

struct Hit {
  double t = kInf;
  std::uint32_t object = kNoObject;
  std::uint32_t triangle = 0;  // index within the object's selected LOD mesh
  std::uint32_t primitive = 0;  // index into AccelStructure::triangles()
  double u = 0.0;  // barycentric weight of vertex 1
  double v = 0.0;  // barycentric weight of vertex 2

  bool valid() const { return object != kNoObject; }
};

// Strict preference: nearer t wins; exact ties go to the lower object id,
// then the lower triangle id.
inline bool PreferHit(const Hit& a, const Hit& b) {
  if (a.t != b.t) return a.t < b.t;
  if (a.object != b.object) return a.object < b.object;
  return a.triangle < b.triangle;
}

// World-space triangle in the form the Moller-Trumbore test wants.
struct WorldTriangle {
  Vec3 v0;
  Vec3 e1;  // v1 - v0
  Vec3 e2;  // v2 - v0
  std::uint32_t object = 0;
  std::uint32_t triangle = 0;
};

// Moller-Trumbore, two-sided. Accepts t in the open interval
// (ray.t_min, ray.t_max).
bool IntersectTriangle(const WorldTriangle& tri, const Ray& ray, double* t,
                       double* u, double* v);

// Surface attributes at a hit, normals facing back toward the ray origin.
struct SurfacePoint {
  Vec3 position;
  Vec3 geometric_normal;
  Vec3 shading_normal;
  Vec2 uv;
  std::size_t material = 0;
  std::uint8_t class_id = 0;
  std::uint32_t object = kNoObject;
  // Base-level texels per meter along the surface; 0 if untextured.
  double texel_density = 0.0;
};

// Bounding volume hierarchy over the triangles of one LOD selection. Immutable
// after construction and safe to query from many threads.
class AccelStructure {
 public:
  AccelStructure(const Scene& scene, int lod_index);

  Hit Intersect(const Ray& ray) const;
  bool Occluded(const Ray& ray) const;
  SurfacePoint Surface(const Ray& ray, const Hit& hit) const;

  int lod_index() const { return lod_index_; }
  const std::vector<WorldTriangle>& triangles() const { return triangles_; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Aabb box;
    std::uint32_t first = 0;  // leaf: first index into order_; inner: right
    std::uint32_t count = 0;  // > 0 for leaves
    int axis = 0;
  };

  std::uint32_t Build(std::uint32_t begin, std::uint32_t end);
  void TestLeaf(const Node& node, const Ray& ray, Hit* best) const;

  const Scene* scene_;
  int lod_index_;
  std::vector<WorldTriangle> triangles_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::vector<Eigen::Matrix3d> normal_matrices_;  // per object
  std::vector<double> texel_density_;             // per triangle
};

}  // namespace aip
