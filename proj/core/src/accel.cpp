#include "aip/accel.hpp"

#include <algorithm>
#include <array>
#include <numeric>

namespace aip {
namespace {

constexpr std::uint32_t kLeafSize = 4;
constexpr int kBins = 16;
constexpr double kEpsilon = std::numeric_limits<double>::epsilon() * 0.5;
constexpr double kGamma3 = 3 * kEpsilon / (1 - 3 * kEpsilon);

Aabb TriangleBox(const WorldTriangle& t) {
  Aabb box;
  box.Extend(t.v0);
  box.Extend(t.v0 + t.e1);
  box.Extend(t.v0 + t.e2);
  return box;
}

// Pads a box so the slab test can never reject a ray that the triangle test
// would accept.
Aabb Inflate(Aabb box) {
  const double scale =
      1.0 + std::max(box.min.cwiseAbs().maxCoeff(), box.max.cwiseAbs().maxCoeff());
  box.min.array() -= 1e-9 * scale;
  box.max.array() += 1e-9 * scale;
  return box;
}

double SurfaceArea(const Aabb& b) {
  if (!b.valid()) return 0.0;
  const Vec3 e = b.extent();
  return 2.0 * (e.x() * e.y() + e.y() * e.z() + e.z() * e.x());
}

// Returns the entry distance, or +inf on a miss. NaNs from 0 * inf never
// tighten the interval, so the test stays conservative.
double SlabEntry(const Aabb& box, const Vec3& origin, const Vec3& inv_dir,
                 double t_min, double t_max) {
  double t0 = t_min;
  double t1 = t_max;
  for (int a = 0; a < 3; ++a) {
    double near = (box.min[a] - origin[a]) * inv_dir[a];
    double far = (box.max[a] - origin[a]) * inv_dir[a];
    if (near > far) std::swap(near, far);
    far *= 1 + 2 * kGamma3;
    if (near > t0) t0 = near;
    if (far < t1) t1 = far;
    if (t0 > t1) return kInf;
  }
  return t0;
}

}  // namespace

bool IntersectTriangle(const WorldTriangle& tri, const Ray& ray, double* t,
                       double* u, double* v) {
  const Vec3 pvec = ray.direction.cross(tri.e2);
  const double det = tri.e1.dot(pvec);
  if (det == 0.0) return false;
  const double inv_det = 1.0 / det;
  const Vec3 tvec = ray.origin - tri.v0;
  const double uu = tvec.dot(pvec) * inv_det;
  if (uu < 0.0 || uu > 1.0) return false;
  const Vec3 qvec = tvec.cross(tri.e1);
  const double vv = ray.direction.dot(qvec) * inv_det;
  if (vv < 0.0 || uu + vv > 1.0) return false;
  const double tt = tri.e2.dot(qvec) * inv_det;
  if (!(tt > ray.t_min && tt < ray.t_max)) return false;
  *t = tt;
  *u = uu;
  *v = vv;
  return true;
}

AccelStructure::AccelStructure(const Scene& scene, int lod_index)
    : scene_(&scene), lod_index_(lod_index) {
  normal_matrices_.reserve(scene.objects.size());
  for (std::uint32_t o = 0; o < scene.objects.size(); ++o) {
    const SceneObject& object = scene.objects[o];
    const Eigen::Matrix3d linear = object.transform.topLeftCorner<3, 3>();
    normal_matrices_.push_back(linear.inverse().transpose());
    const TriangleMesh& mesh = object.lod(lod_index);
    const Material& material = scene.materials[object.material];
    const Texture* texture =
        material.texture ? &scene.textures[*material.texture] : nullptr;
    for (std::uint32_t t = 0; t < mesh.triangles.size(); ++t) {
      const Triangle& idx = mesh.triangles[t];
      const Vec3 a = TransformPoint(object.transform,
                                    mesh.vertices[idx[0]].position.cast<double>());
      const Vec3 b = TransformPoint(object.transform,
                                    mesh.vertices[idx[1]].position.cast<double>());
      const Vec3 c = TransformPoint(object.transform,
                                    mesh.vertices[idx[2]].position.cast<double>());
      triangles_.push_back({a, b - a, c - a, o, t});
      double density = 0.0;
      if (texture) {
        const Vec2 ta = mesh.vertices[idx[0]].uv.cast<double>();
        const Vec2 tb = mesh.vertices[idx[1]].uv.cast<double>();
        const Vec2 tc = mesh.vertices[idx[2]].uv.cast<double>();
        const Vec2 d1 = tb - ta;
        const Vec2 d2 = tc - ta;
        const double uv_area = 0.5 * std::abs(d1.x() * d2.y() - d1.y() * d2.x());
        const double world_area = 0.5 * (b - a).cross(c - a).norm();
        const ImageRgbF& base = texture->mips().front();
        density = std::sqrt(uv_area * base.width * base.height / world_area);
      }
      texel_density_.push_back(density);
    }
  }
  order_.resize(triangles_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  if (!triangles_.empty()) {
    nodes_.reserve(2 * triangles_.size() / kLeafSize + 1);
    Build(0, static_cast<std::uint32_t>(order_.size()));
  }
}

std::uint32_t AccelStructure::Build(std::uint32_t begin, std::uint32_t end) {
  const auto index = static_cast<std::uint32_t>(nodes_.size());
  nodes_.emplace_back();
  Aabb box;
  Aabb centroids;
  for (std::uint32_t i = begin; i < end; ++i) {
    const Aabb tb = TriangleBox(triangles_[order_[i]]);
    box.Extend(tb);
    centroids.Extend(tb.center());
  }
  nodes_[index].box = Inflate(box);

  const std::uint32_t count = end - begin;
  auto make_leaf = [&] {
    nodes_[index].first = begin;
    nodes_[index].count = count;
    return index;
  };
  if (count <= kLeafSize) return make_leaf();

  const Vec3 extent = centroids.extent();
  int axis = 0;
  if (extent.y() > extent[axis]) axis = 1;
  if (extent.z() > extent[axis]) axis = 2;
  if (!(extent[axis] > 0)) return make_leaf();

  // Binned SAH along the widest centroid axis.
  struct Bin {
    Aabb box;
    std::uint32_t count = 0;
  };
  std::array<Bin, kBins> bins{};
  auto bin_of = [&](std::uint32_t tri) {
    const double c = TriangleBox(triangles_[tri]).center()[axis];
    const int b = static_cast<int>(kBins * (c - centroids.min[axis]) /
                                   extent[axis]);
    return std::clamp(b, 0, kBins - 1);
  };
  for (std::uint32_t i = begin; i < end; ++i) {
    Bin& bin = bins[bin_of(order_[i])];
    bin.box.Extend(TriangleBox(triangles_[order_[i]]));
    ++bin.count;
  }
  double best_cost = kInf;
  int best_split = -1;
  for (int split = 1; split < kBins; ++split) {
    Aabb left, right;
    std::uint32_t nl = 0, nr = 0;
    for (int b = 0; b < split; ++b) {
      left.Extend(bins[b].box);
      nl += bins[b].count;
    }
    for (int b = split; b < kBins; ++b) {
      right.Extend(bins[b].box);
      nr += bins[b].count;
    }
    if (nl == 0 || nr == 0) continue;
    const double cost = SurfaceArea(left) * nl + SurfaceArea(right) * nr;
    if (cost < best_cost) {
      best_cost = cost;
      best_split = split;
    }
  }

  std::uint32_t mid;
  if (best_split > 0) {
    const auto it = std::stable_partition(
        order_.begin() + begin, order_.begin() + end,
        [&](std::uint32_t tri) { return bin_of(tri) < best_split; });
    mid = static_cast<std::uint32_t>(it - order_.begin());
  } else {
    mid = begin + count / 2;
    std::nth_element(order_.begin() + begin, order_.begin() + mid,
                     order_.begin() + end,
                     [&](std::uint32_t a, std::uint32_t b) {
                       return TriangleBox(triangles_[a]).center()[axis] <
                              TriangleBox(triangles_[b]).center()[axis];
                     });
  }
  if (mid == begin || mid == end) return make_leaf();

  nodes_[index].axis = axis;
  Build(begin, mid);  // left child is always index + 1
  nodes_[index].first = Build(mid, end);
  nodes_[index].count = 0;
  return index;
}

void AccelStructure::TestLeaf(const Node& node, const Ray& ray,
                              Hit* best) const {
  for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
    const std::uint32_t prim = order_[i];
    const WorldTriangle& tri = triangles_[prim];
    Hit candidate;
    if (!IntersectTriangle(tri, ray, &candidate.t, &candidate.u,
                           &candidate.v)) {
      continue;
    }
    candidate.object = tri.object;
    candidate.triangle = tri.triangle;
    candidate.primitive = prim;
    if (!best->valid() || PreferHit(candidate, *best)) *best = candidate;
  }
}

Hit AccelStructure::Intersect(const Ray& ray) const {
  Hit best;
  if (nodes_.empty()) return best;
  const Vec3 inv_dir = ray.direction.cwiseInverse();
  std::array<std::uint32_t, 128> stack{};
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    // Equal-distance boxes must still be visited to apply the tie-break.
    const double limit = best.valid() ? best.t : ray.t_max;
    if (SlabEntry(node.box, ray.origin, inv_dir, ray.t_min, limit) == kInf) {
      continue;
    }
    if (node.count > 0) {
      TestLeaf(node, ray, &best);
      continue;
    }
    const std::uint32_t left = static_cast<std::uint32_t>(&node - nodes_.data()) + 1;
    const std::uint32_t right = node.first;
    if (ray.direction[node.axis] < 0) {
      stack[top++] = left;
      stack[top++] = right;
    } else {
      stack[top++] = right;
      stack[top++] = left;
    }
  }
  return best;
}

bool AccelStructure::Occluded(const Ray& ray) const {
  if (nodes_.empty()) return false;
  const Vec3 inv_dir = ray.direction.cwiseInverse();
  std::array<std::uint32_t, 128> stack{};
  int top = 0;
  stack[top++] = 0;
  while (top > 0) {
    const Node& node = nodes_[stack[--top]];
    if (SlabEntry(node.box, ray.origin, inv_dir, ray.t_min, ray.t_max) == kInf) {
      continue;
    }
    if (node.count > 0) {
      for (std::uint32_t i = node.first; i < node.first + node.count; ++i) {
        double t, u, v;
        if (IntersectTriangle(triangles_[order_[i]], ray, &t, &u, &v)) {
          return true;
        }
      }
      continue;
    }
    stack[top++] = node.first;
    stack[top++] = static_cast<std::uint32_t>(&node - nodes_.data()) + 1;
  }
  return false;
}

SurfacePoint AccelStructure::Surface(const Ray& ray, const Hit& hit) const {
  const WorldTriangle& tri = triangles_[hit.primitive];
  const SceneObject& object = scene_->objects[hit.object];
  const TriangleMesh& mesh = object.lod(lod_index_);
  const Triangle& idx = mesh.triangles[hit.triangle];
  const Vertex& a = mesh.vertices[idx[0]];
  const Vertex& b = mesh.vertices[idx[1]];
  const Vertex& c = mesh.vertices[idx[2]];
  const double w = 1.0 - hit.u - hit.v;

  SurfacePoint s;
  // Edge form keeps points on axis-aligned planes exactly on the plane.
  s.position = tri.v0 + hit.u * tri.e1 + hit.v * tri.e2;
  s.geometric_normal = tri.e1.cross(tri.e2).normalized();
  if (s.geometric_normal.dot(ray.direction) > 0) {
    s.geometric_normal = -s.geometric_normal;
  }
  s.shading_normal = s.geometric_normal;
  if (a.normal != Eigen::Vector3f::Zero() &&
      b.normal != Eigen::Vector3f::Zero() &&
      c.normal != Eigen::Vector3f::Zero()) {
    const Vec3 local = w * a.normal.cast<double>() + hit.u * b.normal.cast<double>() +
                       hit.v * c.normal.cast<double>();
    Vec3 n = normal_matrices_[hit.object] * local;
    if (n.squaredNorm() > 0) {
      n.normalize();
      if (n.dot(s.geometric_normal) < 0) n = -n;
      s.shading_normal = n;
    }
  }
  s.uv = w * a.uv.cast<double>() + hit.u * b.uv.cast<double>() +
         hit.v * c.uv.cast<double>();
  s.material = object.material;
  s.class_id = object.class_id;
  s.object = hit.object;
  s.texel_density = texel_density_[hit.primitive];
  return s;
}

}  // namespace aip
