#include <gtest/gtest.h>

#include "aip/accel.hpp"
#include "aip/builtin_scenes.hpp"
#include "aip/camera.hpp"
#include "aip/rng.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

namespace aip {
namespace {

void ExpectSameHit(const Hit& h, const testing::OracleHit& o, const char* where) {
  ASSERT_EQ(h.valid(), o.valid()) << where;
  if (!o.valid()) return;
  EXPECT_EQ(h.object, o.object) << where;
  EXPECT_EQ(h.triangle, o.triangle) << where;
  EXPECT_EQ(h.t, o.t) << where;
}

TEST(Accel, SingleTriangleThroughCentroid) {
  Scene s = testing::EmptyScene();
  SceneObject o;
  o.id = "tri";
  TriangleMesh m;
  Vertex a, b, c;
  a.position = {0, 0, 3};
  b.position = {1, 0, 3};
  c.position = {0, 1, 3};
  m.vertices = {a, b, c};
  m.triangles = {{0, 1, 2}};
  o.lods.push_back(m);
  s.objects.push_back(o);
  ValidateScene(s);
  const AccelStructure accel(s, 0);
  const Vec3 centroid(1.0 / 3, 1.0 / 3, 3.0);
  Ray ray;
  ray.direction = centroid.normalized();
  const Hit hit = accel.Intersect(ray);
  ASSERT_TRUE(hit.valid());
  EXPECT_NEAR(hit.t, centroid.norm(), 1e-12);
  EXPECT_NEAR(hit.u, 1.0 / 3, 1e-12);
  EXPECT_NEAR(hit.v, 1.0 / 3, 1e-12);

  Ray miss;
  miss.direction = Vec3(0, 0, -1);
  EXPECT_FALSE(accel.Intersect(miss).valid());
  EXPECT_FALSE(accel.Occluded(miss));
  EXPECT_TRUE(accel.Occluded(ray));
  ray.t_max = 1.0;
  EXPECT_FALSE(accel.Intersect(ray).valid());
}

TEST(Accel, MatchesBruteForceOnRandomScenes) {
  const CameraIntrinsics k{64, 64, 70.0, 0.05};
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Scene s = testing::RandomTriangleScene(seed, 50);
    const AccelStructure accel(s, 0);
    const testing::BruteForce oracle(s, 0);
    Pose pose;
    pose.position = Vec3(0.0, 0.0, 0.0);
    for (int y = 0; y < k.height; ++y) {
      for (int x = 0; x < k.width; ++x) {
        const Ray ray = PrimaryRay(k, pose, x, y);
        ExpectSameHit(accel.Intersect(ray), oracle.Intersect(ray), "grid");
      }
    }
  }
}

TEST(Accel, MatchesBruteForceOnRandomRaysInRoom) {
  const Scene s = MakeBuiltinScene(BuiltinScene::kBrownRoom);
  for (int lod : {0, 1, 2}) {
    const AccelStructure accel(s, lod);
    const testing::BruteForce oracle(s, lod);
    SplitMix64 rng(lod + 10);
    for (int i = 0; i < 3000; ++i) {
      Ray ray;
      ray.origin = Vec3(rng.Uniform(-2.5, 2.5), rng.Uniform(0.2, 2.5), rng.Uniform(-2, 2));
      Vec3 d;
      do {
        d = Vec3(rng.Uniform(-1, 1), rng.Uniform(-1, 1), rng.Uniform(-1, 1));
      } while (d.norm() < 0.1 || d.norm() > 1);
      ray.direction = d.normalized();
      ExpectSameHit(accel.Intersect(ray), oracle.Intersect(ray), "room");
      EXPECT_EQ(accel.Occluded(ray), oracle.Intersect(ray).valid());
    }
  }
}

TEST(Accel, CoincidentTrianglesBreakTiesByObjectThenTriangle) {
  Scene s = testing::EmptyScene();
  for (int i = 0; i < 3; ++i) {
    SceneObject o;
    o.id = "q" + std::to_string(i);
    TriangleMesh m = testing::QuadMesh(Vec3(-1, -1, 2), Vec3(-1, 1, 2), Vec3(1, 1, 2), Vec3(1, -1, 2));
    // Duplicate the triangles so ties also occur within one object.
    m.triangles.push_back(m.triangles[0]);
    m.triangles.push_back(m.triangles[1]);
    o.lods.push_back(m);
    s.objects.push_back(o);
  }
  // Object 0 sits at the back so the tie is between objects 1 and 2.
  s.objects[0].transform(2, 3) = 1.0;
  ValidateScene(s);
  const AccelStructure accel(s, 0);
  Ray ray;
  ray.direction = Vec3(0.1, 0.2, 1).normalized();
  const Hit hit = accel.Intersect(ray);
  ASSERT_TRUE(hit.valid());
  EXPECT_EQ(hit.object, 1u);
  EXPECT_LT(hit.triangle, 2u);
  const testing::BruteForce oracle(s, 0);
  ExpectSameHit(hit, oracle.Intersect(ray), "tie");
}

TEST(Accel, LodFallsBackToCoarsest) {
  const Scene s = MakeBuiltinScene(BuiltinScene::kBrownRoom);
  const AccelStructure coarse(s, 99);
  std::size_t expected = 0;
  for (const SceneObject& o : s.objects) expected += o.lods.back().triangles.size();
  EXPECT_EQ(coarse.triangles().size(), expected);
}

TEST(Accel, SurfaceNormalFacesRayOrigin) {
  const Scene s = testing::QuadAheadScene(5.0);
  const AccelStructure accel(s, 0);
  for (double z : {1.0, -1.0}) {
    Ray ray;
    ray.origin = Vec3(0, 0, z > 0 ? 0.0 : 10.0);
    ray.direction = Vec3(0, 0, z);
    const Hit hit = accel.Intersect(ray);
    ASSERT_TRUE(hit.valid());
    const SurfacePoint sp = accel.Surface(ray, hit);
    EXPECT_LT(sp.shading_normal.dot(ray.direction), 0.0);
    EXPECT_EQ(sp.position.z(), 5.0);
    EXPECT_EQ(sp.class_id, 1);
  }
}

}  // namespace
}  // namespace aip
