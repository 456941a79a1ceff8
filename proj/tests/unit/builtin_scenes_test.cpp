#include <gtest/gtest.h>

#include <set>

#include "aip/builtin_scenes.hpp"
#include "aip/error.hpp"

namespace aip {
namespace {

std::vector<Vec3> WorldVertices(const Scene& s) {
  std::vector<Vec3> out;
  for (const SceneObject& o : s.objects) {
    for (const TriangleMesh& m : o.lods) {
      for (const Vertex& v : m.vertices) {
        out.push_back(TransformPoint(o.transform, v.position.cast<double>()));
      }
    }
  }
  return out;
}

TEST(BuiltinScenes, BrownRoomHasFifteenNamedClassesPlusOther) {
  const Scene s = MakeBuiltinScene(BuiltinScene::kBrownRoom);
  ASSERT_EQ(s.classes.size(), 16u);
  EXPECT_EQ(s.classes[0], "other");
  for (const char* name : {"wall", "floor", "ceiling", "couch", "table", "TV", "plant",
                           "lamp", "window", "door", "chair", "rug", "shelf",
                           "picture", "curtain"}) {
    EXPECT_TRUE(s.FindClass(name).has_value()) << name;
  }
}

TEST(BuiltinScenes, BrownAndBlueShareGeometryButNotPalette) {
  const Scene brown = MakeBuiltinScene(BuiltinScene::kBrownRoom);
  const Scene blue = MakeBuiltinScene(BuiltinScene::kBlueRoom);
  ASSERT_EQ(brown.objects.size(), blue.objects.size());
  for (std::size_t i = 0; i < brown.objects.size(); ++i) {
    EXPECT_EQ(brown.objects[i].lods, blue.objects[i].lods);
    EXPECT_EQ(brown.objects[i].transform, blue.objects[i].transform);
    EXPECT_EQ(brown.objects[i].class_id, blue.objects[i].class_id);
  }
  bool any_albedo_differs = false;
  ASSERT_EQ(brown.materials.size(), blue.materials.size());
  for (std::size_t i = 0; i < brown.materials.size(); ++i) {
    any_albedo_differs |= brown.materials[i].albedo != blue.materials[i].albedo;
  }
  EXPECT_TRUE(any_albedo_differs);
  EXPECT_EQ(brown.bounds.min, blue.bounds.min);
  EXPECT_EQ(brown.bounds.max, blue.bounds.max);
}

TEST(BuiltinScenes, AbstractShapesClassesAreDistinct) {
  const Scene s = MakeBuiltinScene(BuiltinScene::kAbstractShapes);
  std::set<int> ids;
  for (const SceneObject& o : s.objects) {
    EXPECT_TRUE(ids.insert(o.class_id).second) << o.id;
  }
}

TEST(BuiltinScenes, EveryDeclaredClassIsUsed) {
  for (BuiltinScene which : {BuiltinScene::kBrownRoom, BuiltinScene::kBlueRoom,
                             BuiltinScene::kAbstractShapes}) {
    const Scene s = MakeBuiltinScene(which);
    std::set<int> used;
    for (const SceneObject& o : s.objects) used.insert(o.class_id);
    for (std::size_t id = 1; id < s.classes.size(); ++id) {
      EXPECT_TRUE(used.count(static_cast<int>(id))) << s.name << " " << s.classes[id];
    }
  }
}

TEST(BuiltinScenes, RoomFitsInsideDepthRange) {
  const auto vs = WorldVertices(MakeBuiltinScene(BuiltinScene::kBrownRoom));
  double max_distance = 0;
  // The farthest pair always involves extreme points; checking against the
  // bounding box corners is enough.
  Aabb box;
  for (const Vec3& v : vs) box.Extend(v);
  for (const Vec3& v : vs) {
    for (int corner = 0; corner < 8; ++corner) {
      const Vec3 c(corner & 1 ? box.max.x() : box.min.x(),
                   corner & 2 ? box.max.y() : box.min.y(),
                   corner & 4 ? box.max.z() : box.min.z());
      max_distance = std::max(max_distance, (v - c).norm());
    }
  }
  EXPECT_LE(max_distance, 10.0);
}

TEST(BuiltinScenes, ProfilesAndNames) {
  for (const std::string& name : BuiltinSceneNames()) {
    const Scene s = ResolveScene("builtin:" + name);
    EXPECT_EQ(s.name, name);
    for (const char* profile : {"day", "night", "unlit"}) {
      EXPECT_NE(s.FindProfile(profile), nullptr) << name << " " << profile;
    }
    EXPECT_EQ(ResolveScene(name), s);
  }
  EXPECT_FALSE(BuiltinSceneFromName("green_room"));
  EXPECT_THROW(ResolveScene("builtin:green_room"), Error);
}

TEST(BuiltinScenes, PlantHasCoarserLods) {
  const Scene s = MakeBuiltinScene(BuiltinScene::kBrownRoom);
  EXPECT_GE(s.MaxLodCount(), 2);
  for (const SceneObject& o : s.objects) {
    for (std::size_t i = 1; i < o.lods.size(); ++i) {
      EXPECT_LT(o.lods[i].triangles.size(), o.lods[i - 1].triangles.size()) << o.id;
    }
  }
}

}  // namespace
}  // namespace aip
