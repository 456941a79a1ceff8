#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "aip/scene.hpp"

namespace aip::testing {

// Scene scaffolding: classes {other, thing}, one gray material, profiles
// "day" (one directional light from above), "night" (one point light) and
// "unlit". Objects are added by the caller, then ValidateScene must run.
Scene EmptyScene(const std::string& name = "fixture");

TriangleMesh QuadMesh(const Vec3& a, const Vec3& b, const Vec3& c,
                      const Vec3& d);

// An axis-aligned box; triangles wind counter-clockwise seen from outside,
// or from inside when `inward` is set (room shells).
TriangleMesh BoxMesh(const Vec3& lo, const Vec3& hi, bool inward = false);

// A square of side 2*half in the plane z = distance, facing -z.
Scene QuadAheadScene(double distance = 5.0, double half = 50.0);

// Up to `max_triangles` random triangles spread over a few objects with
// random rigid transforms, all within [-2, 2]^3 around (0, 0, 4).
Scene RandomTriangleScene(std::uint64_t seed, int max_triangles = 50);

// A 6 x 3 x 6 m box room centered on the origin (floor at y = 0) with one
// interior wall at z = 1 spanning the full width.
Scene WallRoomScene();

// Fresh empty directory under the test temp root.
std::filesystem::path FreshDir(const std::string& name);

}  // namespace aip::testing
