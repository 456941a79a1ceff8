#include "aip/render.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <thread>

#include "aip/annotate.hpp"
#include "aip/error.hpp"

namespace aip {
namespace {

constexpr double kSurfaceBias = 1e-5;
constexpr double kSecondaryTMin = 1e-7;

// Any unit vector perpendicular to n, plus their cross product.
void Basis(const Vec3& n, Vec3* t, Vec3* b) {
  const Vec3 helper = std::abs(n.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  *t = n.cross(helper).normalized();
  *b = n.cross(*t);
}

}  // namespace

void RenderSettings::Validate() const {
  if (!(render_scale > 0.0 && render_scale <= 1.0)) {
    throw Error("render_scale must be in (0, 1]");
  }
  if (mip_bias < 0) throw Error("mip_bias must be >= 0");
  if (shadow_samples < 1) throw Error("shadow_samples must be >= 1");
  if (reflection_depth < 0) throw Error("reflection_depth must be >= 0");
  if (aa_samples != 1 && aa_samples != 4) {
    throw Error("aa_samples must be 1 or 4");
  }
  if (lod_index < 0) throw Error("lod_index must be >= 0");
}

std::uint8_t QuantizeChannel(double c) {
  return static_cast<std::uint8_t>(std::round(255.0 * std::clamp(c, 0.0, 1.0)));
}

ImageRgb8 UpsampleBilinear(const ImageRgbF& src, int width, int height) {
  ImageRgb8 out(width, height);
  const double sx_scale = static_cast<double>(src.width) / width;
  const double sy_scale = static_cast<double>(src.height) / height;
  for (int y = 0; y < height; ++y) {
    const double sy = (y + 0.5) * sy_scale - 0.5;
    const double fy0 = std::floor(sy);
    const double wy = sy - fy0;
    const int y0 = std::clamp(static_cast<int>(fy0), 0, src.height - 1);
    const int y1 = std::clamp(static_cast<int>(fy0) + 1, 0, src.height - 1);
    for (int x = 0; x < width; ++x) {
      const double sx = (x + 0.5) * sx_scale - 0.5;
      const double fx0 = std::floor(sx);
      const double wx = sx - fx0;
      const int x0 = std::clamp(static_cast<int>(fx0), 0, src.width - 1);
      const int x1 = std::clamp(static_cast<int>(fx0) + 1, 0, src.width - 1);
      for (int c = 0; c < 3; ++c) {
        const double top = (1 - wx) * src.at(x0, y0, c) + wx * src.at(x1, y0, c);
        const double bottom =
            (1 - wx) * src.at(x0, y1, c) + wx * src.at(x1, y1, c);
        out.at(x, y, c) = QuantizeChannel((1 - wy) * top + wy * bottom);
      }
    }
  }
  return out;
}

void ParallelRows(int rows, int threads, const std::function<void(int)>& fn) {
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, rows);
  if (threads <= 1) {
    for (int y = 0; y < rows; ++y) fn(y);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (int i = 0; i < threads; ++i) {
    workers.emplace_back([&] {
      for (int y = next++; y < rows; y = next++) fn(y);
    });
  }
}

Renderer::Renderer(const Scene& scene) : scene_(&scene) {
  const int levels = scene.MaxLodCount();
  accels_.reserve(levels);
  for (int lod = 0; lod < levels; ++lod) accels_.emplace_back(scene, lod);
}

const AccelStructure& Renderer::accel(int lod_index) const {
  return accels_[static_cast<std::size_t>(
      std::clamp(lod_index, 0, static_cast<int>(accels_.size()) - 1))];
}

double Renderer::Visibility(const Vec3& origin, const Light& light,
                            const Vec3& to_light, double light_distance,
                            ShadeContext& ctx) const {
  const bool directional = light.kind == Light::Kind::kDirectional;
  auto blocked = [&](const Vec3& dir, double distance) {
    Ray shadow;
    shadow.origin = origin;
    shadow.direction = dir;
    shadow.t_min = kSecondaryTMin;
    shadow.t_max = directional ? kInf : distance * (1.0 - 1e-9);
    ++ctx.rays;
    return ctx.accel->Occluded(shadow);
  };

  // A point-like light gives the same answer for every sample.
  if (light.radius == 0.0) {
    return blocked(to_light, light_distance) ? 0.0 : 1.0;
  }

  Vec3 t, b;
  Basis(to_light, &t, &b);
  const int n = ctx.settings->shadow_samples;
  int visible = 0;
  for (int i = 0; i < n; ++i) {
    // Stratified in radius, random in angle.
    const double u1 = ctx.rng->Uniform();
    const double u2 = ctx.rng->Uniform();
    const double r = light.radius * std::sqrt((i + u1) / n);
    const double phi = 2.0 * kPi * u2;
    const Vec3 offset = r * (std::cos(phi) * t + std::sin(phi) * b);
    if (directional) {
      if (!blocked((to_light + offset).normalized(), kInf)) ++visible;
    } else {
      const Vec3 target = light.position + offset;
      const Vec3 delta = target - origin;
      const double distance = delta.norm();
      if (!blocked(delta / distance, distance)) ++visible;
    }
  }
  return static_cast<double>(visible) / n;
}

Rgb Renderer::Shade(const Ray& ray, const Hit& hit, int depth_budget,
                    double distance, ShadeContext& ctx) const {
  const SurfacePoint s = ctx.accel->Surface(ray, hit);
  const Material& material = scene_->materials[s.material];
  Rgb albedo = material.albedo;
  if (material.texture) {
    const Texture& texture = scene_->textures[*material.texture];
    const double footprint = (distance + hit.t) * ctx.pixel_angle * s.texel_density;
    int level = footprint > 1.0 ? static_cast<int>(std::floor(std::log2(footprint)))
                                : 0;
    level += ctx.settings->mip_bias;
    albedo = albedo.cwiseProduct(texture.Sample(s.uv, level));
  }
  const LightingProfile& profile = *ctx.profile;
  if (ctx.settings->shading == ShadingMode::kUnlit || profile.unlit) {
    return albedo;
  }

  const Vec3& n = s.shading_normal;
  const Vec3 view = -ray.direction;
  const Vec3 origin = s.position + kSurfaceBias * s.geometric_normal;
  Rgb color = profile.ambient.cwiseProduct(albedo);

  for (const Light& light : profile.lights) {
    Vec3 to_light;
    double light_distance = kInf;
    double attenuation = 1.0;
    if (light.kind == Light::Kind::kDirectional) {
      to_light = -light.direction;
    } else {
      const Vec3 delta = light.position - s.position;
      light_distance = delta.norm();
      if (!(light_distance > 0)) continue;
      to_light = delta / light_distance;
      attenuation = 1.0 / (light_distance * light_distance);
    }
    const double n_dot_l = n.dot(to_light);
    if (n_dot_l <= 0.0 || s.geometric_normal.dot(to_light) <= 0.0) continue;
    const double visibility =
        Visibility(origin, light, to_light, light_distance, ctx);
    if (visibility == 0.0) continue;
    const Vec3 half = (to_light + view).normalized();
    const double specular = material.specular_strength *
                            std::pow(std::max(0.0, n.dot(half)), material.shininess);
    const Rgb radiance = light.intensity * attenuation * light.color;
    color += visibility *
             radiance.cwiseProduct(albedo * n_dot_l + Rgb::Constant(specular));
  }

  if (material.reflectivity > 0.0 && depth_budget > 0) {
    Ray bounce;
    bounce.origin = origin;
    bounce.direction =
        (ray.direction - 2.0 * ray.direction.dot(n) * n).normalized();
    bounce.t_min = kSecondaryTMin;
    ++ctx.rays;
    const Hit next = ctx.accel->Intersect(bounce);
    const Rgb reflected =
        next.valid() ? Shade(bounce, next, depth_budget - 1, distance + hit.t, ctx)
                     : profile.ambient;
    color += material.reflectivity * reflected;
  }
  return color;
}

GroundTruth Renderer::RenderGroundTruth(const Pose& pose,
                                        const CameraIntrinsics& intrinsics,
                                        int threads) const {
  const int w = intrinsics.width;
  const int h = intrinsics.height;
  GroundTruth gt;
  gt.depth_persp = ImageGray16(w, h);
  gt.depth_ortho = ImageGray16(w, h);
  gt.normals = ImageRgb8(w, h);
  gt.labels = ImageGray8(w, h);
  gt.object_ids = ImageU32(w, h);
  const CameraFrame frame = MakeCameraFrame(pose);
  const AccelStructure& lod0 = accel(0);
  const DepthEncoding enc{scene_->max_range};

  ParallelRows(h, threads, [&](int y) {
    for (int x = 0; x < w; ++x) {
      const Ray ray = PrimaryRay(intrinsics, frame, x, y, 0.5, 0.5);
      const Hit hit = lod0.Intersect(ray);
      Rgb8 normal = kNoNormal;
      std::uint16_t persp = kDepthMiss;
      std::uint16_t ortho = kDepthMiss;
      if (hit.valid()) {
        const SurfacePoint s = lod0.Surface(ray, hit);
        persp = EncodeDepth(PerspectiveDepth(frame.origin, s.position), enc);
        ortho = EncodeDepth(
            OrthographicDepth(frame.origin, frame.forward, s.position), enc);
        normal = EncodeNormal(s.shading_normal);
      }
      gt.depth_persp.at(x, y) = persp;
      gt.depth_ortho.at(x, y) = ortho;
      for (int c = 0; c < 3; ++c) gt.normals.at(x, y, c) = normal[c];
      gt.labels.at(x, y) = LabelOf(*scene_, hit);
      gt.object_ids.at(x, y) = hit.object;
    }
  });
  return gt;
}

FrameOutput Renderer::Render(const Pose& pose, const std::string& profile_name,
                             const RenderSettings& settings,
                             const CameraIntrinsics& intrinsics,
                             std::uint64_t frame_seed, int threads) const {
  settings.Validate();
  const LightingProfile* profile = scene_->FindProfile(profile_name);
  if (!profile) throw Error("unknown profile '" + profile_name + "'");
  if (intrinsics.width <= 0 || intrinsics.height <= 0) {
    throw Error("image resolution must be positive");
  }

  CameraIntrinsics scaled = intrinsics;
  scaled.width = std::max(
      1, static_cast<int>(std::round(intrinsics.width * settings.render_scale)));
  scaled.height = std::max(
      1, static_cast<int>(std::round(intrinsics.height * settings.render_scale)));
  const double pixel_angle =
      2.0 * std::tan(DegToRad(intrinsics.vertical_fov) * 0.5) / scaled.height;

  const CameraFrame frame = MakeCameraFrame(pose);
  const AccelStructure& geometry = accel(settings.lod_index);
  ImageRgbF linear(scaled.width, scaled.height);
  std::vector<std::uint64_t> row_rays(scaled.height, 0);

  ParallelRows(scaled.height, threads, [&](int y) {
    for (int x = 0; x < scaled.width; ++x) {
      SplitMix64 rng(PixelSeed(frame_seed, x, y, scaled.width));
      ShadeContext ctx;
      ctx.profile = profile;
      ctx.settings = &settings;
      ctx.accel = &geometry;
      ctx.pixel_angle = pixel_angle;
      ctx.rng = &rng;

      // All AA jitters are drawn before any shading draws.
      std::array<Vec2, 4> jitter;
      const int samples = settings.aa_samples;
      if (samples == 1) {
        jitter[0] = Vec2(0.5, 0.5);
      } else {
        for (int s = 0; s < samples; ++s) {
          const double jx = ((s & 1) + rng.Uniform()) * 0.5;
          const double jy = ((s >> 1) + rng.Uniform()) * 0.5;
          jitter[s] = Vec2(jx, jy);
        }
      }
      Rgb sum = Rgb::Zero();
      for (int s = 0; s < samples; ++s) {
        const Ray ray =
            PrimaryRay(scaled, frame, x, y, jitter[s].x(), jitter[s].y());
        ++ctx.rays;
        const Hit hit = geometry.Intersect(ray);
        sum += hit.valid() ? Shade(ray, hit, settings.reflection_depth, 0.0, ctx)
                           : profile->ambient;
      }
      const Rgb color = sum / samples;
      for (int c = 0; c < 3; ++c) {
        linear.at(x, y, c) = static_cast<float>(color[c]);
      }
      row_rays[y] += ctx.rays;
    }
  });

  GroundTruth gt = RenderGroundTruth(pose, intrinsics, threads);
  FrameOutput out;
  out.color = UpsampleBilinear(linear, intrinsics.width, intrinsics.height);
  out.depth_persp = std::move(gt.depth_persp);
  out.depth_ortho = std::move(gt.depth_ortho);
  out.normals = std::move(gt.normals);
  out.labels = std::move(gt.labels);
  out.pose = pose;
  out.meta.profile = profile_name;
  out.meta.settings = settings;
  out.meta.frame_seed = frame_seed;
  out.meta.color_width = scaled.width;
  out.meta.color_height = scaled.height;
  for (std::uint64_t r : row_rays) out.meta.rays_traced += r;
  return out;
}

FrameOutput RenderFrame(const Scene& scene, const Pose& pose,
                        const std::string& profile,
                        const RenderSettings& settings,
                        const CameraIntrinsics& intrinsics,
                        std::uint64_t frame_seed, int threads) {
  return Renderer(scene).Render(pose, profile, settings, intrinsics, frame_seed,
                                threads);
}

}  // namespace aip
