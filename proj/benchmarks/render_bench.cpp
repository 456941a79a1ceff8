#include <benchmark/benchmark.h>

#include "aip/ablation.hpp"
#include "aip/builtin_scenes.hpp"
#include "aip/render.hpp"

namespace {

struct Fixture {
  Fixture() : scene(aip::MakeBuiltinScene(aip::BuiltinScene::kBrownRoom)), renderer(scene) {
    pose.position = aip::Vec3(0.4, 1.6, -1.5);
    pose.yaw = 25;
  }
  aip::Scene scene;
  aip::Renderer renderer;
  aip::Pose pose;
};

Fixture& Shared() {
  static Fixture f;
  return f;
}

void RenderPreset(benchmark::State& state, const aip::FidelityPreset& preset,
                  const char* lighting) {
  Fixture& f = Shared();
  const aip::RenderSettings settings = preset.Resolve(f.scene);
  const aip::CameraIntrinsics k{320, 240, 60.0, 0.05};
  std::uint64_t rays = 0;
  for (auto _ : state) {
    const aip::FrameOutput out = f.renderer.Render(f.pose, lighting, settings, k, 1, 1);
    rays += out.meta.rays_traced;
  }
  state.counters["rays/s"] = benchmark::Counter(static_cast<double>(rays),
                                                benchmark::Counter::kIsRate);
}

void BM_RenderHighDay(benchmark::State& s) { RenderPreset(s, aip::HighPreset(), "day"); }
void BM_RenderLowDay(benchmark::State& s) { RenderPreset(s, aip::LowPreset(), "day"); }
void BM_RenderHighNight(benchmark::State& s) { RenderPreset(s, aip::HighPreset(), "night"); }
BENCHMARK(BM_RenderHighDay)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderLowDay)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RenderHighNight)->Unit(benchmark::kMillisecond);

void BM_GroundTruth(benchmark::State& state) {
  Fixture& f = Shared();
  const aip::CameraIntrinsics k{320, 240, 60.0, 0.05};
  for (auto _ : state) {
    benchmark::DoNotOptimize(f.renderer.RenderGroundTruth(f.pose, k, 1));
  }
}
BENCHMARK(BM_GroundTruth)->Unit(benchmark::kMillisecond);

}  // namespace
