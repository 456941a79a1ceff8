#include <gtest/gtest.h>

#include "aip/ablation.hpp"
#include "aip/builtin_scenes.hpp"
#include "aip/dataset.hpp"
#include "aip/error.hpp"
#include "aip/image_io.hpp"
#include "aip/probe.hpp"
#include "support/fixtures.hpp"

namespace aip {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> Ids(const std::vector<Scenario>& v) {
  std::vector<std::string> out;
  for (const Scenario& s : v) out.push_back(s.id());
  return out;
}

TEST(ExpandMatrix, CoreEightInOrder) {
  const auto v = ExpandMatrix({"brown_room", "blue_room"}, {"day", "night"},
                              {HighPreset(), LowPreset()});
  const std::vector<std::string> expected = {
      "brown_room/day/high",  "brown_room/day/low",  "brown_room/night/high",
      "brown_room/night/low", "blue_room/day/high",  "blue_room/day/low",
      "blue_room/night/high", "blue_room/night/low"};
  EXPECT_EQ(Ids(v), expected);
}

TEST(ExpandMatrix, UnlitPairsOnlyWithHigh) {
  EXPECT_EQ(Ids(ExpandMatrix({"brown_room"}, {"unlit"}, {HighPreset()})),
            std::vector<std::string>{"brown_room/unlit/high"});
  EXPECT_EQ(Ids(ExpandMatrix({"brown_room"}, {"unlit"}, {HighPreset(), LowPreset()})),
            std::vector<std::string>{"brown_room/unlit/high"});
  EXPECT_EQ(ExpandMatrix({"a", "b"}, {"day", "night", "unlit"}, {HighPreset(), LowPreset()}).size(),
            10u);
}

TEST(ExpandMatrix, Errors) {
  EXPECT_THROW(ExpandMatrix({"brown_room"}, {}, {HighPreset()}), Error);
  EXPECT_THROW(ExpandMatrix({}, {"day"}, {HighPreset()}), Error);
  EXPECT_THROW(ExpandMatrix({"brown_room"}, {"day"}, {}), Error);
  EXPECT_THROW(ExpandMatrix({"brown_room", "brown_room"}, {"day"}, {HighPreset()}), Error);
}

TEST(MatrixConfig, ParsesPresets) {
  const MatrixConfig c = ParseMatrixConfig(
      "aipmatrix v1\n"
      "maps builtin:brown_room builtin:blue_room\n"
      "lightings day night\n"
      "fidelities high mid\n"
      "preset mid render_scale=0.75 shadow_samples=4 lod_index=last\n");
  EXPECT_EQ(c.maps.size(), 2u);
  const FidelityPreset mid = c.FindPreset("mid");
  EXPECT_EQ(mid.settings.render_scale, 0.75);
  EXPECT_EQ(mid.settings.shadow_samples, 4);
  EXPECT_TRUE(mid.lod_last);
  EXPECT_EQ(mid.settings.aa_samples, HighPreset().settings.aa_samples);
  EXPECT_EQ(c.FindPreset("low"), LowPreset());
  EXPECT_THROW(c.FindPreset("ultra"), Error);
  EXPECT_THROW(ParseMatrixConfig("aipmatrix v1\npreset high render_scale=0.5\n"), Error);
  EXPECT_THROW(ParseMatrixConfig("aipmatrix v1\npreset x colour=red\n"), Error);
}

TEST(Presets, ResolveLastLod) {
  const Scene s = MakeBuiltinScene(BuiltinScene::kBrownRoom);
  EXPECT_EQ(LowPreset().Resolve(s).lod_index, s.MaxLodCount() - 1);
  EXPECT_EQ(HighPreset().Resolve(s).lod_index, 0);
  EXPECT_NO_THROW(LowPreset().Resolve(s).Validate());
  EXPECT_NO_THROW(PreviewPreset().Resolve(s).Validate());
}

class CaptureTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    scene_ = new Scene(MakeBuiltinScene(BuiltinScene::kBrownRoom));
    renderer_ = new Renderer(*scene_);
    TrajectoryConfig c;
    c.seed = 17;
    c.count = 10;
    trajectory_ = new Trajectory(GenerateTrajectory(c, *scene_));
    root_ = new fs::path(testing::FreshDir("capture"));
  }
  static void TearDownTestSuite() {
    delete renderer_;
    delete scene_;
    delete trajectory_;
    delete root_;
  }
  static CaptureReport Capture(const char* lighting, const FidelityPreset& preset,
                               const fs::path& root) {
    return CaptureScenario(Scenario{"brown_room", lighting, preset}, *renderer_, *trajectory_,
                           k_, root, 1);
  }
  static inline Scene* scene_ = nullptr;
  static inline Renderer* renderer_ = nullptr;
  static inline Trajectory* trajectory_ = nullptr;
  static inline fs::path* root_ = nullptr;
  static constexpr CameraIntrinsics k_{48, 36, 60, 0.05};
};

TEST_F(CaptureTest, TenPosesGiveTenRecordsAndFiftyImages) {
  const CaptureReport r = Capture("day", HighPreset(), *root_);
  EXPECT_EQ(r.frames, 10u);
  EXPECT_EQ(r.files, 50u);
  EXPECT_EQ(r.dir, *root_ / "brown_room" / "day" / "high");
  const Manifest m = ReadManifest(r.dir / Manifest::kFileName);
  EXPECT_EQ(m.records.size(), 10u);
  EXPECT_EQ(m.scenario, "brown_room/day/high");
  int pngs = 0;
  for (const auto& entry : fs::directory_iterator(r.dir)) {
    pngs += entry.path().extension() == ".png";
  }
  EXPECT_EQ(pngs, 50);
  EXPECT_TRUE(VerifyManifest(r.dir / Manifest::kFileName).ok());
  EXPECT_EQ(LoadTrajectory(r.dir / "trajectory.aiptraj"), *trajectory_);
}

TEST_F(CaptureTest, SameCaptureTwiceSameDigest) {
  const fs::path other = testing::FreshDir("capture_again");
  const CaptureReport a = Capture("night", LowPreset(), *root_);
  const CaptureReport b = Capture("night", LowPreset(), other);
  EXPECT_EQ(a.digest, b.digest);
  EXPECT_EQ(ReadFileBytes(a.dir / Manifest::kFileName), ReadFileBytes(b.dir / Manifest::kFileName));
}

TEST_F(CaptureTest, HighVersusLowKeepsGroundTruth) {
  const CaptureReport high = Capture("day", HighPreset(), *root_);
  const CaptureReport low = Capture("day", LowPreset(), *root_);
  const GroundTruthDiff d = DiffGroundTruth(high.dir, low.dir);
  EXPECT_TRUE(d.ground_truth_equal()) << FormatGroundTruthDiff(d);
  EXPECT_GT(d.color_mad, 0.0);
  EXPECT_EQ(d.frames, 10u);
}

TEST_F(CaptureTest, DayVersusNightKeepsGroundTruth) {
  const CaptureReport day = Capture("day", HighPreset(), *root_);
  const CaptureReport night = Capture("night", HighPreset(), *root_);
  const GroundTruthDiff d = DiffGroundTruth(day.dir, night.dir);
  EXPECT_TRUE(d.ground_truth_equal());
  EXPECT_GT(d.color_mad, 0.0);
}

TEST_F(CaptureTest, IdenticalDirectoriesAreEqual) {
  const CaptureReport day = Capture("day", HighPreset(), *root_);
  const GroundTruthDiff d = DiffGroundTruth(day.dir, day.dir);
  EXPECT_TRUE(d.ground_truth_equal());
  EXPECT_EQ(d.color_mad, 0.0);
}

TEST_F(CaptureTest, MismatchedTrajectoriesRefuseToDiff) {
  const CaptureReport a = Capture("day", HighPreset(), *root_);
  TrajectoryConfig c;
  c.seed = 18;
  c.count = 10;
  const Trajectory other = GenerateTrajectory(c, *scene_);
  const fs::path other_root = testing::FreshDir("capture_other");
  const CaptureReport b = CaptureScenario(Scenario{"brown_room", "day", HighPreset()},
                                          *renderer_, other, k_, other_root, 1);
  EXPECT_THROW(DiffGroundTruth(a.dir, b.dir), Error);
}

TEST_F(CaptureTest, RunAblationWritesIndex) {
  MatrixConfig config;
  config.maps = {"builtin:brown_room"};
  config.lightings = {"day", "unlit"};
  config.fidelities = {"high", "low"};
  TrajectoryConfig c;
  c.seed = 3;
  c.count = 2;
  const Trajectory t = GenerateTrajectory(c, *scene_);
  const fs::path root = testing::FreshDir("ablation_run");
  const auto reports = RunAblation(config, t, CameraIntrinsics{16, 12, 60, 0.05}, root, 1);
  ASSERT_EQ(reports.size(), 3u);
  const std::string index = ReadTextFile(root / "ablation.txt");
  for (const CaptureReport& r : reports) {
    EXPECT_NE(index.find(r.scenario), std::string::npos);
    EXPECT_NE(index.find(r.digest), std::string::npos);
  }
}

}  // namespace
}  // namespace aip
