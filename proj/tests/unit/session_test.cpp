#include <gtest/gtest.h>

#include "aip/digest.hpp"
#include "aip/image_io.hpp"
#include "aip/probe.hpp"
#include "aip/protocol.hpp"
#include "aip/session.hpp"
#include "support/fixtures.hpp"

namespace aip {
namespace {

namespace fs = std::filesystem;

SessionState StateAt(double x, double z, double yaw = 0) {
  SessionState s;
  s.pose.position = Vec3(x, 1.6, z);
  s.pose.yaw = yaw;
  return s;
}

TEST(ApplyInput, ForwardMoveAtYawZero) {
  const Scene scene = testing::WallRoomScene();
  const PoseValidator valid(scene, 0.3);
  SessionState s = StateAt(0, -1);
  ApplyInput(s, valid, Vec3(0, 0, 1), 0, 0, 0.25);
  EXPECT_FALSE(s.rejected);
  EXPECT_DOUBLE_EQ(s.pose.position.z(), -0.75);
  EXPECT_EQ(s.pose.position.x(), 0.0);
}

TEST(ApplyInput, MoveRotatesWithYaw) {
  const Scene scene = testing::WallRoomScene();
  const PoseValidator valid(scene, 0.3);
  SessionState s = StateAt(0, -1, 90);
  ApplyInput(s, valid, Vec3(0, 5, 1), 0, 0, 0.5);
  EXPECT_NEAR(s.pose.position.x(), 0.5, 1e-12);
  EXPECT_NEAR(s.pose.position.z(), -1.0, 1e-12);
  EXPECT_EQ(s.pose.position.y(), 1.6);
  // Facing +x, the right-hand side is +z.
  ApplyInput(s, valid, Vec3(1, 0, 0), 0, 0, 0.5);
  EXPECT_NEAR(s.pose.position.x(), 0.5, 1e-12);
  EXPECT_NEAR(s.pose.position.z(), -0.5, 1e-12);
}

TEST(ApplyInput, PitchClampsAndYawWraps) {
  const Scene scene = testing::WallRoomScene();
  const PoseValidator valid(scene, 0.3);
  SessionState s = StateAt(0, -1, 350);
  ApplyInput(s, valid, Vec3::Zero(), 20, 200, 0.25);
  EXPECT_EQ(s.pose.pitch, 89.0);
  EXPECT_NEAR(s.pose.yaw, 10.0, 1e-9);
  ApplyInput(s, valid, Vec3::Zero(), -30, -500, 0.25);
  EXPECT_EQ(s.pose.pitch, -89.0);
  EXPECT_NEAR(s.pose.yaw, 340.0, 1e-9);
}

TEST(ApplyInput, WallRejectsMoveAndKeepsPose) {
  const Scene scene = testing::WallRoomScene();
  const PoseValidator valid(scene, 0.3);
  SessionState s = StateAt(0, 0.5);
  const Pose before = s.pose;
  ApplyInput(s, valid, Vec3(0, 0, 1), 5, 0, 0.25);
  EXPECT_TRUE(s.rejected);
  EXPECT_EQ(s.pose.position, before.position);
  EXPECT_NEAR(s.pose.yaw, 5.0, 1e-12);
  ApplyInput(s, valid, Vec3(0, 0, -1), 0, 0, 0.25);
  EXPECT_FALSE(s.rejected);
}

class SessionTest : public ::testing::Test {
 protected:
  SessionTest() : scene_(testing::WallRoomScene()), renderer_(scene_) {
    config_.preview = CameraIntrinsics{32, 24, 60, 0.05};
    config_.output_dir = testing::FreshDir("session_out");
    config_.threads = 1;
  }
  Message Hello() {
    Message m("hello");
    m.Set("version", kProtocolVersion);
    return m;
  }
  Message Set(const std::string& key, const std::string& value) {
    Message m("set");
    m.Set("key", key).Set("value", value);
    return m;
  }
  Scene scene_;
  Renderer renderer_;
  SessionConfig config_;
};

TEST_F(SessionTest, HelloIsRequiredFirst) {
  Session s(scene_, renderer_, config_);
  EXPECT_THROW(s.Handle(Message("waypoint")), ProtocolError);
  const auto out = s.Handle(Hello());
  ASSERT_EQ(out.replies.size(), 1u);
  EXPECT_EQ(out.replies[0].type(), "ack");
  EXPECT_EQ(out.replies[0].Get("for"), "hello");
  EXPECT_TRUE(out.needs_frame);
  EXPECT_THROW(s.Handle(Hello()), ProtocolError);
}

TEST_F(SessionTest, VersionMismatchIsFatal) {
  Session s(scene_, renderer_, config_);
  Message m("hello");
  m.Set("version", 2);
  EXPECT_THROW(s.Handle(m), ProtocolError);
  EXPECT_FALSE(s.greeted());
}

TEST_F(SessionTest, InitialPoseValidates) {
  Session s(scene_, renderer_, config_);
  EXPECT_TRUE(ValidatePose(s.state().pose, scene_, config_.margin));
}

TEST_F(SessionTest, OverlaySwitchChangesFrame) {
  Session s(scene_, renderer_, config_);
  s.Handle(Hello());
  const Message color = s.RenderFrame();
  EXPECT_EQ(color.Get("overlay"), "color");
  const auto out = s.Handle(Set("overlay", "depth"));
  EXPECT_TRUE(out.needs_frame);
  const Message depth = s.RenderFrame();
  EXPECT_EQ(depth.Get("overlay"), "depth");
  EXPECT_EQ(depth.Get("width"), "32");
  const ImageRgb8 img = DecodePngRgb8(Base64Decode(depth.Require("png")));
  EXPECT_EQ(img.width, 32);
  for (int i = 0; i < img.width * img.height; ++i) {
    EXPECT_EQ(img.data[3 * i], img.data[3 * i + 1]);
    EXPECT_EQ(img.data[3 * i], img.data[3 * i + 2]);
  }
  EXPECT_NE(color.Require("png"), depth.Require("png"));
}

TEST_F(SessionTest, BadSetValueIsNonFatal) {
  Session s(scene_, renderer_, config_);
  s.Handle(Hello());
  for (auto [k, v] : {std::pair{"overlay", "xray"}, {"lighting", "dusk"},
                      {"render_scale", "3"}, {"aa_samples", "2"}, {"colour", "red"}}) {
    const auto out = s.Handle(Set(k, v));
    ASSERT_EQ(out.replies.size(), 1u) << k;
    EXPECT_EQ(out.replies[0].type(), "error") << k;
    EXPECT_EQ(out.replies[0].Get("fatal"), "0");
  }
  const auto ok = s.Handle(Set("shadow_samples", "4"));
  EXPECT_EQ(ok.replies[0].type(), "ack");
  EXPECT_EQ(s.state().fidelity.settings.shadow_samples, 4);
}

TEST_F(SessionTest, InputSequenceIsReflectedInFrames) {
  Session s(scene_, renderer_, config_);
  s.Handle(Hello());
  Message in("input");
  in.Set("seq", 7).Set("move", "0,0,1").Set("yaw", "10");
  EXPECT_TRUE(s.Handle(in).needs_frame);
  const Message f = s.RenderFrame();
  EXPECT_EQ(f.Get("input_seq"), "7");
  EXPECT_EQ(f.Get("rejected"), "0");
  Message bad("input");
  bad.Set("move", "1,2");
  EXPECT_THROW(s.Handle(bad), ProtocolError);
}

TEST_F(SessionTest, WaypointsExportToLoadableTrajectory) {
  Session s(scene_, renderer_, config_);
  s.Handle(Hello());
  EXPECT_EQ(s.Handle(Message("export_trajectory")).replies[0].type(), "error");
  std::vector<Pose> recorded;
  for (int i = 0; i < 3; ++i) {
    Message in("input");
    in.Set("move", "0,0,1").Set("yaw", "7.5").Set("pitch", "-3");
    s.Handle(in);
    const auto ack = s.Handle(Message("waypoint"));
    EXPECT_EQ(ack.replies[0].Get("waypoints"), std::to_string(i + 1));
    recorded.push_back(s.state().pose);
  }
  const auto out = s.Handle(Message("export_trajectory"));
  ASSERT_EQ(out.replies.size(), 1u);
  const Message& t = out.replies[0];
  EXPECT_EQ(t.type(), "trajectory");
  EXPECT_EQ(t.Get("poses"), "3");
  const fs::path path = t.Require("path");
  const auto bytes = Base64Decode(t.Require("data"));
  EXPECT_EQ(bytes, ReadFileBytes(path));
  EXPECT_EQ(Sha256Hex(bytes), t.Require("sha256"));
  const Trajectory loaded = LoadTrajectory(path);
  EXPECT_EQ(loaded.poses, recorded);
  EXPECT_EQ(loaded.config.mode, TrajectoryMode::kManual);
  EXPECT_NO_THROW(CheckTrajectoryAgainst(loaded, scene_));

  // A second export with no new waypoints has identical content.
  const auto again = s.Handle(Message("export_trajectory"));
  EXPECT_EQ(again.replies[0].Require("data"), t.Require("data"));
}

TEST_F(SessionTest, CaptureWritesFullFidelityFrame) {
  scene_.camera_defaults = CameraIntrinsics{40, 30, 60, 0.05};
  Renderer renderer(scene_);
  Session s(scene_, renderer, config_);
  s.Handle(Hello());
  const auto out = s.Handle(Message("capture"));
  ASSERT_EQ(out.replies.size(), 1u);
  const fs::path dir = out.replies[0].Require("path");
  EXPECT_EQ(ReadPngRgb8(dir / "000000_color.png").width, 40);
  EXPECT_TRUE(fs::exists(dir / "000000_labels.png"));
}

TEST(Overlays, DepthAndLabelViews) {
  ImageGray16 depth(3, 1);
  depth.data = {0, 32768, 65535};
  const ImageRgb8 d = DepthOverlay(depth);
  EXPECT_GT(d.at(0, 0), d.at(1, 0));
  EXPECT_EQ(d.at(2, 0), 0);
  ImageGray8 labels(2, 1);
  labels.data = {0, 3};
  const ImageRgb8 l = LabelOverlay(labels);
  EXPECT_EQ(l.at(0, 0), 0);
  EXPECT_NE(std::vector<int>({l.at(1, 0), l.at(1, 0, 1), l.at(1, 0, 2)}),
            std::vector<int>({0, 0, 0}));
  EXPECT_EQ(OverlayFromName(OverlayName(Overlay::kNormals)), Overlay::kNormals);
}

}  // namespace
}  // namespace aip
