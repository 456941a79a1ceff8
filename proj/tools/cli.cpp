#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <csignal>
#include <fstream>
#include <ostream>

#include "aip/ablation.hpp"
#include "aip/builtin_scenes.hpp"
#include "aip/dataset.hpp"
#include "aip/error.hpp"
#include "aip/evaluate.hpp"
#include "aip/image_io.hpp"
#include "aip/probe.hpp"
#include "aip/scene_format.hpp"
#include "aip/server.hpp"
#include "aip/text.hpp"
#include "aip/version.hpp"

namespace aip::cli {
namespace {

namespace fs = std::filesystem;

std::atomic<Server*> g_server{nullptr};

void OnSignal(int) {
  if (Server* s = g_server.load()) s->Stop();
}

struct ViewOptions {
  int width = 0;  // 0: scene default
  int height = 0;
  double fov = 0;
  int threads = 0;

  void Add(CLI::App* app) {
    app->add_option("--width", width, "Image width in pixels (default: scene camera)")
        ->check(CLI::PositiveNumber);
    app->add_option("--height", height, "Image height in pixels (default: scene camera)")
        ->check(CLI::PositiveNumber);
    app->add_option("--fov", fov, "Vertical field of view in degrees")
        ->check(CLI::Range(1.0, 179.0));
    app->add_option("--threads", threads, "Worker threads, 0 = all cores")
        ->check(CLI::NonNegativeNumber);
  }

  CameraIntrinsics Resolve(const Scene& scene) const {
    CameraIntrinsics k = scene.camera_defaults;
    if (width) k.width = width;
    if (height) k.height = height;
    if (fov > 0) k.vertical_fov = fov;
    return k;
  }
};

// Scenario id recorded in a capture directory's manifest, or the directory
// path itself for anything else.
std::string ScenarioIdOf(const fs::path& dir) {
  const fs::path manifest = dir / Manifest::kFileName;
  if (fs::exists(manifest)) {
    try {
      const std::string id = ReadManifest(manifest).scenario;
      if (!id.empty()) return id;
    } catch (const Error&) {
    }
  }
  return dir.string();
}

Pose ParsePoseArg(const std::string& s) {
  std::vector<double> v;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = s.find(',', start);
    const auto part = s.substr(start, comma == std::string::npos ? comma : comma - start);
    const auto d = text::ParseDouble(part);
    if (!d) throw Error("bad pose component '" + part + "'");
    v.push_back(*d);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (v.size() != 5) throw Error("pose needs x,y,z,yaw,pitch");
  Pose p;
  p.position = Vec3(v[0], v[1], v[2]);
  p.yaw = v[3];
  p.pitch = v[4];
  return NormalizePose(p);
}

FidelityPreset ResolvePreset(const std::string& name,
                             const std::vector<std::string>& knobs) {
  FidelityPreset p = name == "low" ? LowPreset() : HighPreset();
  if (name != "high" && name != "low") {
    if (knobs.empty()) throw Error("unknown fidelity preset '" + name + "'");
    p.name = name;
  }
  for (const std::string& knob : knobs) {
    const std::size_t eq = knob.find('=');
    if (eq == std::string::npos) throw Error("--set expects key=value");
    ApplyPresetField(p, knob.substr(0, eq), knob.substr(eq + 1));
  }
  p.settings.Validate();
  return p;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"aip: synthetic indoor dataset capture, ablation and evaluation"};
  app.name("aip");
  app.set_version_flag("--version", std::string(ToolVersion()));
  app.require_subcommand(1);

  // scene
  auto* scene_cmd = app.add_subcommand("scene", "Inspect and convert scenes");
  scene_cmd->require_subcommand(1);
  std::string scene_spec;
  auto* scene_validate = scene_cmd->add_subcommand("validate", "Parse and validate a scene");
  scene_validate->add_option("scene", scene_spec, "Scene file or builtin:<name>")->required();
  auto* scene_export = scene_cmd->add_subcommand("export", "Write a scene in canonical text form");
  std::string scene_out;
  scene_export->add_option("scene", scene_spec, "Scene file or builtin:<name>")->required();
  scene_export->add_option("--out", scene_out, "Output path (default: stdout)");
  auto* scene_list = scene_cmd->add_subcommand("list", "List built-in scenes");

  // render
  auto* render_cmd = app.add_subcommand("render", "Render one frame and its ground truth");
  std::string lighting = "day", fidelity = "high", pose_arg, out_dir;
  std::vector<std::string> knobs;
  std::uint64_t seed = 0;
  int frame_index = 0;
  ViewOptions view;
  render_cmd->add_option("--scene", scene_spec, "Scene file or builtin:<name>")->required();
  render_cmd->add_option("--lighting", lighting, "Lighting profile");
  render_cmd->add_option("--fidelity", fidelity, "Fidelity preset: high, low or a custom name");
  render_cmd->add_option("--set", knobs, "Override a preset knob, key=value (repeatable)");
  render_cmd->add_option("--pose", pose_arg, "x,y,z,yaw,pitch (meters, degrees)")->required();
  render_cmd->add_option("--seed", seed, "Frame seed");
  render_cmd->add_option("--index", frame_index, "Frame index used in file names")
      ->check(CLI::NonNegativeNumber);
  render_cmd->add_option("--out", out_dir, "Output directory")->required();
  view.Add(render_cmd);

  // probe gen
  auto* probe_cmd = app.add_subcommand("probe", "Camera trajectories");
  probe_cmd->require_subcommand(1);
  auto* probe_gen = probe_cmd->add_subcommand("gen", "Generate a trajectory");
  TrajectoryConfig tc;
  std::string mode = "random", traj_out;
  probe_gen->add_option("--scene", scene_spec, "Scene file or builtin:<name>")->required();
  probe_gen->add_option("--seed", tc.seed, "Random seed");
  probe_gen->add_option("--count", tc.count, "Number of poses")->check(CLI::PositiveNumber);
  probe_gen->add_option("--mode", mode, "random or group")
      ->check(CLI::IsMember({"random", "group"}));
  probe_gen->add_option("--step-size", tc.step_size, "Group walk step in meters");
  probe_gen->add_option("--look-sensitivity", tc.look_sensitivity,
                        "Group walk look change in degrees");
  probe_gen->add_option("--group-size", tc.group_size, "Poses per group")
      ->check(CLI::PositiveNumber);
  probe_gen->add_option("--height", tc.height, "Eye height in meters");
  probe_gen->add_option("--margin", tc.margin, "Clearance from geometry in meters");
  probe_gen->add_option("--out", traj_out, "Output trajectory file")->required();
  auto* probe_check = probe_cmd->add_subcommand("check", "Validate a trajectory against a scene");
  std::string traj_in;
  probe_check->add_option("--scene", scene_spec, "Scene file or builtin:<name>")->required();
  probe_check->add_option("--trajectory", traj_in, "Trajectory file")->required();

  // capture
  auto* capture_cmd = app.add_subcommand("capture", "Capture one scenario along a trajectory");
  capture_cmd->add_option("--scene", scene_spec, "Scene file or builtin:<name>")->required();
  capture_cmd->add_option("--lighting", lighting, "Lighting profile");
  capture_cmd->add_option("--fidelity", fidelity, "Fidelity preset");
  capture_cmd->add_option("--set", knobs, "Override a preset knob, key=value (repeatable)");
  capture_cmd->add_option("--trajectory", traj_in, "Trajectory file")->required();
  capture_cmd->add_option("--out", out_dir, "Output root directory")->required();
  view.Add(capture_cmd);

  // ablate
  auto* ablate_cmd = app.add_subcommand("ablate", "Capture every scenario of a matrix");
  std::string matrix_path;
  ablate_cmd->add_option("--matrix", matrix_path, "Matrix config (aipmatrix v1)")->required();
  ablate_cmd->add_option("--trajectory", traj_in, "Trajectory file")->required();
  ablate_cmd->add_option("--out", out_dir, "Output root directory")->required();
  ViewOptions ablate_view;
  ablate_view.Add(ablate_cmd);

  // split
  auto* split_cmd = app.add_subcommand("split", "Deterministic train/test split");
  std::string manifest_path, split_out;
  std::size_t split_count = 0;
  double ratio = 0.8;
  auto* manifest_opt = split_cmd->add_option("--manifest", manifest_path, "Capture manifest");
  split_cmd->add_option("--count", split_count, "Split indices 0..N-1 without a manifest")
      ->excludes(manifest_opt);
  split_cmd->add_option("--ratio", ratio, "Training fraction in (0, 1)");
  split_cmd->add_option("--seed", seed, "Shuffle seed");
  split_cmd->add_option("--out", split_out, "Output split file (default: stdout)");

  // verify
  auto* verify_cmd = app.add_subcommand("verify", "Check a manifest against the files on disk");
  verify_cmd->add_option("manifest", manifest_path, "Manifest file")->required();

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate predictions against ground truth");
  eval_cmd->require_subcommand(1);
  std::string pred_dir, gt_dir, train_id, test_id, json_out;
  bool ortho = false;
  double max_range = 10.0;
  std::size_t classes = 0;
  auto add_eval_common = [&](CLI::App* cmd) {
    cmd->add_option("--pred", pred_dir, "Prediction directory")->required();
    cmd->add_option("--gt", gt_dir, "Ground-truth directory")->required();
    cmd->add_option("--train", train_id, "Training scenario id (default: from the pred manifest)");
    cmd->add_option("--test", test_id, "Test scenario id (default: from the gt manifest)");
    cmd->add_option("--json", json_out, "Write a full-precision JSON sidecar");
  };
  auto* eval_depth = eval_cmd->add_subcommand("depth", "Depth metrics");
  add_eval_common(eval_depth);
  eval_depth->add_flag("--ortho", ortho, "Use orthographic depth files");
  eval_depth->add_option("--max-range", max_range, "Depth encoding range in meters")
      ->check(CLI::PositiveNumber);
  auto* eval_normals = eval_cmd->add_subcommand("normals", "Surface normal metrics");
  add_eval_common(eval_normals);
  auto* eval_seg = eval_cmd->add_subcommand("seg", "Segmentation metrics");
  add_eval_common(eval_seg);
  eval_seg->add_option("--classes", classes, "Class count (default: from legend)");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the live capture service");
  std::string host = "127.0.0.1";
  int port = DefaultPort();
  serve_cmd->add_option("--scene", scene_spec, "Scene file or builtin:<name>")->required();
  serve_cmd->add_option("--host", host, "Bind address");
  serve_cmd->add_option("--port", port, "TCP port (default: $AIP_PORT or 7878)")
      ->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--lighting", lighting, "Initial lighting profile");
  serve_cmd->add_option("--out", out_dir, "Directory for exports and captures");
  serve_cmd->add_option("--seed", seed, "Session seed");
  ViewOptions serve_view;
  serve_view.Add(serve_cmd);

  // diff-gt
  auto* diff_cmd = app.add_subcommand("diff-gt", "Compare two captures of one trajectory");
  std::string dir_a, dir_b;
  diff_cmd->add_option("dir_a", dir_a, "First capture directory")->required();
  diff_cmd->add_option("dir_b", dir_b, "Second capture directory")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (scene_validate->parsed()) {
      const Scene scene = ResolveScene(scene_spec);
      std::size_t triangles = 0;
      for (const SceneObject& o : scene.objects) triangles += o.lod(0).triangles.size();
      out << "ok " << scene.name << ": " << scene.objects.size() << " objects, "
          << triangles << " triangles, " << scene.classes.size() << " classes, "
          << scene.profiles.size() << " lighting profiles\n";
    } else if (scene_export->parsed()) {
      const std::string canonical = SerializeScene(ResolveScene(scene_spec));
      if (scene_out.empty()) {
        out << canonical;
      } else {
        WriteTextFile(scene_out, canonical);
      }
    } else if (scene_list->parsed()) {
      for (const std::string& name : BuiltinSceneNames()) out << "builtin:" << name << "\n";
    } else if (render_cmd->parsed()) {
      const Scene scene = ResolveScene(scene_spec);
      const FidelityPreset preset = ResolvePreset(fidelity, knobs);
      const Renderer renderer(scene);
      FrameOutput frame = renderer.Render(ParsePoseArg(pose_arg), lighting,
                                          preset.Resolve(scene), view.Resolve(scene),
                                          seed, view.threads);
      frame.meta.scenario = scene.name + "/" + lighting + "/" + preset.name;
      const ExportedFrame files = ExportFrame(frame, out_dir, frame_index);
      WriteLabelLegend(scene, out_dir);
      for (const std::string& f : files.files) out << (fs::path(out_dir) / f).string() << "\n";
      out << (fs::path(out_dir) / FrameMetaFileName(frame_index)).string() << "\n";
    } else if (probe_gen->parsed()) {
      const Scene scene = ResolveScene(scene_spec);
      tc.mode = TrajectoryModeFromName(mode);
      const Trajectory t = GenerateTrajectory(tc, scene);
      SaveTrajectory(traj_out, t);
      out << "wrote " << t.poses.size() << " poses to " << traj_out << "\n";
    } else if (probe_check->parsed()) {
      const Scene scene = ResolveScene(scene_spec);
      const Trajectory t = LoadTrajectory(traj_in);
      CheckTrajectoryAgainst(t, scene);
      out << "ok: " << t.poses.size() << " poses valid in " << scene.name << "\n";
    } else if (capture_cmd->parsed()) {
      const Scene scene = ResolveScene(scene_spec);
      const Trajectory t = LoadTrajectory(traj_in);
      const Scenario scenario{scene.name, lighting, ResolvePreset(fidelity, knobs)};
      const Renderer renderer(scene);
      const CaptureReport r = CaptureScenario(scenario, renderer, t, view.Resolve(scene),
                                              out_dir, view.threads);
      out << r.scenario << " " << r.frames << " frames " << r.files << " images "
          << r.digest << "\n";
    } else if (ablate_cmd->parsed()) {
      const MatrixConfig matrix = LoadMatrixConfig(matrix_path);
      const Trajectory t = LoadTrajectory(traj_in);
      if (matrix.maps.empty()) throw Error("matrix has no maps");
      const CameraIntrinsics k = ablate_view.Resolve(ResolveScene(matrix.maps.front()));
      for (const CaptureReport& r : RunAblation(matrix, t, k, out_dir, ablate_view.threads)) {
        out << r.scenario << " " << r.frames << " frames " << r.digest << "\n";
      }
    } else if (split_cmd->parsed()) {
      std::size_t n = split_count;
      if (!manifest_path.empty()) n = ReadManifest(manifest_path).records.size();
      if (manifest_path.empty() && split_count == 0) {
        throw CLI::RequiredError("--manifest or --count");
      }
      const Split s = MakeSplit(n, ratio, seed);
      const std::string text = SerializeSplit(s);
      if (split_out.empty()) {
        out << text;
      } else {
        WriteTextFile(split_out, text);
        out << "train " << s.train.size() << " test " << s.test.size() << "\n";
      }
    } else if (verify_cmd->parsed()) {
      const VerifyReport report = VerifyManifest(manifest_path);
      out << FormatVerifyReport(report);
      if (!report.ok()) return kExitDomainError;
    } else if (eval_depth->parsed() || eval_normals->parsed() || eval_seg->parsed()) {
      const std::string train = train_id.empty() ? ScenarioIdOf(pred_dir) : train_id;
      const std::string test = test_id.empty() ? ScenarioIdOf(gt_dir) : test_id;
      std::string json;
      if (eval_depth->parsed()) {
        const DepthMetrics m = EvaluateDepthDirs(
            pred_dir, gt_dir, ortho ? Buffer::kDepthOrtho : Buffer::kDepthPersp,
            DepthEncoding{max_range});
        out << DepthReportHeader() << "\n" << FormatDepthRow(train, test, m) << "\n";
        json = ToJson(m, train, test);
      } else if (eval_normals->parsed()) {
        const NormalMetrics m = EvaluateNormalDirs(pred_dir, gt_dir);
        out << NormalReportHeader() << "\n" << FormatNormalRow(train, test, m) << "\n";
        json = ToJson(m, train, test);
      } else {
        const SegMetrics m = EvaluateSegDirs(pred_dir, gt_dir, classes);
        out << SegReportHeader() << "\n" << FormatSegRow(train, test, m) << "\n";
        std::vector<std::string> names;
        if (fs::is_regular_file(fs::path(gt_dir) / kLegendFile)) {
          names = ReadLegend(fs::path(gt_dir) / kLegendFile);
        }
        json = ToJson(m, train, test, names);
      }
      if (!json_out.empty()) WriteTextFile(json_out, json);
    } else if (serve_cmd->parsed()) {
      ServerConfig config;
      config.host = host;
      config.port = port;
      config.session.lighting = lighting;
      config.session.seed = seed;
      config.session.threads = serve_view.threads;
      if (!out_dir.empty()) config.session.output_dir = out_dir;
      Scene scene = ResolveScene(scene_spec);
      if (serve_view.width) config.session.preview.width = serve_view.width;
      if (serve_view.height) config.session.preview.height = serve_view.height;
      if (serve_view.fov > 0) config.session.preview.vertical_fov = serve_view.fov;
      Server server(std::move(scene), config);
      server.Start();
      out << "listening on " << host << ":" << server.port() << "\n" << std::flush;
      g_server = &server;
      std::signal(SIGINT, OnSignal);
      std::signal(SIGTERM, OnSignal);
      server.Run();
      g_server = nullptr;
    } else if (diff_cmd->parsed()) {
      const GroundTruthDiff diff = DiffGroundTruth(dir_a, dir_b);
      out << FormatGroundTruthDiff(diff);
      if (!diff.ground_truth_equal()) {
        err << "aip: ground truth differs\n";
        return kExitDomainError;
      }
    }
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  } catch (const std::exception& e) {
    err << "aip: " << e.what() << "\n";
    return kExitDomainError;
  }
  return kExitOk;
}

}  // namespace aip::cli
