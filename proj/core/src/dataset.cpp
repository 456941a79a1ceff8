#include "aip/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "aip/digest.hpp"
#include "aip/error.hpp"
#include "aip/image_io.hpp"
#include "aip/probe.hpp"
#include "aip/rng.hpp"
#include "aip/text.hpp"

namespace aip {
namespace {

namespace fs = std::filesystem;

std::string PoseField(const Pose& pose) {
  std::string s = FormatPoseRecord(pose);
  std::replace(s.begin(), s.end(), ' ', ',');
  return s;
}

Pose ParsePoseField(std::string_view field) {
  double v[5];
  std::size_t start = 0;
  for (int i = 0; i < 5; ++i) {
    const std::size_t comma = field.find(',', start);
    const bool last = i == 4;
    if (last != (comma == std::string_view::npos)) {
      throw Error("pose needs 5 comma-separated numbers");
    }
    const auto part = field.substr(start, last ? field.npos : comma - start);
    const auto parsed = text::ParseDouble(part);
    if (!parsed) throw Error("bad pose number '" + std::string(part) + "'");
    v[i] = *parsed;
    start = comma + 1;
  }
  Pose p;
  p.position = Vec3(v[0], v[2], v[1]);
  p.yaw = v[3];
  p.pitch = v[4];
  return p;
}

bool IsHexDigest(std::string_view s) {
  return s.size() == 64 &&
         std::all_of(s.begin(), s.end(), [](char c) {
           return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f');
         });
}

int BufferIndex(Buffer b) { return static_cast<int>(b); }

std::string RenderSettingsLine(const RenderSettings& s) {
  std::ostringstream out;
  out << "render_scale=" << text::FormatDouble(s.render_scale)
      << " mip_bias=" << s.mip_bias << " shadow_samples=" << s.shadow_samples
      << " reflection_depth=" << s.reflection_depth
      << " aa_samples=" << s.aa_samples << " lod_index=" << s.lod_index
      << " shading=" << (s.shading == ShadingMode::kUnlit ? "unlit" : "lit");
  return out.str();
}

}  // namespace

std::string_view BufferName(Buffer buffer) {
  switch (buffer) {
    case Buffer::kColor:
      return "color";
    case Buffer::kDepthPersp:
      return "depth_persp";
    case Buffer::kDepthOrtho:
      return "depth_ortho";
    case Buffer::kNormals:
      return "normals";
    case Buffer::kLabels:
      return "labels";
  }
  return "color";
}

std::string FrameFileName(int index, Buffer buffer) {
  char prefix[16];
  std::snprintf(prefix, sizeof prefix, "%06d_", index);
  return std::string(prefix) + std::string(BufferName(buffer)) + ".png";
}

std::string FrameMetaFileName(int index) {
  char name[32];
  std::snprintf(name, sizeof name, "%06d_meta.txt", index);
  return name;
}

std::array<std::uint8_t, 3> LabelDisplayColor(int class_id) {
  if (class_id == 0) return {0, 0, 0};
  // Fixed hash so colors never depend on class naming.
  SplitMix64 rng(0x6c6162656cULL + static_cast<std::uint64_t>(class_id));
  const std::uint64_t bits = rng.Next();
  return {static_cast<std::uint8_t>(64 + (bits & 0xbf)),
          static_cast<std::uint8_t>(64 + ((bits >> 8) & 0xbf)),
          static_cast<std::uint8_t>(64 + ((bits >> 16) & 0xbf))};
}

void WriteLabelLegend(const Scene& scene, const fs::path& dir) {
  std::ostringstream out;
  out << "# id name r g b\n";
  for (std::size_t id = 0; id < scene.classes.size(); ++id) {
    const auto c = LabelDisplayColor(static_cast<int>(id));
    out << id << " " << scene.classes[id] << " " << int(c[0]) << " "
        << int(c[1]) << " " << int(c[2]) << "\n";
  }
  fs::create_directories(dir);
  WriteTextFile(dir / kLegendFile, out.str());
}

std::string FormatFrameMeta(const FrameOutput& frame) {
  const FrameMeta& m = frame.meta;
  std::ostringstream out;
  out << "scenario=" << m.scenario << "\n";
  out << "profile=" << m.profile << "\n";
  out << "pose=" << PoseField(frame.pose) << "\n";
  out << "frame_seed=" << m.frame_seed << "\n";
  out << "size=" << frame.depth_persp.width << "x" << frame.depth_persp.height
      << "\n";
  out << "color_pass=" << m.color_width << "x" << m.color_height << "\n";
  out << "settings=" << RenderSettingsLine(m.settings) << "\n";
  out << "rays_traced=" << m.rays_traced << "\n";
  return out.str();
}

ExportedFrame ExportFrame(const FrameOutput& frame, const fs::path& dir,
                          int index) {
  fs::create_directories(dir);
  ExportedFrame out;
  out.index = index;
  for (Buffer b : kAllBuffers) out.files[BufferIndex(b)] = FrameFileName(index, b);
  WritePng(dir / out.files[BufferIndex(Buffer::kColor)], frame.color);
  WritePng(dir / out.files[BufferIndex(Buffer::kDepthPersp)], frame.depth_persp);
  WritePng(dir / out.files[BufferIndex(Buffer::kDepthOrtho)], frame.depth_ortho);
  WritePng(dir / out.files[BufferIndex(Buffer::kNormals)], frame.normals);
  WritePng(dir / out.files[BufferIndex(Buffer::kLabels)], frame.labels);
  WriteTextFile(dir / FrameMetaFileName(index), FormatFrameMeta(frame));
  return out;
}

ManifestRecord MakeManifestRecord(const ExportedFrame& frame, const Pose& pose,
                                  const fs::path& dir) {
  ManifestRecord r;
  r.index = frame.index;
  r.pose = pose;
  for (std::size_t i = 0; i < frame.files.size(); ++i) {
    r.files[i].path = frame.files[i];
    r.files[i].sha256 = Sha256File(dir / frame.files[i]);
  }
  return r;
}

std::string SerializeManifest(const Manifest& m) {
  auto or_dash = [](const std::string& s) { return s.empty() ? "-" : s; };
  std::ostringstream out;
  out << "aipman v1\n";
  out << "scene " << or_dash(m.scene) << "\n";
  out << "scenario " << or_dash(m.scenario) << "\n";
  out << "trajectory_digest " << or_dash(m.trajectory_digest) << "\n";
  out << "tool_version " << or_dash(m.tool_version) << "\n";
  out << "count " << m.records.size() << "\n";
  for (const ManifestRecord& r : m.records) {
    out << "frame index=" << r.index << " pose=" << PoseField(r.pose);
    for (Buffer b : kAllBuffers) {
      const ManifestFile& f = r.files[BufferIndex(b)];
      out << " " << BufferName(b) << "=" << f.path << "@" << f.sha256;
    }
    out << "\n";
  }
  out << "end\n";
  return out.str();
}

Manifest ParseManifest(std::string_view source) {
  const std::vector<text::Line> lines = text::Tokenize(source);
  if (lines.empty()) throw ParseError("empty manifest", 1, 0);
  {
    text::LineReader r(lines.front());
    const text::Token& magic = r.Peek();
    if (magic.text != "aipman") r.FailAt(magic, "missing 'aipman' header");
    r.Word();
    const text::Token& version = r.Peek();
    if (version.text != "v1") {
      r.FailAt(version, "unsupported manifest version '" +
                            std::string(version.text) + "'");
    }
    r.Word();
    r.ExpectEnd();
  }
  Manifest m;
  auto dash = [](std::string_view s) {
    return s == "-" ? std::string() : std::string(s);
  };
  std::int64_t count = -1;
  bool saw_end = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const text::Line& line = lines[i];
    text::LineReader r(line, 1);
    if (saw_end) r.FailAt(line[0], "content after 'end'");
    const std::string_view key = line[0].text;
    if (key == "scene") {
      m.scene = dash(r.Word());
    } else if (key == "scenario") {
      m.scenario = dash(r.Word());
    } else if (key == "trajectory_digest") {
      m.trajectory_digest = dash(r.Word());
    } else if (key == "tool_version") {
      m.tool_version = dash(r.Word());
    } else if (key == "count") {
      count = r.Int();
      if (count < 0) r.Fail("negative count");
    } else if (key == "end") {
      saw_end = true;
    } else if (key == "frame") {
      ManifestRecord rec;
      bool seen[7] = {};
      while (!r.done()) {
        const text::Token& tok = r.Peek();
        const std::string_view field = r.Word();
        const std::size_t eq = field.find('=');
        if (eq == std::string_view::npos) r.FailAt(tok, "expected key=value");
        const std::string_view k = field.substr(0, eq);
        const std::string_view v = field.substr(eq + 1);
        int slot = -1;
        if (k == "index") {
          const auto idx = text::ParseInt(v);
          if (!idx || *idx < 0) r.FailAt(tok, "bad frame index");
          rec.index = static_cast<int>(*idx);
          slot = 5;
        } else if (k == "pose") {
          try {
            rec.pose = ParsePoseField(v);
          } catch (const Error& e) {
            r.FailAt(tok, e.what());
          }
          slot = 6;
        } else {
          for (Buffer b : kAllBuffers) {
            if (k == BufferName(b)) slot = BufferIndex(b);
          }
          if (slot < 0) r.FailAt(tok, "unknown field '" + std::string(k) + "'");
          const std::size_t at = v.rfind('@');
          if (at == std::string_view::npos || at == 0 ||
              !IsHexDigest(v.substr(at + 1))) {
            r.FailAt(tok, "expected path@sha256");
          }
          rec.files[slot].path = std::string(v.substr(0, at));
          rec.files[slot].sha256 = std::string(v.substr(at + 1));
        }
        if (seen[slot]) r.FailAt(tok, "duplicate field '" + std::string(k) + "'");
        seen[slot] = true;
      }
      for (bool s : seen) {
        if (!s) r.Fail("frame record is missing fields");
      }
      m.records.push_back(std::move(rec));
    } else {
      r.FailAt(line[0], "unknown key '" + std::string(key) + "'");
    }
    r.ExpectEnd();
  }
  const int last_line = lines.back().number;
  if (!saw_end) throw ParseError("truncated manifest: missing 'end'", last_line, 0);
  if (count < 0) throw ParseError("missing 'count'", last_line, 0);
  if (count != static_cast<std::int64_t>(m.records.size())) {
    throw ParseError("count does not match the number of frame records",
                     last_line, 0);
  }
  return m;
}

Manifest ReadManifest(const fs::path& path) {
  return ParseManifest(ReadTextFile(path));
}

void WriteManifest(const fs::path& path, const Manifest& manifest) {
  WriteTextFile(path, SerializeManifest(manifest));
}

VerifyReport VerifyManifest(const fs::path& path) {
  const Manifest m = ReadManifest(path);
  const fs::path dir = path.parent_path();
  VerifyReport report;
  report.records = m.records.size();
  for (const ManifestRecord& r : m.records) {
    for (Buffer b : kAllBuffers) {
      const ManifestFile& f = r.files[BufferIndex(b)];
      const fs::path file = dir / f.path;
      ++report.files_checked;
      std::error_code ec;
      if (!fs::is_regular_file(file, ec)) {
        report.issues.push_back(
            {r.index, b, ManifestIssue::Kind::kMissing, f.path});
      } else if (Sha256File(file) != f.sha256) {
        report.issues.push_back(
            {r.index, b, ManifestIssue::Kind::kCorrupt, f.path});
      }
    }
  }
  return report;
}

std::string FormatVerifyReport(const VerifyReport& report) {
  std::ostringstream out;
  for (const ManifestIssue& issue : report.issues) {
    out << (issue.kind == ManifestIssue::Kind::kMissing ? "missing" : "corrupt")
        << " frame=" << issue.record << " buffer=" << BufferName(issue.buffer)
        << " path=" << issue.path << "\n";
  }
  out << (report.ok() ? "ok" : "FAILED") << ": " << report.records
      << " records, " << report.files_checked << " files, "
      << report.issues.size() << " issues\n";
  return out.str();
}

Split MakeSplit(std::size_t n, double ratio, std::uint64_t seed) {
  if (!(ratio > 0 && ratio < 1)) throw Error("split ratio must be in (0, 1)");
  if (n < 2) throw Error("split needs at least 2 records");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  SplitMix64 rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.Below(i + 1));
    std::swap(order[i], order[j]);
  }
  const auto train_size =
      static_cast<std::size_t>(std::llround(ratio * static_cast<double>(n)));
  Split s;
  s.ratio = ratio;
  s.seed = seed;
  s.count = n;
  s.train.assign(order.begin(), order.begin() + train_size);
  s.test.assign(order.begin() + train_size, order.end());
  std::sort(s.train.begin(), s.train.end());
  std::sort(s.test.begin(), s.test.end());
  return s;
}

std::string SerializeSplit(const Split& s) {
  std::ostringstream out;
  out << "aipsplit v1\n";
  out << "ratio " << text::FormatDouble(s.ratio) << "\n";
  out << "seed " << s.seed << "\n";
  out << "count " << s.count << "\n";
  auto list = [&](const char* key, const std::vector<std::size_t>& v) {
    out << key << " " << v.size();
    for (std::size_t i : v) out << " " << i;
    out << "\n";
  };
  list("train", s.train);
  list("test", s.test);
  out << "end\n";
  return out.str();
}

Split ParseSplit(std::string_view source) {
  const std::vector<text::Line> lines = text::Tokenize(source);
  if (lines.empty()) throw ParseError("empty split file", 1, 0);
  {
    text::LineReader r(lines.front());
    r.Expect("aipsplit");
    r.Expect("v1");
    r.ExpectEnd();
  }
  Split s;
  bool saw_end = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const text::Line& line = lines[i];
    text::LineReader r(line, 1);
    if (saw_end) r.FailAt(line[0], "content after 'end'");
    const std::string_view key = line[0].text;
    if (key == "ratio") {
      s.ratio = r.Double();
    } else if (key == "seed") {
      s.seed = r.UInt64();
    } else if (key == "count") {
      s.count = r.UInt64();
    } else if (key == "train" || key == "test") {
      auto& v = key == "train" ? s.train : s.test;
      const std::uint64_t size = r.UInt64();
      v.clear();
      for (std::uint64_t k = 0; k < size; ++k) v.push_back(r.UInt64());
    } else if (key == "end") {
      saw_end = true;
    } else {
      r.FailAt(line[0], "unknown key '" + std::string(key) + "'");
    }
    r.ExpectEnd();
  }
  if (!saw_end) {
    throw ParseError("truncated split file: missing 'end'",
                     lines.back().number, 0);
  }
  return s;
}

}  // namespace aip
