#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "aip/camera.hpp"
#include "aip/render.hpp"
#include "aip/scene.hpp"

namespace aip {

enum class Buffer { kColor, kDepthPersp, kDepthOrtho, kNormals, kLabels };
inline constexpr std::array<Buffer, 5> kAllBuffers = {
    Buffer::kColor, Buffer::kDepthPersp, Buffer::kDepthOrtho,
    Buffer::kNormals, Buffer::kLabels};
inline constexpr std::array<Buffer, 4> kGroundTruthBuffers = {
    Buffer::kDepthPersp, Buffer::kDepthOrtho, Buffer::kNormals,
    Buffer::kLabels};

// "color", "depth_persp", ...; also the file-name suffix.
std::string_view BufferName(Buffer buffer);

inline constexpr const char* kLegendFile = "labels_legend.txt";

// `000042_depth_persp.png` style names, relative to the frame directory.
std::string FrameFileName(int index, Buffer buffer);
std::string FrameMetaFileName(int index);

struct ExportedFrame {
  int index = 0;
  std::array<std::string, 5> files;  // relative names, indexed by Buffer
};

// Writes the five PNG buffers and a key=value meta file. Depth is 16-bit
// grayscale, labels 8-bit grayscale, color and normals 8-bit RGB.
ExportedFrame ExportFrame(const FrameOutput& frame, const std::filesystem::path& dir,
                          int index);

// `id name r g b` per class; display colors are stable per id.
void WriteLabelLegend(const Scene& scene, const std::filesystem::path& dir);
std::array<std::uint8_t, 3> LabelDisplayColor(int class_id);

std::string FormatFrameMeta(const FrameOutput& frame);

struct ManifestFile {
  std::string path;    // relative to the manifest directory
  std::string sha256;  // lowercase hex
  bool operator==(const ManifestFile&) const = default;
};

struct ManifestRecord {
  int index = 0;
  Pose pose;
  std::array<ManifestFile, 5> files;  // indexed by Buffer
  bool operator==(const ManifestRecord&) const = default;
};

struct Manifest {
  static constexpr const char* kFileName = "manifest.aipman";

  std::string scene;
  std::string scenario;
  std::string trajectory_digest;
  std::string tool_version;
  std::vector<ManifestRecord> records;

  bool operator==(const Manifest&) const = default;
};

// Header `aipman v1`, one `frame` record per line, terminated by `end`.
std::string SerializeManifest(const Manifest& manifest);
Manifest ParseManifest(std::string_view text);
Manifest ReadManifest(const std::filesystem::path& path);
void WriteManifest(const std::filesystem::path& path, const Manifest& manifest);

// Builds the record for an exported frame, hashing its files.
ManifestRecord MakeManifestRecord(const ExportedFrame& frame, const Pose& pose,
                                  const std::filesystem::path& dir);

struct ManifestIssue {
  enum class Kind { kMissing, kCorrupt };
  int record = 0;
  Buffer buffer = Buffer::kColor;
  Kind kind = Kind::kMissing;
  std::string path;
};

struct VerifyReport {
  std::size_t records = 0;
  std::size_t files_checked = 0;
  std::vector<ManifestIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Re-hashes every file listed by the manifest at `path`.
VerifyReport VerifyManifest(const std::filesystem::path& path);
std::string FormatVerifyReport(const VerifyReport& report);

struct Split {
  std::vector<std::size_t> train;  // ascending
  std::vector<std::size_t> test;   // ascending
  double ratio = 0.8;
  std::uint64_t seed = 0;
  std::size_t count = 0;

  bool operator==(const Split&) const = default;
};

// Fisher-Yates over [0, n) driven by splitmix64(seed); the first
// round(ratio * n) shuffled indices form the training set.
Split MakeSplit(std::size_t n, double ratio, std::uint64_t seed);

// Header `aipsplit v1`.
std::string SerializeSplit(const Split& split);
Split ParseSplit(std::string_view text);

}  // namespace aip
