#include "aip/evaluate.hpp"

#include <algorithm>

#include "aip/error.hpp"
#include "aip/image_io.hpp"
#include "aip/text.hpp"

namespace aip {
namespace {

namespace fs = std::filesystem;

std::vector<std::string> PairedFiles(const fs::path& pred_dir,
                                     const fs::path& gt_dir, Buffer buffer) {
  if (!fs::is_directory(gt_dir)) {
    throw IoError("not a directory: " + gt_dir.string());
  }
  if (!fs::is_directory(pred_dir)) {
    throw IoError("not a directory: " + pred_dir.string());
  }
  std::vector<std::string> names = ListBufferFiles(gt_dir, buffer);
  if (names.empty()) {
    throw Error("no *_" + std::string(BufferName(buffer)) + ".png files in " +
                gt_dir.string());
  }
  for (const std::string& name : names) {
    if (!fs::is_regular_file(pred_dir / name)) {
      throw Error("prediction missing for " + name);
    }
  }
  return names;
}

template <typename Img>
void CheckSameSize(const Img& a, const Img& b, const std::string& name) {
  if (a.width != b.width || a.height != b.height) {
    throw Error("size mismatch for " + name);
  }
}

}  // namespace

std::vector<std::string> ListBufferFiles(const fs::path& dir, Buffer buffer) {
  const std::string suffix = "_" + std::string(BufferName(buffer)) + ".png";
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(name);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

DepthMetrics EvaluateDepthDirs(const fs::path& pred_dir, const fs::path& gt_dir,
                               Buffer buffer, const DepthEncoding& encoding) {
  if (buffer != Buffer::kDepthPersp && buffer != Buffer::kDepthOrtho) {
    throw Error("depth evaluation needs a depth buffer");
  }
  DepthAccumulator acc;
  for (const std::string& name : PairedFiles(pred_dir, gt_dir, buffer)) {
    const ImageGray16 gt = ReadPngGray16(gt_dir / name);
    const ImageGray16 pred = ReadPngGray16(pred_dir / name);
    CheckSameSize(gt, pred, name);
    std::vector<double> p(gt.data.size()), g(gt.data.size());
    std::vector<std::uint8_t> mask(gt.data.size());
    for (std::size_t i = 0; i < gt.data.size(); ++i) {
      g[i] = DecodeDepth(gt.data[i], encoding);
      p[i] = DecodeDepth(pred.data[i], encoding);
      mask[i] = gt.data[i] != kDepthMiss && gt.data[i] != 0;
    }
    try {
      acc.Add(p, g, mask);
    } catch (const Error& e) {
      throw Error(name + ": " + e.what());
    }
  }
  return acc.Result();
}

NormalMetrics EvaluateNormalDirs(const fs::path& pred_dir,
                                 const fs::path& gt_dir) {
  NormalAccumulator acc;
  for (const std::string& name :
       PairedFiles(pred_dir, gt_dir, Buffer::kNormals)) {
    const ImageRgb8 gt = ReadPngRgb8(gt_dir / name);
    const ImageRgb8 pred = ReadPngRgb8(pred_dir / name);
    CheckSameSize(gt, pred, name);
    const std::size_t n = gt.pixel_count();
    std::vector<Vec3> p(n, Vec3::Zero()), g(n, Vec3::Zero());
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      const Rgb8 gc = {gt.data[3 * i], gt.data[3 * i + 1], gt.data[3 * i + 2]};
      const Rgb8 pc = {pred.data[3 * i], pred.data[3 * i + 1],
                       pred.data[3 * i + 2]};
      const auto gv = DecodeNormal(gc);
      const auto pv = DecodeNormal(pc);
      if (gv && pv) {
        g[i] = *gv;
        p[i] = *pv;
        mask[i] = 1;
      }
    }
    acc.Add(p, g, mask);
  }
  return acc.Result();
}

SegMetrics EvaluateSegDirs(const fs::path& pred_dir, const fs::path& gt_dir,
                           std::size_t classes) {
  if (classes == 0) {
    const fs::path legend = gt_dir / kLegendFile;
    if (!fs::is_regular_file(legend)) {
      throw Error("class count not given and no " + std::string(kLegendFile) +
                  " in " + gt_dir.string());
    }
    classes = ReadLegend(legend).size();
  }
  ConfusionMatrix cm(classes);
  for (const std::string& name :
       PairedFiles(pred_dir, gt_dir, Buffer::kLabels)) {
    const ImageGray8 gt = ReadPngGray8(gt_dir / name);
    const ImageGray8 pred = ReadPngGray8(pred_dir / name);
    CheckSameSize(gt, pred, name);
    try {
      cm.Add(pred.data, gt.data);
    } catch (const Error& e) {
      throw Error(name + ": " + e.what());
    }
  }
  return cm.Result();
}

std::vector<std::string> ReadLegend(const fs::path& file) {
  std::vector<std::string> names;
  const std::string content = ReadTextFile(file);
  for (const text::Line& line : text::Tokenize(content)) {
    text::LineReader r(line);
    const std::int64_t id = r.Int();
    if (id != static_cast<std::int64_t>(names.size())) {
      r.Fail("legend ids must be consecutive from 0");
    }
    names.emplace_back(r.Word());
  }
  if (names.empty()) throw Error("empty legend " + file.string());
  return names;
}

}  // namespace aip
