#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "aip/annotate.hpp"
#include "aip/dataset.hpp"
#include "aip/metrics.hpp"

namespace aip {

// Directory evaluation pairs every `*_<buffer>.png` in the ground-truth
// directory with the same file name in the prediction directory. Pixels
// whose ground truth is a miss (depth 65535 or 0, normal 128,128,128) are
// masked out; normals are additionally masked where the prediction holds
// the no-normal code.

DepthMetrics EvaluateDepthDirs(const std::filesystem::path& pred_dir,
                               const std::filesystem::path& gt_dir,
                               Buffer buffer = Buffer::kDepthPersp,
                               const DepthEncoding& encoding = {});

NormalMetrics EvaluateNormalDirs(const std::filesystem::path& pred_dir,
                                 const std::filesystem::path& gt_dir);

// classes == 0 reads the class count from the ground-truth legend file.
SegMetrics EvaluateSegDirs(const std::filesystem::path& pred_dir,
                           const std::filesystem::path& gt_dir,
                           std::size_t classes = 0);

// Class names from a labels legend, indexed by id.
std::vector<std::string> ReadLegend(const std::filesystem::path& file);

// Sorted file names in `dir` ending with `_<buffer>.png`.
std::vector<std::string> ListBufferFiles(const std::filesystem::path& dir,
                                         Buffer buffer);

}  // namespace aip
