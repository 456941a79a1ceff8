#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aip/math.hpp"

namespace aip {

struct DepthMetrics {
  double delta1 = 0, delta2 = 0, delta3 = 0;  // fraction with ratio < 1.25^i
  double rel = 0;    // mean |pred - gt| / gt
  double rms = 0;    // sqrt(mean (pred - gt)^2)
  double log10 = 0;  // mean |log10 pred - log10 gt|
  std::size_t pixels = 0;
};

struct NormalMetrics {
  double pct_11_5 = 0, pct_22_5 = 0, pct_30 = 0;
  double mean_deg = 0;
  double median_deg = 0;  // lower middle value for even counts
  std::size_t pixels = 0;
};

struct SegMetrics {
  std::size_t classes = 0;
  std::vector<std::optional<double>> iou;  // nullopt: class absent from gt and pred
  double mean_iou = 0;    // over present classes
  double global_iou = 0;  // sum TP / sum (TP + FP + FN)
  std::vector<std::uint64_t> confusion;  // [gt * classes + pred]
  std::uint64_t pixels = 0;
};

// Pooled over every Add() call; all inputs in meters. An empty mask selects
// every pixel. Throws on empty selections and nonpositive masked values.
class DepthAccumulator {
 public:
  void Add(std::span<const double> pred, std::span<const double> gt,
           std::span<const std::uint8_t> mask = {});
  DepthMetrics Result() const;

 private:
  std::size_t n_ = 0;
  std::size_t within_[3] = {0, 0, 0};
  double rel_sum_ = 0, sq_sum_ = 0, log_sum_ = 0;
};

DepthMetrics ComputeDepthMetrics(std::span<const double> pred,
                                 std::span<const double> gt,
                                 std::span<const std::uint8_t> mask = {});

// Vectors need not be unit length but must be nonzero where masked.
class NormalAccumulator {
 public:
  void Add(std::span<const Vec3> pred, std::span<const Vec3> gt,
           std::span<const std::uint8_t> mask = {});
  NormalMetrics Result() const;

 private:
  std::vector<double> angles_;
};

NormalMetrics ComputeNormalMetrics(std::span<const Vec3> pred,
                                   std::span<const Vec3> gt,
                                   std::span<const std::uint8_t> mask = {});

// Angle between two vectors in degrees, via arccos of the clamped cosine.
double AngleDegrees(const Vec3& a, const Vec3& b);

class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t classes);

  // Throws when a label is >= the class count.
  void Add(std::span<const std::uint8_t> pred, std::span<const std::uint8_t> gt);
  void Merge(const ConfusionMatrix& other);
  std::uint64_t at(std::size_t gt, std::size_t pred) const {
    return counts_[gt * classes_ + pred];
  }
  SegMetrics Result() const;

 private:
  std::size_t classes_;
  std::vector<std::uint64_t> counts_;
};

SegMetrics ComputeSegMetrics(std::span<const std::uint8_t> pred,
                             std::span<const std::uint8_t> gt,
                             std::size_t classes);

// Experiment goal from scenario ids "map/lighting/fidelity": SC when equal,
// otherwise M (map), L (lighting), F (fidelity rises from train to test),
// F- (fidelity falls), F? (fidelities not ordered), joined with '+'.
std::string GoalTag(const std::string& train_id, const std::string& test_id);

std::string DepthReportHeader();
std::string NormalReportHeader();
std::string SegReportHeader();
std::string FormatDepthRow(const std::string& train, const std::string& test,
                           const DepthMetrics& m);
std::string FormatNormalRow(const std::string& train, const std::string& test,
                            const NormalMetrics& m);
std::string FormatSegRow(const std::string& train, const std::string& test,
                         const SegMetrics& m);

// Machine-readable sidecars at full double precision.
std::string ToJson(const DepthMetrics& m, const std::string& train,
                   const std::string& test);
std::string ToJson(const NormalMetrics& m, const std::string& train,
                   const std::string& test);
std::string ToJson(const SegMetrics& m, const std::string& train,
                   const std::string& test,
                   const std::vector<std::string>& class_names = {});

}  // namespace aip
