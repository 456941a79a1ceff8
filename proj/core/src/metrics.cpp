#include "aip/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "aip/error.hpp"

namespace aip {
namespace {

template <typename T>
void CheckShapes(std::span<const T> pred, std::span<const T> gt,
                 std::span<const std::uint8_t> mask) {
  if (pred.size() != gt.size()) throw Error("prediction and ground truth differ in size");
  if (!mask.empty() && mask.size() != gt.size()) throw Error("mask differs in size");
}

bool Selected(std::span<const std::uint8_t> mask, std::size_t i) {
  return mask.empty() || mask[i] != 0;
}

std::string Fixed(double v, int decimals = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string Row(const std::string& train, const std::string& test,
                const std::vector<double>& values) {
  char head[256];
  std::snprintf(head, sizeof head, "%-28s %-28s %-6s", train.c_str(),
                test.c_str(), GoalTag(train, test).c_str());
  std::string out = head;
  for (double v : values) {
    char cell[32];
    std::snprintf(cell, sizeof cell, " %10s", Fixed(v).c_str());
    out += cell;
  }
  return out;
}

std::string Header(const std::vector<std::string>& columns) {
  char head[256];
  std::snprintf(head, sizeof head, "%-28s %-28s %-6s", "train", "test", "goal");
  std::string out = head;
  for (const std::string& c : columns) {
    char cell[32];
    std::snprintf(cell, sizeof cell, " %10s", c.c_str());
    out += cell;
  }
  return out;
}

struct ScenarioParts {
  std::string map, lighting, fidelity;
};

ScenarioParts SplitId(const std::string& id) {
  ScenarioParts p;
  const std::size_t a = id.find('/');
  const std::size_t b = a == std::string::npos ? a : id.find('/', a + 1);
  if (a == std::string::npos || b == std::string::npos) {
    p.map = id;
    return p;
  }
  p.map = id.substr(0, a);
  p.lighting = id.substr(a + 1, b - a - 1);
  p.fidelity = id.substr(b + 1);
  return p;
}

int FidelityRank(const std::string& name) {
  if (name == "low") return 0;
  if (name == "high") return 1;
  return -1;
}

nlohmann::json Envelope(const char* kind, const std::string& train,
                        const std::string& test) {
  nlohmann::json j;
  j["kind"] = kind;
  j["train"] = train;
  j["test"] = test;
  j["goal"] = GoalTag(train, test);
  return j;
}

}  // namespace

void DepthAccumulator::Add(std::span<const double> pred,
                           std::span<const double> gt,
                           std::span<const std::uint8_t> mask) {
  CheckShapes(pred, gt, mask);
  static const double kThresholds[3] = {1.25, 1.25 * 1.25, 1.25 * 1.25 * 1.25};
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!Selected(mask, i)) continue;
    const double p = pred[i];
    const double g = gt[i];
    if (!(p > 0) || !(g > 0) || !std::isfinite(p) || !std::isfinite(g)) {
      throw Error("nonpositive depth at masked pixel " + std::to_string(i));
    }
    const double ratio = std::max(p / g, g / p);
    for (int k = 0; k < 3; ++k) {
      if (ratio < kThresholds[k]) ++within_[k];
    }
    rel_sum_ += std::abs(p - g) / g;
    sq_sum_ += (p - g) * (p - g);
    log_sum_ += std::abs(std::log10(p) - std::log10(g));
    ++n_;
  }
}

DepthMetrics DepthAccumulator::Result() const {
  if (n_ == 0) throw Error("depth metrics need at least one masked pixel");
  const double n = static_cast<double>(n_);
  DepthMetrics m;
  m.delta1 = static_cast<double>(within_[0]) / n;
  m.delta2 = static_cast<double>(within_[1]) / n;
  m.delta3 = static_cast<double>(within_[2]) / n;
  m.rel = rel_sum_ / n;
  m.rms = std::sqrt(sq_sum_ / n);
  m.log10 = log_sum_ / n;
  m.pixels = n_;
  return m;
}

DepthMetrics ComputeDepthMetrics(std::span<const double> pred,
                                 std::span<const double> gt,
                                 std::span<const std::uint8_t> mask) {
  DepthAccumulator acc;
  acc.Add(pred, gt, mask);
  return acc.Result();
}

double AngleDegrees(const Vec3& a, const Vec3& b) {
  const double cosine = a.normalized().dot(b.normalized());
  return RadToDeg(std::acos(std::clamp(cosine, -1.0, 1.0)));
}

void NormalAccumulator::Add(std::span<const Vec3> pred, std::span<const Vec3> gt,
                            std::span<const std::uint8_t> mask) {
  CheckShapes(pred, gt, mask);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (!Selected(mask, i)) continue;
    if (!(pred[i].squaredNorm() > 0) || !(gt[i].squaredNorm() > 0)) {
      throw Error("undecodable normal at masked pixel " + std::to_string(i));
    }
    angles_.push_back(AngleDegrees(pred[i], gt[i]));
  }
}

NormalMetrics NormalAccumulator::Result() const {
  if (angles_.empty()) throw Error("normal metrics need at least one masked pixel");
  const double n = static_cast<double>(angles_.size());
  NormalMetrics m;
  double sum = 0;
  std::size_t c1 = 0, c2 = 0, c3 = 0;
  for (double a : angles_) {
    sum += a;
    c1 += a < 11.5;
    c2 += a < 22.5;
    c3 += a < 30.0;
  }
  m.pct_11_5 = static_cast<double>(c1) / n;
  m.pct_22_5 = static_cast<double>(c2) / n;
  m.pct_30 = static_cast<double>(c3) / n;
  m.mean_deg = sum / n;
  std::vector<double> sorted = angles_;
  const std::size_t mid = (sorted.size() - 1) / 2;
  std::nth_element(sorted.begin(), sorted.begin() + static_cast<long>(mid),
                   sorted.end());
  m.median_deg = sorted[mid];
  m.pixels = angles_.size();
  return m;
}

NormalMetrics ComputeNormalMetrics(std::span<const Vec3> pred,
                                   std::span<const Vec3> gt,
                                   std::span<const std::uint8_t> mask) {
  NormalAccumulator acc;
  acc.Add(pred, gt, mask);
  return acc.Result();
}

ConfusionMatrix::ConfusionMatrix(std::size_t classes)
    : classes_(classes), counts_(classes * classes, 0) {
  if (classes == 0) throw Error("class count must be positive");
}

void ConfusionMatrix::Add(std::span<const std::uint8_t> pred,
                          std::span<const std::uint8_t> gt) {
  if (pred.size() != gt.size()) {
    throw Error("prediction and ground truth differ in size");
  }
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i] >= classes_ || pred[i] >= classes_) {
      throw Error("label out of range at pixel " + std::to_string(i));
    }
    ++counts_[gt[i] * classes_ + pred[i]];
  }
}

void ConfusionMatrix::Merge(const ConfusionMatrix& other) {
  if (other.classes_ != classes_) throw Error("class counts differ");
  for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

SegMetrics ConfusionMatrix::Result() const {
  SegMetrics m;
  m.classes = classes_;
  m.confusion = counts_;
  m.iou.assign(classes_, std::nullopt);
  std::vector<std::uint64_t> row(classes_, 0), col(classes_, 0);
  for (std::size_t g = 0; g < classes_; ++g) {
    for (std::size_t p = 0; p < classes_; ++p) {
      row[g] += at(g, p);
      col[p] += at(g, p);
      m.pixels += at(g, p);
    }
  }
  double iou_sum = 0;
  std::size_t present = 0;
  std::uint64_t tp_total = 0, union_total = 0;
  for (std::size_t c = 0; c < classes_; ++c) {
    const std::uint64_t tp = at(c, c);
    const std::uint64_t uni = row[c] + col[c] - tp;  // TP + FN + FP
    if (uni == 0) continue;
    const double iou = static_cast<double>(tp) / static_cast<double>(uni);
    m.iou[c] = iou;
    iou_sum += iou;
    ++present;
    tp_total += tp;
    union_total += uni;
  }
  if (present == 0) throw Error("segmentation metrics need at least one pixel");
  m.mean_iou = iou_sum / static_cast<double>(present);
  m.global_iou =
      static_cast<double>(tp_total) / static_cast<double>(union_total);
  return m;
}

SegMetrics ComputeSegMetrics(std::span<const std::uint8_t> pred,
                             std::span<const std::uint8_t> gt,
                             std::size_t classes) {
  ConfusionMatrix cm(classes);
  cm.Add(pred, gt);
  return cm.Result();
}

std::string GoalTag(const std::string& train_id, const std::string& test_id) {
  if (train_id == test_id) return "SC";
  const ScenarioParts a = SplitId(train_id);
  const ScenarioParts b = SplitId(test_id);
  std::vector<std::string> tags;
  if (a.map != b.map) tags.push_back("M");
  if (a.lighting != b.lighting) tags.push_back("L");
  if (a.fidelity != b.fidelity) {
    const int ra = FidelityRank(a.fidelity);
    const int rb = FidelityRank(b.fidelity);
    if (ra < 0 || rb < 0) {
      tags.push_back("F?");
    } else {
      tags.push_back(rb > ra ? "F" : "F-");
    }
  }
  if (tags.empty()) return "SC";
  std::string out = tags.front();
  for (std::size_t i = 1; i < tags.size(); ++i) out += "+" + tags[i];
  return out;
}

std::string DepthReportHeader() {
  return Header({"delta1", "delta2", "delta3", "rel", "rms", "log10"});
}

std::string NormalReportHeader() {
  return Header({"11.5", "22.5", "30", "mean", "median"});
}

std::string SegReportHeader() { return Header({"mean_iou", "global_iou"}); }

std::string FormatDepthRow(const std::string& train, const std::string& test,
                           const DepthMetrics& m) {
  return Row(train, test, {m.delta1, m.delta2, m.delta3, m.rel, m.rms, m.log10});
}

std::string FormatNormalRow(const std::string& train, const std::string& test,
                            const NormalMetrics& m) {
  return Row(train, test,
             {m.pct_11_5, m.pct_22_5, m.pct_30, m.mean_deg, m.median_deg});
}

std::string FormatSegRow(const std::string& train, const std::string& test,
                         const SegMetrics& m) {
  return Row(train, test, {m.mean_iou, m.global_iou});
}

std::string ToJson(const DepthMetrics& m, const std::string& train,
                   const std::string& test) {
  nlohmann::json j = Envelope("depth", train, test);
  j["delta1"] = m.delta1;
  j["delta2"] = m.delta2;
  j["delta3"] = m.delta3;
  j["rel"] = m.rel;
  j["rms"] = m.rms;
  j["log10"] = m.log10;
  j["pixels"] = m.pixels;
  return j.dump(2) + "\n";
}

std::string ToJson(const NormalMetrics& m, const std::string& train,
                   const std::string& test) {
  nlohmann::json j = Envelope("normals", train, test);
  j["pct_11_5"] = m.pct_11_5;
  j["pct_22_5"] = m.pct_22_5;
  j["pct_30"] = m.pct_30;
  j["mean_deg"] = m.mean_deg;
  j["median_deg"] = m.median_deg;
  j["pixels"] = m.pixels;
  return j.dump(2) + "\n";
}

std::string ToJson(const SegMetrics& m, const std::string& train,
                   const std::string& test,
                   const std::vector<std::string>& class_names) {
  nlohmann::json j = Envelope("segmentation", train, test);
  j["mean_iou"] = m.mean_iou;
  j["global_iou"] = m.global_iou;
  j["pixels"] = m.pixels;
  nlohmann::json classes = nlohmann::json::array();
  for (std::size_t c = 0; c < m.classes; ++c) {
    nlohmann::json entry;
    entry["id"] = c;
    if (c < class_names.size()) entry["name"] = class_names[c];
    entry["iou"] = m.iou[c] ? nlohmann::json(*m.iou[c]) : nlohmann::json();
    classes.push_back(entry);
  }
  j["classes"] = classes;
  j["confusion"] = m.confusion;
  return j.dump(2) + "\n";
}

}  // namespace aip
