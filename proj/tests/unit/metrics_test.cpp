#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>

#include "aip/error.hpp"
#include "aip/metrics.hpp"
#include "aip/rng.hpp"
#include "support/oracles.hpp"

namespace aip {
namespace {

void ExpectRel(double actual, double expected, const char* what) {
  EXPECT_LE(std::abs(actual - expected), 1e-9 * std::max(1.0, std::abs(expected))) << what;
}

TEST(DepthMetrics, IdenticalInputs) {
  const std::vector<double> d = {1.0, 2.5, 7.0};
  const DepthMetrics m = ComputeDepthMetrics(d, d);
  EXPECT_EQ(m.delta1, 1.0);
  EXPECT_EQ(m.delta3, 1.0);
  EXPECT_EQ(m.rel, 0.0);
  EXPECT_EQ(m.rms, 0.0);
  EXPECT_EQ(m.log10, 0.0);
  EXPECT_EQ(m.pixels, 3u);
}

TEST(DepthMetrics, WorkedExample) {
  const DepthMetrics m = ComputeDepthMetrics(std::vector<double>{1, 2}, std::vector<double>{1, 1});
  EXPECT_EQ(m.delta1, 0.5);
  EXPECT_EQ(m.delta2, 0.5);
  EXPECT_EQ(m.delta3, 0.5);
  EXPECT_EQ(m.rel, 0.5);
  EXPECT_NEAR(m.rms, std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(m.log10, std::log10(2.0) / 2, 1e-15);
  EXPECT_NEAR(m.log10, 0.1505, 5e-5);
}

TEST(DepthMetrics, DeltaSymmetricRelNot) {
  const std::vector<double> a = {1, 2, 3}, b = {2, 2, 1};
  const DepthMetrics ab = ComputeDepthMetrics(a, b);
  const DepthMetrics ba = ComputeDepthMetrics(b, a);
  EXPECT_EQ(ab.delta1, ba.delta1);
  EXPECT_EQ(ab.delta2, ba.delta2);
  EXPECT_EQ(ab.delta3, ba.delta3);
  EXPECT_NEAR(ab.rms, ba.rms, 1e-15);
  EXPECT_NE(ab.rel, ba.rel);
  // pred=a, gt=b: (1/2 + 0 + 2/1) / 3; swapped: (1/1 + 0 + 2/3) / 3.
  EXPECT_NEAR(ab.rel, 2.5 / 3, 1e-15);
  EXPECT_NEAR(ba.rel, (1.0 + 2.0 / 3) / 3, 1e-15);
}

TEST(DepthMetrics, MaskAndErrors) {
  const std::vector<double> pred = {1, 2, -1}, gt = {1, 1, 5};
  const std::vector<std::uint8_t> mask = {1, 1, 0};
  const DepthMetrics m = ComputeDepthMetrics(pred, gt, mask);
  EXPECT_EQ(m.pixels, 2u);
  EXPECT_EQ(m.rel, 0.5);
  EXPECT_THROW(ComputeDepthMetrics(pred, gt), Error);
  EXPECT_THROW(ComputeDepthMetrics(pred, gt, std::vector<std::uint8_t>{0, 0, 0}), Error);
  EXPECT_THROW(ComputeDepthMetrics(std::vector<double>{1}, gt), Error);
}

TEST(DepthMetrics, AccumulatorPoolsPixels) {
  DepthAccumulator acc;
  acc.Add(std::vector<double>{1}, std::vector<double>{1});
  acc.Add(std::vector<double>{2}, std::vector<double>{1});
  const DepthMetrics pooled = acc.Result();
  const DepthMetrics whole =
      ComputeDepthMetrics(std::vector<double>{1, 2}, std::vector<double>{1, 1});
  EXPECT_EQ(pooled.rel, whole.rel);
  EXPECT_EQ(pooled.rms, whole.rms);
  EXPECT_EQ(pooled.pixels, 2u);
}

TEST(NormalMetrics, WorkedExamples) {
  const double r = 20.0 * kPi / 180.0;
  const std::vector<Vec3> gt = {Vec3(0, 0, 1), Vec3(0, 0, 1)};
  const std::vector<Vec3> pred = {Vec3(0, 0, 1), Vec3(0, std::sin(r), std::cos(r))};
  const NormalMetrics m = ComputeNormalMetrics(pred, gt);
  EXPECT_EQ(m.pct_11_5, 0.5);
  EXPECT_EQ(m.pct_22_5, 1.0);
  EXPECT_NEAR(m.mean_deg, 10.0, 1e-12);
  EXPECT_EQ(m.median_deg, 0.0);

  const std::vector<Vec3> g45 = {Vec3(0, 0, 1)};
  const std::vector<Vec3> p45 = {Vec3(0, std::sqrt(0.5), std::sqrt(0.5))};
  const NormalMetrics m45 = ComputeNormalMetrics(p45, g45);
  EXPECT_NEAR(m45.mean_deg, 45.0, 1e-12);
  EXPECT_EQ(m45.pct_30, 0.0);

  const NormalMetrics same = ComputeNormalMetrics(gt, gt);
  EXPECT_EQ(same.pct_11_5, 1.0);
  EXPECT_EQ(same.mean_deg, 0.0);
  EXPECT_EQ(same.median_deg, 0.0);
}

TEST(NormalMetrics, MedianIsLowerMiddle) {
  std::vector<Vec3> gt, pred;
  for (double deg : {40.0, 5.0, 30.0, 10.0}) {
    const double r = deg * kPi / 180.0;
    gt.emplace_back(0, 0, 1);
    pred.emplace_back(std::sin(r), 0, std::cos(r));
  }
  EXPECT_NEAR(ComputeNormalMetrics(pred, gt).median_deg, 10.0, 1e-12);
}

TEST(SegMetrics, WorkedExample) {
  const std::vector<std::uint8_t> gt = {0, 0, 1, 1}, pred = {0, 1, 1, 1};
  const SegMetrics m = ComputeSegMetrics(pred, gt, 3);
  ASSERT_EQ(m.iou.size(), 3u);
  EXPECT_EQ(*m.iou[0], 0.5);
  EXPECT_EQ(*m.iou[1], 2.0 / 3.0);
  EXPECT_FALSE(m.iou[2]);
  EXPECT_NEAR(m.mean_iou, 0.58333333333333333, 1e-15);
  EXPECT_NEAR(m.mean_iou, 0.5833, 5e-5);
  EXPECT_EQ(m.global_iou, 3.0 / 5.0);
  EXPECT_EQ(m.pixels, 4u);
  std::uint64_t total = 0;
  for (auto c : m.confusion) total += c;
  EXPECT_EQ(total, 4u);
}

TEST(SegMetrics, AllOtherPredictionGivesZeroForMissedClass) {
  const std::vector<std::uint8_t> gt = {0, 1, 1, 0}, pred = {0, 0, 0, 0};
  const SegMetrics m = ComputeSegMetrics(pred, gt, 2);
  EXPECT_EQ(*m.iou[1], 0.0);
  EXPECT_EQ(*m.iou[0], 0.5);
}

TEST(SegMetrics, IdenticalIsPerfectAndRangeChecked) {
  const std::vector<std::uint8_t> gt = {0, 3, 2, 2};
  EXPECT_EQ(ComputeSegMetrics(gt, gt, 4).mean_iou, 1.0);
  EXPECT_THROW(ComputeSegMetrics(gt, gt, 3), Error);
}

TEST(SegMetrics, ConfusionIsPermutationInvariantAndMergeable) {
  SplitMix64 rng(12);
  std::vector<std::uint8_t> gt(500), pred(500);
  for (std::size_t i = 0; i < gt.size(); ++i) {
    gt[i] = static_cast<std::uint8_t>(rng.Below(6));
    pred[i] = static_cast<std::uint8_t>(rng.Below(6));
  }
  const SegMetrics ref = ComputeSegMetrics(pred, gt, 6);
  std::vector<std::size_t> order(gt.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.Below(i + 1)]);
  std::vector<std::uint8_t> gt2, pred2;
  for (std::size_t i : order) {
    gt2.push_back(gt[i]);
    pred2.push_back(pred[i]);
  }
  EXPECT_EQ(ComputeSegMetrics(pred2, gt2, 6).confusion, ref.confusion);

  ConfusionMatrix a(6), b(6);
  a.Add(std::span(pred).first(200), std::span(gt).first(200));
  b.Add(std::span(pred).subspan(200), std::span(gt).subspan(200));
  a.Merge(b);
  EXPECT_EQ(a.Result().confusion, ref.confusion);
  EXPECT_EQ(a.Result().mean_iou, ref.mean_iou);
}

TEST(MetricOracle, RandomCasesAgree) {
  SplitMix64 rng(2024);
  for (int c = 0; c < 100; ++c) {
    const int n = 16 * 16;
    std::vector<double> pd(n), gd(n);
    std::vector<Vec3> pn(n), gn(n);
    std::vector<std::array<double, 3>> pn_raw(n), gn_raw(n);
    std::vector<std::uint8_t> ps(n), gs(n);
    std::vector<int> ps_i(n), gs_i(n);
    const int classes = 2 + static_cast<int>(rng.Below(10));
    for (int i = 0; i < n; ++i) {
      gd[i] = rng.Uniform(0.1, 10.0);
      pd[i] = gd[i] * rng.Uniform(0.5, 2.0);
      for (int k = 0; k < 3; ++k) {
        gn_raw[i][k] = rng.Uniform(-1, 1);
        pn_raw[i][k] = gn_raw[i][k] + rng.Uniform(-0.6, 0.6);
      }
      gn[i] = Vec3(gn_raw[i][0], gn_raw[i][1], gn_raw[i][2]);
      pn[i] = Vec3(pn_raw[i][0], pn_raw[i][1], pn_raw[i][2]);
      gs_i[i] = static_cast<int>(rng.Below(classes));
      ps_i[i] = rng.Below(3) == 0 ? static_cast<int>(rng.Below(classes)) : gs_i[i];
      gs[i] = static_cast<std::uint8_t>(gs_i[i]);
      ps[i] = static_cast<std::uint8_t>(ps_i[i]);
    }
    const DepthMetrics d = ComputeDepthMetrics(pd, gd);
    const auto od = testing::NaiveDepthMetrics(pd, gd);
    ExpectRel(d.delta1, od.delta[0], "delta1");
    ExpectRel(d.delta2, od.delta[1], "delta2");
    ExpectRel(d.delta3, od.delta[2], "delta3");
    ExpectRel(d.rel, od.rel, "rel");
    ExpectRel(d.rms, od.rms, "rms");
    ExpectRel(d.log10, od.log10, "log10");
    EXPECT_LE(d.delta1, d.delta2);
    EXPECT_LE(d.delta2, d.delta3);

    const NormalMetrics nm = ComputeNormalMetrics(pn, gn);
    const auto on = testing::NaiveNormalMetrics(pn_raw, gn_raw);
    ExpectRel(nm.pct_11_5, on.pct[0], "pct11");
    ExpectRel(nm.pct_22_5, on.pct[1], "pct22");
    ExpectRel(nm.pct_30, on.pct[2], "pct30");
    ExpectRel(nm.mean_deg, on.mean, "mean");
    ExpectRel(nm.median_deg, on.median, "median");
    EXPECT_LE(nm.pct_11_5, nm.pct_22_5);
    EXPECT_LE(nm.pct_22_5, nm.pct_30);

    const SegMetrics sm = ComputeSegMetrics(ps, gs, classes);
    const auto os = testing::NaiveSegMetrics(ps_i, gs_i, classes);
    ExpectRel(sm.mean_iou, os.mean_iou, "miou");
    for (int k = 0; k < classes; ++k) {
      if (os.iou[k] < 0) {
        EXPECT_FALSE(sm.iou[k]);
      } else {
        ASSERT_TRUE(sm.iou[k]);
        ExpectRel(*sm.iou[k], os.iou[k], "iou");
      }
    }
  }
}

TEST(GoalTag, FromScenarioIds) {
  EXPECT_EQ(GoalTag("brown_room/day/high", "brown_room/day/high"), "SC");
  EXPECT_EQ(GoalTag("brown_room/day/high", "brown_room/night/high"), "L");
  EXPECT_EQ(GoalTag("brown_room/day/low", "brown_room/day/high"), "F");
  EXPECT_EQ(GoalTag("brown_room/day/high", "brown_room/day/low"), "F-");
  EXPECT_EQ(GoalTag("brown_room/day/high", "blue_room/day/high"), "M");
  EXPECT_EQ(GoalTag("brown_room/day/low", "blue_room/night/high"), "M+L+F");
  EXPECT_EQ(GoalTag("brown_room/day/mid", "brown_room/day/ultra"), "F?");
}

TEST(Report, RowsAndJson) {
  const DepthMetrics d = ComputeDepthMetrics(std::vector<double>{1, 2}, std::vector<double>{1, 1});
  const std::string row = FormatDepthRow("brown_room/day/low", "brown_room/day/high", d);
  EXPECT_NE(row.find("brown_room/day/low"), std::string::npos);
  EXPECT_NE(row.find(" F "), std::string::npos);
  EXPECT_NE(row.find("0.5000"), std::string::npos);
  EXPECT_NE(DepthReportHeader().find("rel"), std::string::npos);

  const auto j = nlohmann::json::parse(ToJson(d, "a/b/low", "a/b/high"));
  EXPECT_EQ(j["goal"], "F");
  EXPECT_EQ(j["rms"].get<double>(), d.rms);

  const SegMetrics s = ComputeSegMetrics(std::vector<std::uint8_t>{0, 1, 1, 1},
                                         std::vector<std::uint8_t>{0, 0, 1, 1}, 3);
  const auto js = nlohmann::json::parse(ToJson(s, "x", "x", {"other", "thing", "unused"}));
  EXPECT_EQ(js["mean_iou"].get<double>(), s.mean_iou);
  EXPECT_EQ(js["global_iou"].get<double>(), s.global_iou);
}

}  // namespace
}  // namespace aip
