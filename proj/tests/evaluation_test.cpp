#include <gtest/gtest.h>

#include <cmath>

#include "fcaf3d/error.hpp"
#include "fcaf3d/evaluation.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace fcaf3d {
namespace {

const OrientedBox3 kUnit{0, 0, 0, 1, 1, 1, 0};

OrientedBox3 shifted(double dx) { return {dx, 0, 0, 1, 1, 1, 0}; }

TEST(AveragePrecision, HandComputedCases) {
  const std::vector<double> s2{0.9, 0.8};
  EXPECT_EQ(average_precision({true, false}, s2, 2), 0.5);
  EXPECT_EQ(average_precision({true, true}, s2, 2), 1.0);
  EXPECT_EQ(average_precision({false, true}, s2, 1), 0.5);
  EXPECT_EQ(average_precision({false, false}, s2, 3), 0.0);
  const std::vector<double> s3{0.9, 0.8, 0.7};
  // TP, FP, TP over 2 GT: 0.5 * 1 + 0.5 * 2/3.
  EXPECT_NEAR(*average_precision({true, false, true}, s3, 2), 0.5 + 1.0 / 3.0, 1e-15);
  EXPECT_EQ(average_precision({}, {}, 0), std::nullopt);
  EXPECT_EQ(average_precision({}, {}, 4), 0.0);
}

TEST(AveragePrecision, RanksByScoreNotInputOrder) {
  const std::vector<double> scores{0.1, 0.9};
  EXPECT_EQ(average_precision({true, false}, scores, 1), 0.5);
}

TEST(AveragePrecision, AgreesWithOracleOnRandomRankings) {
  Rng rng(71);
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t n = rng.index(40);
    std::vector<bool> tp(n);
    std::vector<double> scores(n);
    std::size_t n_tp = 0;
    for (std::size_t i = 0; i < n; ++i) {
      tp[i] = rng.uniform() < 0.5;
      n_tp += tp[i] ? 1 : 0;
      scores[i] = 1.0 - static_cast<double>(i) / 64.0;
    }
    const std::size_t n_gt = n_tp + rng.index(4) + (n_tp == 0 ? 1 : 0);
    ASSERT_NEAR(*average_precision(tp, scores, n_gt), oracle::ap(tp, n_gt), 1e-12);
  }
}

TEST(MatchDetections, GreedyByScoreAndBestIou) {
  const std::vector<LabeledBox> gts{{kUnit, 0}, {shifted(5), 0}};
  const std::vector<Detection> dets{
      {0, 0.9, shifted(0.1)},
      {0, 0.8, kUnit},          // GT 0 already taken
      {0, 0.7, shifted(5.2)},
      {1, 0.6, shifted(5.0)},   // wrong class
  };
  EXPECT_EQ(match_detections(dets, gts, 0.5, true), (std::vector<bool>{true, false, true, false}));
  EXPECT_EQ(match_detections(dets, gts, 0.9, true), (std::vector<bool>{false, true, false, false}));
  const std::vector<Detection> unsorted{{0, 0.1, kUnit}, {0, 0.9, kUnit}};
  EXPECT_THROW(match_detections(unsorted, gts, 0.5, true), InvalidArgument);
}

TEST(MatchDetections, ThresholdIsInclusive) {
  const std::vector<LabeledBox> gts{{kUnit, 0}};
  const std::vector<Detection> dets{{0, 0.9, shifted(oracle::kShiftForIou04)}};
  const double iou = iou_aabb(kUnit.axis_aligned(), shifted(oracle::kShiftForIou04).axis_aligned());
  EXPECT_EQ(match_detections(dets, gts, iou, false), (std::vector<bool>{true}));
  EXPECT_EQ(match_detections(dets, gts, 0.25, false), (std::vector<bool>{true}));
  EXPECT_EQ(match_detections(dets, gts, 0.5, false), (std::vector<bool>{false}));
}

TEST(MatchDetections, AxisAlignedModeIgnoresHeading) {
  const std::vector<LabeledBox> gts{{{0, 0, 0, 2, 0.5, 1, 0}, 0}};
  const std::vector<Detection> dets{{0, 0.9, {0, 0, 0, 2, 0.5, 1, 1.5707963267948966}}};
  EXPECT_EQ(match_detections(dets, gts, 0.5, false), (std::vector<bool>{true}));
  EXPECT_EQ(match_detections(dets, gts, 0.5, true), (std::vector<bool>{false}));
}

std::vector<double> thresholds() { return {0.25, 0.5}; }

TEST(Evaluate, PerfectDetectorScoresOne) {
  std::vector<GroundTruthRecord> gts;
  std::vector<DetectionRecord> dets;
  for (int s = 0; s < 3; ++s) {
    for (int c = 0; c < 2; ++c) {
      const OrientedBox3 b{2.0 * s, 3.0 * c, 0, 1, 0.5, 1, 0.2 * c};
      gts.push_back({"scene" + std::to_string(s), {b, c}});
      dets.push_back({"scene" + std::to_string(s), {c, 0.5 + 0.1 * s, b}});
    }
  }
  const auto ts = thresholds();
  const EvalReport r = evaluate(dets, gts, ts, true, 3);
  ASSERT_EQ(r.map.size(), 2u);
  EXPECT_EQ(r.map[0], 1.0);
  EXPECT_EQ(r.map[1], 1.0);
  EXPECT_EQ(r.ap[0][2], std::nullopt);
  EXPECT_EQ(r.gt_count, (std::vector<std::size_t>{3, 3, 0}));
  EXPECT_EQ(format_report(r),
            "classes 3\n"
            "class 0 gt 3 det 3 AP@0.25 1.0000 AP@0.5 1.0000\n"
            "class 1 gt 3 det 3 AP@0.25 1.0000 AP@0.5 1.0000\n"
            "class 2 gt 0 det 0 AP@0.25 - AP@0.5 -\n"
            "mAP@0.25 1.0000, mAP@0.5 1.0000\n");
}

TEST(Evaluate, TwoGroundTruthsOneHitOneMiss) {
  const std::vector<GroundTruthRecord> gts{{"a", {kUnit, 0}}, {"a", {shifted(5), 0}}};
  const std::vector<DetectionRecord> dets{{"a", {0, 0.9, kUnit}}, {"a", {0, 0.8, shifted(10)}}};
  const auto ts = thresholds();
  const EvalReport r = evaluate(dets, gts, ts, true, 1);
  EXPECT_EQ(r.ap[0][0], 0.5);
  EXPECT_EQ(r.map[1], 0.5);
}

TEST(Evaluate, ThresholdsSeparateLooseAndTightMatches) {
  const std::vector<GroundTruthRecord> gts{{"a", {kUnit, 0}}};
  const std::vector<DetectionRecord> dets{{"a", {0, 0.9, shifted(oracle::kShiftForIou04)}}};
  const auto ts = thresholds();
  const EvalReport r = evaluate(dets, gts, ts, false, 1);
  EXPECT_EQ(r.map[0], 1.0);
  EXPECT_EQ(r.map[1], 0.0);
}

TEST(Evaluate, ScenesDoNotMatchAcross) {
  const std::vector<GroundTruthRecord> gts{{"a", {kUnit, 0}}};
  const std::vector<DetectionRecord> dets{{"b", {0, 0.9, kUnit}}};
  const auto ts = thresholds();
  EXPECT_EQ(evaluate(dets, gts, ts, true, 1).map[0], 0.0);
}

TEST(Evaluate, DetectionsArePooledAcrossScenes) {
  // Scene a: TP at 0.9, scene b: FP at 0.8, scene a: FP at 0.7, scene b: TP at 0.6.
  const std::vector<GroundTruthRecord> gts{{"a", {kUnit, 0}}, {"b", {kUnit, 0}}};
  const std::vector<DetectionRecord> dets{{"a", {0, 0.9, kUnit}},
                                          {"b", {0, 0.8, shifted(7)}},
                                          {"a", {0, 0.7, shifted(0.05)}},
                                          {"b", {0, 0.6, kUnit}}};
  const auto ts = thresholds();
  const EvalReport r = evaluate(dets, gts, ts, true, 1);
  EXPECT_NEAR(*r.ap[0][0], oracle::ap({true, false, false, true}, 2), 1e-15);
  EXPECT_NEAR(*r.ap[0][0], 0.5 + 0.5 * 0.5, 1e-15);
}

TEST(Evaluate, NoGroundTruthAnywhereGivesZeroMap) {
  const std::vector<DetectionRecord> dets{{"a", {0, 0.9, kUnit}}};
  const auto ts = thresholds();
  const EvalReport r = evaluate(dets, {}, ts, true, 2);
  EXPECT_EQ(r.map[0], 0.0);
  EXPECT_EQ(r.ap[0][0], std::nullopt);
}

TEST(Evaluate, Validation) {
  const std::vector<GroundTruthRecord> gts{{"a", {kUnit, 3}}};
  const auto ts = thresholds();
  EXPECT_THROW(evaluate({}, gts, ts, true, 2), InvalidArgument);
  EXPECT_THROW(evaluate({}, {}, ts, true, 0), InvalidArgument);
  const std::vector<double> bad{0.0};
  EXPECT_THROW(evaluate({}, {}, bad, true, 1), InvalidArgument);
}

TEST(GenerateScene, DeterministicAndWellFormed) {
  const SceneSpec spec;
  const Scene a = generate_scene(5, spec);
  const Scene b = generate_scene(5, spec);
  EXPECT_EQ(a.cloud.points, b.cloud.points);
  ASSERT_EQ(a.boxes.size(), spec.num_boxes);
  EXPECT_EQ(a.cloud.size(), spec.num_boxes * spec.points_per_box + spec.clutter_points);
  for (std::size_t i = 0; i < a.boxes.size(); ++i) {
    const OrientedBox3& box = a.boxes[i].box;
    EXPECT_GE(a.boxes[i].class_label, 0);
    EXPECT_LT(a.boxes[i].class_label, spec.num_classes);
    EXPECT_GE(std::abs(std::log(box.w / box.l)), spec.min_log_aspect);
    EXPECT_NEAR(box.z, box.h / 2, 1e-12);
    for (std::size_t j = 0; j < i; ++j) EXPECT_EQ(iou_obb(box, a.boxes[j].box), 0.0);
  }
  EXPECT_NE(generate_scene(6, spec).cloud.points, a.cloud.points);
}

TEST(GenerateScene, AxisAlignedAndInfeasible) {
  SceneSpec spec;
  spec.axis_aligned = true;
  for (const auto& b : generate_scene(1, spec).boxes) EXPECT_EQ(b.box.theta, 0.0);
  spec.room_x = spec.room_y = 1.0;
  spec.num_boxes = 30;
  EXPECT_THROW(generate_scene(1, spec), InvalidArgument);
}

}  // namespace
}  // namespace fcaf3d
