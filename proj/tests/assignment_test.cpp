#include <gtest/gtest.h>

#include <algorithm>

#include "fcaf3d/assignment.hpp"
#include "fcaf3d/error.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"

namespace fcaf3d {
namespace {

// Full occupancy of an n^3 block of level-0 voxels starting at the origin, plus parent levels.
// One point per level-0 voxel is enough.
std::vector<SparseVoxelSet> dense_levels(int n, const LevelSpec& spec = {}) {
  PointCloud cloud;
  const double step = spec.level_voxel_size(0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) cloud.points.push_back({(x + 0.5) * step, (y + 0.5) * step, (z + 0.5) * step, 0, 0, 0});
    }
  }
  return build_levels(voxelize(cloud, spec.base_voxel_size), spec);
}

TEST(AssignmentConfig, Validation) {
  EXPECT_THROW((AssignmentConfig{0, 18}).validate(), InvalidArgument);
  EXPECT_THROW((AssignmentConfig{27, 0}).validate(), InvalidArgument);
}

TEST(CoveredVoxels, StrictInsideTest) {
  const auto levels = dense_levels(8);
  // Level-0 voxels are 0.08 m; centers sit at 0.04 + 0.08 i.
  const OrientedBox3 box{0.2, 0.2, 0.2, 0.2, 0.2, 0.2, 0};
  EXPECT_EQ(covered_voxels(box, levels[0]).size(), 27u);
  const OrientedBox3 smaller{0.16, 0.16, 0.16, 0.16, 0.16, 0.16, 0};
  EXPECT_EQ(covered_voxels(smaller, levels[0]).size(), 8u);
  // With 1 m level-0 voxels every coordinate below is exact; faces through centers cover nothing.
  const auto unit_levels = dense_levels(4, LevelSpec{0.125, 4, 2});
  const OrientedBox3 on_centers{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0};
  EXPECT_TRUE(covered_voxels(on_centers, unit_levels[0]).empty());
  const OrientedBox3 just_larger{1.0, 1.0, 1.0, 1.0000001, 1.0000001, 1.0000001, 0};
  EXPECT_EQ(covered_voxels(just_larger, unit_levels[0]).size(), 8u);
}

TEST(SelectLevel, PicksTheLastLevelWithEnoughLocations) {
  const auto levels = dense_levels(16);
  // 0.16 m level-1 voxels: this 0.4 m cube covers 3^3 = 27 of them.
  const OrientedBox3 big{0.56, 0.56, 0.56, 0.4, 0.4, 0.4, 0};
  EXPECT_EQ(covered_voxels(big, levels[1]).size(), 27u);
  EXPECT_EQ(select_level(big, levels, AssignmentConfig{}), 1);
  const OrientedBox3 bigger{0.96, 0.96, 0.96, 1.0, 1.0, 1.0, 0};
  EXPECT_EQ(select_level(bigger, levels, AssignmentConfig{}), 2);
}

TEST(SelectLevel, FallsBackToLevelZero) {
  const auto levels = dense_levels(8);
  const OrientedBox3 small{0.2, 0.2, 0.2, 0.1, 0.1, 0.1, 0.3};
  EXPECT_LT(covered_voxels(small, levels[0]).size(), 27u);
  EXPECT_EQ(select_level(small, levels, AssignmentConfig{}), 0);
  const OrientedBox3 elsewhere{50, 50, 50, 0.5, 0.5, 0.5, 0};
  EXPECT_EQ(select_level(elsewhere, levels, AssignmentConfig{}), 0);
}

TEST(Assign, KeepsTheKNearestLocations) {
  const auto levels = dense_levels(8);
  const std::vector<LabeledBox> boxes{{{0.32, 0.32, 0.32, 0.38, 0.38, 0.38, 0}, 2}};
  const auto targets = assign(boxes, levels, AssignmentConfig{27, 18}, ParamMode::Mobius);
  ASSERT_EQ(targets.size(), 18u);
  for (const auto& t : targets) {
    EXPECT_EQ(t.level, 0);
    EXPECT_EQ(t.class_label, 2);
    EXPECT_EQ(t.box_id, std::optional<std::size_t>(0));
    EXPECT_EQ(t.deltas.mode, ParamMode::Mobius);
    EXPECT_GT(t.centerness, 0.0);
    EXPECT_LE(t.centerness, 1.0);
    EXPECT_NEAR(iou_obb(decode(t.deltas, t.location), boxes[0].box), 1.0, 1e-9);
  }
  EXPECT_TRUE(std::is_sorted(targets.begin(), targets.end(), [](const auto& a, const auto& b) {
    return std::pair(a.level, a.voxel) < std::pair(b.level, b.voxel);
  }));
}

TEST(Assign, ConflictGoesToTheSmallerBox) {
  const auto levels = dense_levels(8);
  const std::vector<LabeledBox> boxes{{{0.32, 0.32, 0.32, 0.5, 0.5, 0.5, 0}, 0},
                                      {{0.32, 0.32, 0.32, 0.3, 0.3, 0.3, 0.2}, 1}};
  // A large n_loc keeps both boxes on level 0, where both claim the same 8 central locations.
  const auto targets = assign(boxes, levels, AssignmentConfig{200, 8}, ParamMode::Naive);
  std::size_t owned_by_small = 0;
  for (const auto& t : targets) owned_by_small += t.box_id == 1u ? 1 : 0;
  EXPECT_EQ(owned_by_small, 8u);
}

TEST(Assign, VolumeTieGoesToTheLowerIndex) {
  const auto levels = dense_levels(8);
  const std::vector<LabeledBox> boxes{{{0.33, 0.32, 0.32, 0.4, 0.4, 0.4, 0}, 0},
                                      {{0.31, 0.32, 0.32, 0.4, 0.4, 0.4, 0}, 1}};
  const AssignmentConfig cfg{27, 18};
  const auto alone = assign(std::span(boxes).first(1), levels, cfg, ParamMode::Mobius);
  const auto both = assign(boxes, levels, cfg, ParamMode::Mobius);
  ASSERT_EQ(alone.size(), 18u);
  for (const auto& t : alone) {
    const auto it = std::find_if(both.begin(), both.end(), [&](const auto& u) { return u.voxel == t.voxel; });
    ASSERT_NE(it, both.end());
    EXPECT_EQ(it->box_id, 0u);
  }
  std::size_t shared = 0;
  const auto second = assign(std::span(boxes).last(1), levels, cfg, ParamMode::Mobius);
  for (const auto& t : second) {
    shared += std::any_of(alone.begin(), alone.end(), [&](const auto& u) { return u.voxel == t.voxel; }) ? 1 : 0;
  }
  EXPECT_GT(shared, 0u);
}

TEST(Assign, AabbModeAndEmptyInputs) {
  const auto levels = dense_levels(4);
  EXPECT_TRUE(assign({}, levels, AssignmentConfig{}, ParamMode::Aabb).empty());
  const std::vector<LabeledBox> boxes{{{0.16, 0.16, 0.16, 0.3, 0.3, 0.3, 0}, 0}};
  const auto targets = assign(boxes, levels, AssignmentConfig{}, ParamMode::Aabb);
  ASSERT_FALSE(targets.empty());
  EXPECT_EQ(targets.front().deltas.mode, ParamMode::Aabb);
  EXPECT_THROW(assign(boxes, {}, AssignmentConfig{}, ParamMode::Aabb), InvalidArgument);
}

TEST(Assign, MatchesExhaustiveOracle) {
  Rng rng(41);
  oracle::AssignStats stats;
  for (int scene_no = 0; scene_no < 40; ++scene_no) {
    const auto scene = testing::random_assignment_scene(rng);
    std::vector<OrientedBox3> plain;
    for (const auto& b : scene.boxes) plain.push_back(b.box);
    const auto expected = oracle::assign(plain, scene.levels, scene.cfg.n_loc, scene.cfg.center_sample_k, &stats);
    const auto got = assign(scene.boxes, scene.levels, scene.cfg, ParamMode::Mobius);
    ASSERT_EQ(got.size(), expected.size()) << "scene " << scene_no;
    for (std::size_t i = 0; i < got.size(); ++i) {
      ASSERT_EQ(got[i].level, expected[i].level);
      ASSERT_EQ(got[i].voxel, expected[i].voxel);
      ASSERT_EQ(got[i].box_id, expected[i].box);
      ASSERT_EQ(got[i].class_label, scene.boxes[expected[i].box].class_label);
    }
  }
  EXPECT_GT(stats.upper_level, 0u);
  EXPECT_GT(stats.fallback, 0u);
  EXPECT_GT(stats.conflicts, 0u);
}

}  // namespace
}  // namespace fcaf3d
