#include <gtest/gtest.h>

#include <cmath>

#include "fcaf3d/error.hpp"
#include "fcaf3d/parametrization.hpp"
#include "support/generators.hpp"

namespace fcaf3d {
namespace {

using testing::kPi;

void expect_same_box(const OrientedBox3& a, const OrientedBox3& b, double tol) {
  EXPECT_NEAR(a.x, b.x, tol);
  EXPECT_NEAR(a.y, b.y, tol);
  EXPECT_NEAR(a.z, b.z, tol);
  EXPECT_NEAR(a.w, b.w, tol);
  EXPECT_NEAR(a.l, b.l, tol);
  EXPECT_NEAR(a.h, b.h, tol);
  EXPECT_NEAR(a.theta, b.theta, tol);
}

TEST(ParamMode, NamesRoundTrip) {
  for (ParamMode m : {ParamMode::Aabb, ParamMode::Naive, ParamMode::SinCos, ParamMode::Mobius}) {
    EXPECT_EQ(parse_mode(to_string(m)), m);
  }
  EXPECT_THROW(parse_mode("euler"), InvalidArgument);
}

TEST(EncodeAabb, FaceDistances) {
  const BoxDeltas d = encode_aabb({1, 1, 1, 2, 2, 2}, {1.5, 1, 0.5});
  EXPECT_EQ(d.mode, ParamMode::Aabb);
  EXPECT_DOUBLE_EQ(d.d[0], 0.5);
  EXPECT_DOUBLE_EQ(d.d[1], 1.5);
  EXPECT_DOUBLE_EQ(d.d[2], 1.0);
  EXPECT_DOUBLE_EQ(d.d[3], 1.0);
  EXPECT_DOUBLE_EQ(d.d[4], 1.5);
  EXPECT_DOUBLE_EQ(d.d[5], 0.5);
  EXPECT_EQ(d.d[6], 0.0);
  EXPECT_EQ(d.d[7], 0.0);
}

TEST(EncodeAabb, RejectsLocationOutside) {
  EXPECT_THROW(encode_aabb({0, 0, 0, 1, 1, 1}, {0.5, 0, 0}), InvalidArgument);
  EXPECT_THROW(encode_aabb({0, 0, 0, 1, 1, 1}, {3, 3, 3}), InvalidArgument);
}

TEST(DecodeAabb, InvertsEncode) {
  Rng rng(21);
  for (int i = 0; i < 2000; ++i) {
    OrientedBox3 b = testing::random_box(rng);
    b.theta = 0;
    const Location3 loc = testing::random_inside(rng, b);
    const AxisAlignedBox3 back = decode_aabb(encode_aabb(b.axis_aligned(), loc), loc);
    expect_same_box(to_oriented(back), b, 1e-12);
  }
}

TEST(DecodeAabb, RejectsNonPositiveExtent) {
  BoxDeltas d;
  d.d = {0.5, -0.5, 1, 1, 1, 1, 0, 0};
  EXPECT_THROW(decode_aabb(d, {0, 0, 0}), InvalidArgument);
}

TEST(Encode, AabbModeRequiresZeroTheta) {
  EXPECT_THROW(encode({0, 0, 0, 1, 1, 1, 0.1}, {0, 0, 0}, ParamMode::Aabb), InvalidArgument);
}

TEST(MobiusEmbed, Example) {
  const MobiusPoint p = mobius_embed(2.0, kPi / 4);
  EXPECT_NEAR(p.e1, std::log(2.0), 1e-15);
  EXPECT_NEAR(p.e2, 0.0, 1e-15);
  EXPECT_NEAR(p.e3, 0.0, 1e-15);
  EXPECT_NEAR(p.e4, -1.0, 1e-15);
  EXPECT_THROW(mobius_embed(0.0, 0.0), InvalidArgument);
  EXPECT_THROW(mobius_embed(-1.0, 0.0), InvalidArgument);
}

TEST(MobiusEmbed, EquivalentRepresentationsCoincide) {
  Rng rng(22);
  for (int i = 0; i < 10000; ++i) {
    const double w = rng.uniform(0.1, 5), l = rng.uniform(0.1, 5), theta = rng.uniform(-kPi, kPi);
    const MobiusPoint ref = mobius_embed(w / l, theta);
    const MobiusPoint reps[] = {mobius_embed(l / w, theta + kPi / 2), mobius_embed(w / l, theta + kPi),
                                mobius_embed(l / w, theta + 3 * kPi / 2)};
    for (const MobiusPoint& p : reps) {
      ASSERT_NEAR(p.e1, ref.e1, 1e-12);
      ASSERT_NEAR(p.e2, ref.e2, 1e-12);
      ASSERT_NEAR(p.e3, ref.e3, 1e-12);
      ASSERT_NEAR(p.e4, ref.e4, 1e-12);
    }
  }
}

TEST(Canonicalize, Examples) {
  expect_same_box(canonicalize_obb({0, 0, 0, 1, 2, 1, 0}), {0, 0, 0, 2, 1, 1, kPi / 2}, 1e-15);
  expect_same_box(canonicalize_obb({0, 0, 0, 2, 1, 1, kPi + 0.1}), {0, 0, 0, 2, 1, 1, 0.1}, 1e-14);
  expect_same_box(canonicalize_obb({0, 0, 0, 2, 1, 1, -kPi / 2}), {0, 0, 0, 2, 1, 1, kPi / 2}, 1e-15);
  expect_same_box(canonicalize_obb({0, 0, 0, 1, 1, 1, kPi / 2 + 0.2}), {0, 0, 0, 1, 1, 1, 0.2}, 1e-14);
}

TEST(Canonicalize, IdempotentAndInvariantAcrossRepresentations) {
  Rng rng(23);
  for (int i = 0; i < 5000; ++i) {
    const OrientedBox3 b = testing::random_box(rng, {2.0, 0.2, 3.0, 4 * kPi});
    const OrientedBox3 c = canonicalize_obb(b);
    ASSERT_GE(c.w, c.l);
    ASSERT_GT(c.theta, -kPi / 2);
    ASSERT_LE(c.theta, kPi / 2);
    ASSERT_EQ(canonicalize_obb(c), c);
    ASSERT_NEAR(iou_obb(b, c), 1.0, 1e-9);
    for (int q = 1; q < 4; ++q) {
      const OrientedBox3 r = canonicalize_obb(testing::rotated(b, q));
      ASSERT_EQ(r.w, c.w);
      ASSERT_EQ(r.l, c.l);
      const double dtheta = std::remainder(r.theta - c.theta, kPi);
      ASSERT_NEAR(dtheta, 0.0, 1e-12);
    }
  }
}

TEST(EncodeObb, MobiusExample) {
  const BoxDeltas d = encode_obb({0, 0, 0, 2, 1, 1, kPi / 4}, {0, 0, 0}, ParamMode::Mobius);
  EXPECT_NEAR(d.d[6], std::log(2.0), 1e-15);
  EXPECT_NEAR(d.d[7], 0.0, 1e-15);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(d.d[static_cast<std::size_t>(i)], i < 2 ? 1.0 : 0.5, 1e-15);
}

TEST(EncodeObb, MobiusIsIdenticalForEquivalentBoxes) {
  Rng rng(24);
  for (int i = 0; i < 3000; ++i) {
    const OrientedBox3 b = testing::random_box(rng);
    const Location3 loc = testing::random_inside(rng, b);
    const BoxDeltas ref = encode_obb(b, loc, ParamMode::Mobius);
    for (int q = 1; q < 4; ++q) {
      const BoxDeltas d = encode_obb(testing::rotated(b, q), loc, ParamMode::Mobius);
      for (std::size_t k = 0; k < 8; ++k) ASSERT_NEAR(d.d[k], ref.d[k], 1e-12);
    }
  }
}

TEST(EncodeObb, RejectsLocationOutsideAndAabbMode) {
  EXPECT_THROW(encode_obb({0, 0, 0, 1, 1, 1, 0.3}, {2, 0, 0}, ParamMode::Mobius), InvalidArgument);
  EXPECT_THROW(encode_obb({0, 0, 0, 1, 1, 1, 0.3}, {0, 0, 0}, ParamMode::Aabb), InvalidArgument);
}

class RoundTrip : public ::testing::TestWithParam<ParamMode> {};

TEST_P(RoundTrip, DecodeRecoversTheSolid) {
  Rng rng(25);
  for (int i = 0; i < 5000; ++i) {
    const OrientedBox3 b = testing::random_box(rng);
    const Location3 loc = testing::random_inside(rng, b);
    const OrientedBox3 back = decode_obb(encode_obb(b, loc, GetParam()), loc);
    ASSERT_NEAR(iou_obb(b, back), 1.0, 1e-9);
    ASSERT_NEAR(back.x, b.x, 1e-9);
    ASSERT_NEAR(back.y, b.y, 1e-9);
    ASSERT_NEAR(back.z, b.z, 1e-9);
  }
}

INSTANTIATE_TEST_SUITE_P(AngleModes, RoundTrip,
                         ::testing::Values(ParamMode::Naive, ParamMode::SinCos, ParamMode::Mobius),
                         [](const auto& info) { return std::string(to_string(info.param)); });

TEST(DecodeObb, NaiveKeepsTheAngleVerbatim) {
  const OrientedBox3 b{1, 1, 1, 2, 1, 1, 2.5};
  const OrientedBox3 back = decode_obb(encode_obb(b, {1, 1, 1}, ParamMode::Naive), {1, 1, 1});
  expect_same_box(back, b, 1e-12);
}

TEST(DecodeObb, SinCosZeroVectorMeansZeroAngle) {
  BoxDeltas d;
  d.mode = ParamMode::SinCos;
  d.d = {1, 1, 0.5, 0.5, 1, 1, 0, 0};
  EXPECT_EQ(decode_obb(d, {0, 0, 0}).theta, 0.0);
  d.d[6] = 3.0;
  d.d[7] = 0.0;
  EXPECT_NEAR(decode_obb(d, {0, 0, 0}).theta, kPi / 2, 1e-15);
}

TEST(DecodeObb, MobiusFormulas) {
  BoxDeltas d;
  d.mode = ParamMode::Mobius;
  const double r = std::log(3.0);
  d.d = {1, 1, 1, 1, 0.5, 0.5, r * std::sin(0.6), r * std::cos(0.6)};
  const OrientedBox3 b = decode_obb(d, {0, 0, 0});
  EXPECT_NEAR(b.w, 3.0, 1e-12);
  EXPECT_NEAR(b.l, 1.0, 1e-12);
  EXPECT_NEAR(b.h, 1.0, 1e-15);
  EXPECT_NEAR(b.theta, 0.3, 1e-12);
}

TEST(DecodeObb, MobiusSquareHasZeroAngleAndExactCenter) {
  const OrientedBox3 square{0.3, -0.2, 0.1, 1.5, 1.5, 1, 0.7};
  const Location3 loc{0.4, -0.1, 0.2};
  const OrientedBox3 back = decode_obb(encode_obb(square, loc, ParamMode::Mobius), loc);
  EXPECT_EQ(back.theta, 0.0);
  EXPECT_NEAR(back.x, square.x, 1e-12);
  EXPECT_NEAR(back.y, square.y, 1e-12);
  EXPECT_NEAR(back.w, 1.5, 1e-12);
  EXPECT_NEAR(back.l, 1.5, 1e-12);
}

TEST(DecodeObb, RejectsNonFiniteAndNonPositive) {
  BoxDeltas d;
  d.mode = ParamMode::Naive;
  d.d = {1, 1, 1, 1, 1, 1, std::nan(""), 0};
  EXPECT_THROW(decode_obb(d, {0, 0, 0}), InvalidArgument);
  d.d = {-1, 0.5, 1, 1, 1, 1, 0, 0};
  EXPECT_THROW(decode_obb(d, {0, 0, 0}), InvalidArgument);
}

TEST(CenternessOfDeltas, UsesFaceChannels) {
  BoxDeltas d;
  d.d = {1, 3, 2, 2, 1, 1, 100, -100};
  EXPECT_NEAR(centerness3d(d), std::cbrt(1.0 / 3.0), 1e-15);
}

}  // namespace
}  // namespace fcaf3d
