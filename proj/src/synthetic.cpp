#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fcaf3d/error.hpp"
#include "fcaf3d/evaluation.hpp"
#include "fcaf3d/random.hpp"

namespace fcaf3d {
namespace {

constexpr double kBoxGap = 0.2;        // free space kept between footprints (m)
constexpr double kSurfaceInset = 1e-3; // sampled surface sits inside the faces (m)
constexpr std::size_t kPlacementAttempts = 10000;

bool inside_footprint(const OrientedBox3& box, double x, double y, double pad) {
  const double c = std::cos(box.theta), s = std::sin(box.theta);
  const double dx = x - box.x, dy = y - box.y;
  const double u = c * dx + s * dy, v = -s * dx + c * dy;
  return std::abs(u) < box.w / 2 + pad && std::abs(v) < box.l / 2 + pad;
}

bool footprints_clash(const OrientedBox3& a, const OrientedBox3& b) {
  OrientedBox3 ga = a, gb = b;
  ga.w += kBoxGap;
  ga.l += kBoxGap;
  gb.w += kBoxGap;
  gb.l += kBoxGap;
  ga.z = gb.z = 0.0;
  ga.h = gb.h = 1.0;
  return iou_obb(ga, gb) > 0.0;
}

Point surface_point(const OrientedBox3& box, Rng& rng, const std::array<double, 3>& color) {
  const double w = box.w - 2 * kSurfaceInset, l = box.l - 2 * kSurfaceInset, h = box.h - 2 * kSurfaceInset;
  const std::array<double, 3> area{w * l, w * h, l * h};
  const double pick = rng.uniform(0.0, area[0] + area[1] + area[2]);
  const double sign = rng.uniform() < 0.5 ? -1.0 : 1.0;
  const double a = rng.uniform(-0.5, 0.5), b = rng.uniform(-0.5, 0.5);
  double u, v, dz;
  if (pick < area[0]) {
    u = a * w, v = b * l, dz = sign * h / 2;
  } else if (pick < area[0] + area[1]) {
    u = a * w, v = sign * l / 2, dz = b * h;
  } else {
    u = sign * w / 2, v = a * l, dz = b * h;
  }
  const double c = std::cos(box.theta), s = std::sin(box.theta);
  Point p;
  p.x = box.x + c * u - s * v;
  p.y = box.y + s * u + c * v;
  p.z = box.z + dz;
  p.r = std::clamp(color[0] + rng.uniform(-0.05, 0.05), 0.0, 1.0);
  p.g = std::clamp(color[1] + rng.uniform(-0.05, 0.05), 0.0, 1.0);
  p.b = std::clamp(color[2] + rng.uniform(-0.05, 0.05), 0.0, 1.0);
  return p;
}

void check_spec(const SceneSpec& spec) {
  if (spec.num_classes < 1) throw InvalidArgument("scene needs at least one class");
  if (!(spec.min_extent > 2 * kSurfaceInset) || !(spec.max_extent >= spec.min_extent)) {
    throw InvalidArgument("box extent range is invalid");
  }
  if (!(spec.room_x > 0.0 && spec.room_y > 0.0 && spec.room_z > 0.0)) throw InvalidArgument("room must be non-empty");
  const double diagonal = std::sqrt(2.0) * spec.max_extent;
  if (spec.num_boxes > 0 &&
      (diagonal > std::min(spec.room_x, spec.room_y) || spec.max_extent > spec.room_z)) {
    throw InvalidArgument("infeasible scene: boxes can be larger than the room");
  }
  if (spec.num_boxes > 0 && spec.min_log_aspect > std::log(spec.max_extent / spec.min_extent)) {
    throw InvalidArgument("infeasible scene: aspect constraint excludes every box size");
  }
}

}  // namespace

Scene generate_scene(std::uint64_t seed, const SceneSpec& spec) {
  check_spec(spec);
  Rng rng(seed);
  Scene scene;

  for (std::size_t n = 0; n < spec.num_boxes; ++n) {
    bool placed = false;
    for (std::size_t attempt = 0; attempt < kPlacementAttempts && !placed; ++attempt) {
      OrientedBox3 box;
      do {
        box.w = rng.uniform(spec.min_extent, spec.max_extent);
        box.l = rng.uniform(spec.min_extent, spec.max_extent);
      } while (std::abs(std::log(box.w / box.l)) < spec.min_log_aspect);
      box.h = rng.uniform(spec.min_extent, spec.max_extent);
      box.theta = spec.axis_aligned ? 0.0 : rng.uniform(0.0, 2 * std::numbers::pi);
      const double radius = std::hypot(box.w, box.l) / 2;
      box.x = rng.uniform(radius, spec.room_x - radius);
      box.y = rng.uniform(radius, spec.room_y - radius);
      box.z = box.h / 2;
      const bool clash = std::any_of(scene.boxes.begin(), scene.boxes.end(),
                                     [&](const LabeledBox& other) { return footprints_clash(box, other.box); });
      if (clash) continue;
      const int label = static_cast<int>(rng.index(static_cast<std::uint64_t>(spec.num_classes)));
      scene.boxes.push_back({box, label});
      placed = true;
    }
    if (!placed) throw InvalidArgument("infeasible scene: could not place all boxes without overlap");
  }

  for (const LabeledBox& lb : scene.boxes) {
    const double hue = static_cast<double>(lb.class_label + 1) / (spec.num_classes + 1);
    const std::array<double, 3> color{hue, 1.0 - hue, 0.5};
    for (std::size_t i = 0; i < spec.points_per_box; ++i) scene.cloud.points.push_back(surface_point(lb.box, rng, color));
  }

  std::size_t attempts = 0;
  for (std::size_t i = 0; i < spec.clutter_points;) {
    if (++attempts > 100 * spec.clutter_points + 1000) throw InvalidArgument("infeasible scene: no free floor");
    const double x = rng.uniform(0.0, spec.room_x), y = rng.uniform(0.0, spec.room_y), z = rng.uniform(0.0, 0.02);
    const bool covered = std::any_of(scene.boxes.begin(), scene.boxes.end(),
                                     [&](const LabeledBox& lb) { return inside_footprint(lb.box, x, y, kBoxGap / 2); });
    if (covered) continue;
    const double gray = rng.uniform(0.3, 0.4);
    scene.cloud.points.push_back({x, y, z, gray, gray, gray});
    ++i;
  }
  return scene;
}

}  // namespace fcaf3d
