#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace fcaf3d {

/// A location (x̂, ŷ, ẑ) produced by the detection head, in world meters.
struct Location3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend bool operator==(const Location3&, const Location3&) = default;
};

/// Axis-aligned box: center (x, y, z) and extents (w, l, h) along x, y, z.
struct AxisAlignedBox3 {
  double x = 0.0, y = 0.0, z = 0.0;
  double w = 1.0, l = 1.0, h = 1.0;

  friend bool operator==(const AxisAlignedBox3&, const AxisAlignedBox3&) = default;
};

/// Box rotated by `theta` radians about the vertical axis. `w` is measured
/// along the box's local x axis, `l` along its local y axis.
struct OrientedBox3 {
  double x = 0.0, y = 0.0, z = 0.0;
  double w = 1.0, l = 1.0, h = 1.0;
  double theta = 0.0;

  friend bool operator==(const OrientedBox3&, const OrientedBox3&) = default;

  AxisAlignedBox3 axis_aligned() const { return {x, y, z, w, l, h}; }
};

inline OrientedBox3 to_oriented(const AxisAlignedBox3& b) { return {b.x, b.y, b.z, b.w, b.l, b.h, 0.0}; }

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

/// Throws InvalidArgument unless all extents are finite and strictly positive.
void validate(const AxisAlignedBox3& box);
void validate(const OrientedBox3& box);

double volume(const AxisAlignedBox3& box);
double volume(const OrientedBox3& box);

/// Footprint corners in counter-clockwise order.
std::array<Vec2, 4> footprint(const OrientedBox3& box);

/// Offset of `loc` from the box center expressed in the box frame
/// (rotated by -theta in the xy plane).
std::array<double, 3> to_box_frame(const OrientedBox3& box, const Location3& loc);

/// Strict interior test; points on a face are outside.
bool contains(const OrientedBox3& box, const Location3& loc);
bool contains(const AxisAlignedBox3& box, const Location3& loc);

double iou_aabb(const AxisAlignedBox3& a, const AxisAlignedBox3& b);

/// Rotated IoU for boxes that rotate about z only. The footprint overlap is
/// computed by clipping one rectangle against the other.
double iou_obb(const OrientedBox3& a, const OrientedBox3& b);

/// Area of the intersection of two convex counter-clockwise polygons.
/// Vertices closer than kMergeTolerance (squared meters) are merged; a
/// degenerate intersection yields exactly 0.
double convex_intersection_area(std::span<const Vec2> subject, std::span<const Vec2> clip);

/// Signed shoelace area (positive for counter-clockwise order).
double polygon_area(std::span<const Vec2> polygon);

inline constexpr double kMergeTolerance = 1e-12;

/// Distances (d1..d6) from `loc` to the six faces of `box`, measured in the
/// box frame: +x face, -x face, +y face, -y face, +z face, -z face.
std::array<double, 6> face_distances(const OrientedBox3& box, const Location3& loc);

/// Geometric mean of the three per-axis min/max face-distance ratios.
/// Equals 1 at the box center and 0 on any face. Throws for negative distances.
double centerness3d(std::span<const double, 6> distances);

/// The four equivalent (w, l, theta) representations of the same box:
/// (w,l,θ), (l,w,θ+π/2), (w,l,θ+π), (l,w,θ+3π/2).
std::array<OrientedBox3, 4> equivalent_representations(const OrientedBox3& box);

}  // namespace fcaf3d
