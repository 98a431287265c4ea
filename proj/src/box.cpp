#include "fcaf3d/box.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "fcaf3d/error.hpp"

namespace fcaf3d {
namespace {

bool valid_extent(double v) { return std::isfinite(v) && v > 0.0; }

double cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double interval_overlap(double ca, double ea, double cb, double eb) {
  const double lo = std::max(ca - ea / 2, cb - eb / 2);
  const double hi = std::min(ca + ea / 2, cb + eb / 2);
  return std::max(0.0, hi - lo);
}

// Keeps the part of `poly` on the left of the directed edge a->b.
void clip_against_edge(const std::vector<Vec2>& poly, const Vec2& a, const Vec2& b, std::vector<Vec2>& out) {
  out.clear();
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& cur = poly[i];
    const Vec2& nxt = poly[(i + 1) % n];
    const double dc = cross(a, b, cur);
    const double dn = cross(a, b, nxt);
    const bool cur_in = dc >= -kMergeTolerance;
    const bool nxt_in = dn >= -kMergeTolerance;
    if (cur_in) out.push_back(cur);
    if (cur_in != nxt_in) {
      const double t = dc / (dc - dn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
  }
}

void merge_close_vertices(std::vector<Vec2>& poly) {
  auto close = [](const Vec2& p, const Vec2& q) {
    const double dx = p.x - q.x, dy = p.y - q.y;
    return dx * dx + dy * dy < kMergeTolerance;
  };
  std::vector<Vec2> merged;
  merged.reserve(poly.size());
  for (const Vec2& p : poly) {
    if (merged.empty() || !close(merged.back(), p)) merged.push_back(p);
  }
  while (merged.size() > 1 && close(merged.front(), merged.back())) merged.pop_back();
  poly = std::move(merged);
}

auto ordering_key(const OrientedBox3& b) { return std::tie(b.x, b.y, b.z, b.w, b.l, b.h, b.theta); }

}  // namespace

void validate(const AxisAlignedBox3& box) {
  if (!valid_extent(box.w) || !valid_extent(box.l) || !valid_extent(box.h)) {
    throw InvalidArgument("box extents must be finite and positive");
  }
  if (!std::isfinite(box.x) || !std::isfinite(box.y) || !std::isfinite(box.z)) {
    throw InvalidArgument("box center must be finite");
  }
}

void validate(const OrientedBox3& box) {
  validate(box.axis_aligned());
  if (!std::isfinite(box.theta)) throw InvalidArgument("box heading must be finite");
}

double volume(const AxisAlignedBox3& box) { return box.w * box.l * box.h; }
double volume(const OrientedBox3& box) { return box.w * box.l * box.h; }

std::array<Vec2, 4> footprint(const OrientedBox3& box) {
  const double c = std::cos(box.theta), s = std::sin(box.theta);
  const double hw = box.w / 2, hl = box.l / 2;
  const std::array<Vec2, 4> local{{{hw, -hl}, {hw, hl}, {-hw, hl}, {-hw, -hl}}};
  std::array<Vec2, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = {box.x + c * local[i].x - s * local[i].y, box.y + s * local[i].x + c * local[i].y};
  }
  return out;
}

std::array<double, 3> to_box_frame(const OrientedBox3& box, const Location3& loc) {
  const double c = std::cos(box.theta), s = std::sin(box.theta);
  const double dx = loc.x - box.x, dy = loc.y - box.y;
  return {c * dx + s * dy, -s * dx + c * dy, loc.z - box.z};
}

bool contains(const OrientedBox3& box, const Location3& loc) {
  const auto [u, v, dz] = to_box_frame(box, loc);
  return std::abs(u) < box.w / 2 && std::abs(v) < box.l / 2 && std::abs(dz) < box.h / 2;
}

bool contains(const AxisAlignedBox3& box, const Location3& loc) {
  return std::abs(loc.x - box.x) < box.w / 2 && std::abs(loc.y - box.y) < box.l / 2 &&
         std::abs(loc.z - box.z) < box.h / 2;
}

double iou_aabb(const AxisAlignedBox3& a, const AxisAlignedBox3& b) {
  const double inter = interval_overlap(a.x, a.w, b.x, b.w) * interval_overlap(a.y, a.l, b.y, b.l) *
                       interval_overlap(a.z, a.h, b.z, b.h);
  if (inter <= 0.0) return 0.0;
  const double uni = volume(a) + volume(b) - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

double polygon_area(std::span<const Vec2> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = polygon[i];
    const Vec2& q = polygon[(i + 1) % n];
    twice += p.x * q.y - q.x * p.y;
  }
  return twice / 2;
}

double convex_intersection_area(std::span<const Vec2> subject, std::span<const Vec2> clip) {
  std::vector<Vec2> poly(subject.begin(), subject.end());
  std::vector<Vec2> scratch;
  scratch.reserve(subject.size() + clip.size() + 4);
  const std::size_t m = clip.size();
  for (std::size_t i = 0; i < m && !poly.empty(); ++i) {
    clip_against_edge(poly, clip[i], clip[(i + 1) % m], scratch);
    poly.swap(scratch);
  }
  merge_close_vertices(poly);
  if (poly.size() < 3) return 0.0;
  const double area = polygon_area(poly);
  return area > 0.0 ? area : 0.0;
}

double iou_obb(const OrientedBox3& a_in, const OrientedBox3& b_in) {
  // Fixed argument order so the result is bitwise symmetric.
  const bool swap = ordering_key(b_in) < ordering_key(a_in);
  const OrientedBox3& a = swap ? b_in : a_in;
  const OrientedBox3& b = swap ? a_in : b_in;

  const double dz = interval_overlap(a.z, a.h, b.z, b.h);
  if (dz <= 0.0) return 0.0;
  const double ra = std::hypot(a.w, a.l) / 2, rb = std::hypot(b.w, b.l) / 2;
  if (std::hypot(a.x - b.x, a.y - b.y) >= ra + rb) return 0.0;

  const auto fa = footprint(a);
  const auto fb = footprint(b);
  const double area = convex_intersection_area(fa, fb);
  if (area <= 0.0) return 0.0;
  const double inter = area * dz;
  const double uni = volume(a) + volume(b) - inter;
  return std::clamp(inter / uni, 0.0, 1.0);
}

std::array<double, 6> face_distances(const OrientedBox3& box, const Location3& loc) {
  const auto [u, v, dz] = to_box_frame(box, loc);
  return {box.w / 2 - u, box.w / 2 + u, box.l / 2 - v, box.l / 2 + v, box.h / 2 - dz, box.h / 2 + dz};
}

double centerness3d(std::span<const double, 6> d) {
  for (double v : d) {
    if (!(v >= 0.0)) throw InvalidArgument("centerness requires non-negative face distances (location inside box)");
  }
  double product = 1.0;
  for (std::size_t axis = 0; axis < 3; ++axis) {
    const double lo = std::min(d[2 * axis], d[2 * axis + 1]);
    const double hi = std::max(d[2 * axis], d[2 * axis + 1]);
    if (hi <= 0.0) return 0.0;
    product *= lo / hi;
  }
  return std::cbrt(product);
}

std::array<OrientedBox3, 4> equivalent_representations(const OrientedBox3& box) {
  using std::numbers::pi;
  std::array<OrientedBox3, 4> out{box, box, box, box};
  for (int k = 1; k < 4; ++k) {
    out[k].theta = box.theta + k * pi / 2;
    if (k % 2 == 1) std::swap(out[k].w, out[k].l);
  }
  return out;
}

}  // namespace fcaf3d
