#include "fcaf3d/parametrization.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fcaf3d/error.hpp"

namespace fcaf3d {
namespace {

using std::numbers::pi;

void require_finite(const BoxDeltas& deltas) {
  for (double v : deltas.d) {
    if (!std::isfinite(v)) throw InvalidArgument("deltas must be finite");
  }
}

// Rotates a box-frame offset by -quarter_turns * pi/2; exact.
std::array<double, 2> rotate_quarter_turns(double u, double v, int turns) {
  for (int i = 0; i < turns; ++i) {
    const double t = u;
    u = v;
    v = -t;
  }
  return {u, v};
}

}  // namespace

std::string_view to_string(ParamMode mode) {
  switch (mode) {
    case ParamMode::Aabb: return "aabb";
    case ParamMode::Naive: return "naive";
    case ParamMode::SinCos: return "sincos";
    case ParamMode::Mobius: return "mobius";
  }
  return "unknown";
}

ParamMode parse_mode(std::string_view name) {
  if (name == "aabb") return ParamMode::Aabb;
  if (name == "naive") return ParamMode::Naive;
  if (name == "sincos") return ParamMode::SinCos;
  if (name == "mobius") return ParamMode::Mobius;
  throw InvalidArgument("unknown parametrization mode '" + std::string(name) + "'");
}

BoxDeltas encode_aabb(const AxisAlignedBox3& box, const Location3& loc) {
  validate(box);
  if (!contains(box, loc)) throw InvalidArgument("location is not strictly inside the box");
  BoxDeltas out;
  out.mode = ParamMode::Aabb;
  out.d = {box.x + box.w / 2 - loc.x, loc.x - (box.x - box.w / 2),
           box.y + box.l / 2 - loc.y, loc.y - (box.y - box.l / 2),
           box.z + box.h / 2 - loc.z, loc.z - (box.z - box.h / 2),
           0.0, 0.0};
  return out;
}

AxisAlignedBox3 decode_aabb(const BoxDeltas& deltas, const Location3& loc) {
  require_finite(deltas);
  const auto& d = deltas.d;
  AxisAlignedBox3 box{loc.x + (d[0] - d[1]) / 2, loc.y + (d[2] - d[3]) / 2, loc.z + (d[4] - d[5]) / 2,
                      d[0] + d[1], d[2] + d[3], d[4] + d[5]};
  if (!(box.w > 0.0 && box.l > 0.0 && box.h > 0.0)) throw InvalidArgument("decoded box has a non-positive extent");
  return box;
}

MobiusPoint mobius_embed(double q, double theta) {
  if (!(q > 0.0) || !std::isfinite(q)) throw InvalidArgument("aspect ratio q must be positive and finite");
  const double ln_q = std::log(q);
  return {ln_q * std::sin(2 * theta), ln_q * std::cos(2 * theta), std::sin(4 * theta), std::cos(4 * theta)};
}

CanonicalForm canonical_form(const OrientedBox3& box) {
  validate(box);
  CanonicalForm out{box, 0};
  OrientedBox3& c = out.box;
  int turns = 0;
  if (c.w < c.l) {
    std::swap(c.w, c.l);
    c.theta += pi / 2;
    turns = 1;
  }
  const bool square = c.w == c.l;
  const double period = square ? pi / 2 : pi;
  const double hi = square ? pi / 4 : pi / 2;
  const double lo = hi - period;
  long long m = static_cast<long long>(std::ceil((c.theta - hi) / period));
  double theta = c.theta - static_cast<double>(m) * period;
  while (theta <= lo) {
    theta += period;
    --m;
  }
  while (theta > hi) {
    theta -= period;
    ++m;
  }
  if (m != 0) c.theta = theta;
  const long long step = square ? 1 : 2;
  turns = static_cast<int>(((turns - m * step) % 4 + 4) % 4);
  out.quarter_turns = turns;
  return out;
}

OrientedBox3 canonicalize_obb(const OrientedBox3& box) { return canonical_form(box).box; }

BoxDeltas encode_obb(const OrientedBox3& box, const Location3& loc, ParamMode mode) {
  validate(box);
  if (mode == ParamMode::Aabb) throw InvalidArgument("encode_obb needs an angle-carrying mode");
  if (!contains(box, loc)) throw InvalidArgument("location is not strictly inside the box");

  BoxDeltas out;
  out.mode = mode;
  if (mode == ParamMode::Naive || mode == ParamMode::SinCos) {
    const auto f = face_distances(box, loc);
    std::copy(f.begin(), f.end(), out.d.begin());
    if (mode == ParamMode::Naive) {
      out.d[6] = box.theta;
    } else {
      out.d[6] = std::sin(box.theta);
      out.d[7] = std::cos(box.theta);
    }
    return out;
  }

  const CanonicalForm cf = canonical_form(box);
  const OrientedBox3& c = cf.box;
  if (c.w == c.l) {
    // Heading is unrecoverable from (0, 0); decode uses the world frame.
    OrientedBox3 world = c;
    world.theta = 0.0;
    const auto [u, v, dz] = to_box_frame(world, loc);
    out.d = {c.w / 2 - u, c.w / 2 + u, c.l / 2 - v, c.l / 2 + v, c.h / 2 - dz, c.h / 2 + dz, 0.0, 0.0};
    return out;
  }
  const auto [u0, v0, dz] = to_box_frame(box, loc);
  const auto [u, v] = rotate_quarter_turns(u0, v0, cf.quarter_turns);
  const double ln_q = std::log(c.w / c.l);
  out.d = {c.w / 2 - u, c.w / 2 + u, c.l / 2 - v, c.l / 2 + v, c.h / 2 - dz, c.h / 2 + dz,
           ln_q * std::sin(2 * c.theta), ln_q * std::cos(2 * c.theta)};
  return out;
}

OrientedBox3 decode_obb(const BoxDeltas& deltas, const Location3& loc) {
  require_finite(deltas);
  const auto& d = deltas.d;
  OrientedBox3 box;
  box.h = d[4] + d[5];
  switch (deltas.mode) {
    case ParamMode::Aabb:
      return to_oriented(decode_aabb(deltas, loc));
    case ParamMode::Naive:
      box.w = d[0] + d[1];
      box.l = d[2] + d[3];
      box.theta = d[6];
      break;
    case ParamMode::SinCos: {
      box.w = d[0] + d[1];
      box.l = d[2] + d[3];
      const double norm = std::hypot(d[6], d[7]);
      box.theta = norm > 0.0 ? std::atan2(d[6] / norm, d[7] / norm) : 0.0;
      break;
    }
    case ParamMode::Mobius: {
      const double size = d[0] + d[1] + d[2] + d[3];
      const double log_ratio = std::hypot(d[6], d[7]);
      // w = s*q/(1+q), l = s/(1+q) with q = exp(log_ratio), written to avoid overflow.
      box.w = size / (1.0 + std::exp(-log_ratio));
      box.l = size / (1.0 + std::exp(log_ratio));
      if (log_ratio > 0.0) {
        double theta = 0.5 * std::atan2(d[6], d[7]);
        if (theta <= -pi / 2) theta += pi;
        box.theta = theta;
      }
      break;
    }
  }
  if (!(box.w > 0.0 && box.l > 0.0 && box.h > 0.0) || !std::isfinite(box.w) || !std::isfinite(box.l)) {
    throw InvalidArgument("decoded box has a non-positive extent");
  }
  const double ou = (d[0] - d[1]) / 2, ov = (d[2] - d[3]) / 2;
  const double c = std::cos(box.theta), s = std::sin(box.theta);
  box.x = loc.x + c * ou - s * ov;
  box.y = loc.y + s * ou + c * ov;
  box.z = loc.z + (d[4] - d[5]) / 2;
  return box;
}

BoxDeltas encode(const OrientedBox3& box, const Location3& loc, ParamMode mode) {
  if (mode == ParamMode::Aabb) {
    if (box.theta != 0.0) throw InvalidArgument("aabb mode requires axis-aligned boxes (theta == 0)");
    return encode_aabb(box.axis_aligned(), loc);
  }
  return encode_obb(box, loc, mode);
}

OrientedBox3 decode(const BoxDeltas& deltas, const Location3& loc) { return decode_obb(deltas, loc); }

double centerness3d(const BoxDeltas& deltas) { return centerness3d(deltas.faces()); }

}  // namespace fcaf3d
