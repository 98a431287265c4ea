#pragma once

#include <array>
#include <span>
#include <string_view>

#include "fcaf3d/box.hpp"

namespace fcaf3d {

/// How the heading angle is carried in the last two delta channels.
enum class ParamMode {
  Aabb,    // six face distances, no angle
  Naive,   // d7 = theta
  SinCos,  // (d7, d8) = (sin theta, cos theta)
  Mobius,  // (d7, d8) = ln(w/l) * (sin 2theta, cos 2theta)
};

std::string_view to_string(ParamMode mode);
/// Accepts "aabb", "naive", "sincos", "mobius". Throws InvalidArgument otherwise.
ParamMode parse_mode(std::string_view name);

/// Regression deltas for one location. d[0..5] are face distances
/// (+x, -x, +y, -y, +z, -z), d[6..7] the angle channels.
struct BoxDeltas {
  std::array<double, 8> d{};
  ParamMode mode = ParamMode::Aabb;

  std::span<const double, 6> faces() const { return std::span<const double, 6>(d.data(), 6); }
  friend bool operator==(const BoxDeltas&, const BoxDeltas&) = default;
};

/// Point on the Mobius strip embedding of (q, theta) in R^4.
struct MobiusPoint {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0, e4 = 0.0;
};

BoxDeltas encode_aabb(const AxisAlignedBox3& box, const Location3& loc);
AxisAlignedBox3 decode_aabb(const BoxDeltas& deltas, const Location3& loc);

MobiusPoint mobius_embed(double q, double theta);

/// Encodes an oriented box relative to a location strictly inside it.
///
/// Face distances are measured in the box frame. In Mobius mode the box is
/// first brought to its canonical representative so the frame is the one
/// decode_obb reconstructs; squares (w == l) have no recoverable heading and
/// are encoded in the world frame instead.
BoxDeltas encode_obb(const OrientedBox3& box, const Location3& loc, ParamMode mode);

/// Inverse of encode_obb. Mobius decoding returns the canonical
/// representative (w >= l, theta in (-pi/2, pi/2]).
OrientedBox3 decode_obb(const BoxDeltas& deltas, const Location3& loc);

/// Mode-dispatching helpers. Aabb mode requires theta == 0.
BoxDeltas encode(const OrientedBox3& box, const Location3& loc, ParamMode mode);
OrientedBox3 decode(const BoxDeltas& deltas, const Location3& loc);

/// Canonical representative of a box together with the number of quarter
/// turns (mod 4) separating the canonical frame from the input frame.
struct CanonicalForm {
  OrientedBox3 box;
  int quarter_turns = 0;
};

CanonicalForm canonical_form(const OrientedBox3& box);

/// Deterministic representative: w >= l and theta in (-pi/2, pi/2];
/// theta in (-pi/4, pi/4] when w == l.
OrientedBox3 canonicalize_obb(const OrientedBox3& box);

double centerness3d(const BoxDeltas& deltas);

}  // namespace fcaf3d
