#include "fcaf3d/assignment.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <tuple>

#include "fcaf3d/error.hpp"

namespace fcaf3d {
namespace {

double squared_distance(const Location3& a, const OrientedBox3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

// Calls fn(voxel) for each location inside the box; stops early when fn returns false.
template <typename Fn>
void for_each_covered(const OrientedBox3& box, const SparseVoxelSet& set, Fn&& fn) {
  if (set.empty()) return;
  const double c = std::abs(std::cos(box.theta)), s = std::abs(std::sin(box.theta));
  const double half_x = (c * box.w + s * box.l) / 2;
  const double lo = std::floor((box.x - half_x) / set.voxel_size) - 1;
  const double hi = std::ceil((box.x + half_x) / set.voxel_size) + 1;
  constexpr double kMin = std::numeric_limits<std::int32_t>::min();
  constexpr double kMax = std::numeric_limits<std::int32_t>::max();
  const auto x_lo = static_cast<std::int32_t>(std::clamp(lo, kMin, kMax));
  const auto x_hi = static_cast<std::int32_t>(std::clamp(hi, kMin, kMax));
  constexpr auto kLowest = std::numeric_limits<std::int32_t>::min();
  constexpr auto kHighest = std::numeric_limits<std::int32_t>::max();
  auto first = std::lower_bound(set.voxels.begin(), set.voxels.end(), Voxel{x_lo, kLowest, kLowest});
  auto last = std::upper_bound(first, set.voxels.end(), Voxel{x_hi, kHighest, kHighest});
  for (auto it = first; it != last; ++it) {
    if (contains(box, set.location(*it)) && !fn(*it)) return;
  }
}

}  // namespace

void AssignmentConfig::validate() const {
  if (n_loc < 1) throw InvalidArgument("n_loc must be at least 1");
  if (center_sample_k < 1) throw InvalidArgument("center_sample_k must be at least 1");
}

std::vector<Voxel> covered_voxels(const OrientedBox3& box, const SparseVoxelSet& level_locs) {
  validate(box);
  std::vector<Voxel> out;
  for_each_covered(box, level_locs, [&](const Voxel& v) {
    out.push_back(v);
    return true;
  });
  return out;
}

std::vector<Location3> covered_locations(const OrientedBox3& box, const SparseVoxelSet& level_locs) {
  std::vector<Location3> out;
  for (const Voxel& v : covered_voxels(box, level_locs)) out.push_back(level_locs.location(v));
  return out;
}

int select_level(const OrientedBox3& box, std::span<const SparseVoxelSet> levels, const AssignmentConfig& cfg) {
  cfg.validate();
  validate(box);
  if (levels.empty()) throw InvalidArgument("at least one feature level is required");
  for (int level = static_cast<int>(levels.size()) - 1; level > 0; --level) {
    int count = 0;
    for_each_covered(box, levels[static_cast<std::size_t>(level)], [&](const Voxel&) {
      return ++count < cfg.n_loc;
    });
    if (count >= cfg.n_loc) return level;
  }
  return 0;
}

std::vector<AssignmentTarget> assign(std::span<const LabeledBox> boxes, std::span<const SparseVoxelSet> levels,
                                     const AssignmentConfig& cfg, ParamMode mode) {
  cfg.validate();
  if (levels.empty()) throw InvalidArgument("at least one feature level is required");

  // (level, voxel) -> index of the winning box.
  std::map<std::pair<int, Voxel>, std::size_t> owner;
  const auto k = static_cast<std::size_t>(cfg.center_sample_k);
  for (std::size_t b = 0; b < boxes.size(); ++b) {
    const OrientedBox3& box = boxes[b].box;
    const int level = select_level(box, levels, cfg);
    const SparseVoxelSet& locs = levels[static_cast<std::size_t>(level)];

    std::vector<std::pair<double, Voxel>> ranked;
    for_each_covered(box, locs, [&](const Voxel& v) {
      ranked.emplace_back(squared_distance(locs.location(v), box), v);
      return true;
    });
    const std::size_t keep = std::min(k, ranked.size());
    std::partial_sort(ranked.begin(), ranked.begin() + static_cast<std::ptrdiff_t>(keep), ranked.end());
    for (std::size_t i = 0; i < keep; ++i) {
      auto [it, inserted] = owner.try_emplace({level, ranked[i].second}, b);
      if (!inserted && volume(box) < volume(boxes[it->second].box)) it->second = b;
    }
  }

  std::vector<AssignmentTarget> targets;
  targets.reserve(owner.size());
  for (const auto& [key, b] : owner) {
    const auto& [level, voxel] = key;
    const OrientedBox3& box = boxes[b].box;
    AssignmentTarget t;
    t.level = level;
    t.voxel = voxel;
    t.location = levels[static_cast<std::size_t>(level)].location(voxel);
    t.class_label = boxes[b].class_label;
    t.box_id = b;
    const auto faces = face_distances(box, t.location);
    t.centerness = centerness3d(faces);
    t.deltas = encode(box, t.location, mode);
    targets.push_back(t);
  }
  return targets;
}

}  // namespace fcaf3d
