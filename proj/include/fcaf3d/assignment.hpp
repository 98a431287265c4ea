#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "fcaf3d/box.hpp"
#include "fcaf3d/parametrization.hpp"
#include "fcaf3d/sparse_grid.hpp"

namespace fcaf3d {

struct AssignmentConfig {
  /// A level is eligible for a box once the box covers at least this many locations.
  int n_loc = 27;
  /// Locations nearest the box center kept as positives.
  int center_sample_k = 18;

  void validate() const;
};

/// Ground-truth box with its 0-based category.
struct LabeledBox {
  OrientedBox3 box;
  int class_label = 0;
};

/// A foreground location. Background locations are represented by the
/// absence of a target.
struct AssignmentTarget {
  int level = 0;
  Voxel voxel;
  Location3 location;
  int class_label = 0;
  std::optional<std::size_t> box_id;
  double centerness = 0.0;
  BoxDeltas deltas;
};

/// Voxels of `level_locs` whose centers lie strictly inside `box`, in voxel order.
std::vector<Voxel> covered_voxels(const OrientedBox3& box, const SparseVoxelSet& level_locs);
std::vector<Location3> covered_locations(const OrientedBox3& box, const SparseVoxelSet& level_locs);

/// Last level on which the box covers at least n_loc locations, else 0.
int select_level(const OrientedBox3& box, std::span<const SparseVoxelSet> levels, const AssignmentConfig& cfg);

/// Multi-level assignment with center sampling. A location claimed by several
/// boxes goes to the one of least volume (ties: lower box index). Targets are
/// returned ordered by (level, voxel).
std::vector<AssignmentTarget> assign(std::span<const LabeledBox> boxes, std::span<const SparseVoxelSet> levels,
                                     const AssignmentConfig& cfg, ParamMode mode);

}  // namespace fcaf3d
