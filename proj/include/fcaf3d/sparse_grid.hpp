#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fcaf3d/box.hpp"

namespace fcaf3d {

/// RGB-colored point, coordinates in meters, colors in [0, 1].
struct Point {
  double x = 0.0, y = 0.0, z = 0.0;
  double r = 0.0, g = 0.0, b = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct PointCloud {
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Integer voxel coordinate; ordered lexicographically (x, then y, then z).
struct Voxel {
  std::int32_t x = 0, y = 0, z = 0;

  friend auto operator<=>(const Voxel&, const Voxel&) = default;
};

struct VoxelHash {
  std::size_t operator()(const Voxel& v) const noexcept {
    // Large primes from the classic spatial-hashing scheme.
    return (static_cast<std::size_t>(static_cast<std::uint32_t>(v.x)) * 73856093u) ^
           (static_cast<std::size_t>(static_cast<std::uint32_t>(v.y)) * 19349669u) ^
           (static_cast<std::size_t>(static_cast<std::uint32_t>(v.z)) * 83492791u);
  }
};

/// Level tag used for a raw voxelization that is not a feature level yet.
inline constexpr int kInputLevel = -1;

/// Occupied voxels at one resolution. `voxels` is sorted and unique;
/// `scores`, when present, is aligned with `voxels`.
struct SparseVoxelSet {
  int level = kInputLevel;
  double voxel_size = 0.0;
  std::vector<Voxel> voxels;
  std::optional<std::vector<double>> scores;

  std::size_t size() const { return voxels.size(); }
  bool empty() const { return voxels.empty(); }
  /// World coordinate of the voxel center.
  Location3 location(const Voxel& v) const {
    return {(v.x + 0.5) * voxel_size, (v.y + 0.5) * voxel_size, (v.z + 0.5) * voxel_size};
  }
};

/// Voxels between the input grid and the first feature level: the first
/// convolution stride, then a fixed 4x reduction inside the backbone stem.
inline constexpr int kStemExponent = 2;

/// Feature-level layout. With base 0.01 m and first_stride 2 the four levels
/// have voxel sizes 0.08, 0.16, 0.32, 0.64 m.
struct LevelSpec {
  double base_voxel_size = 0.01;
  int num_levels = 4;
  int first_stride = 2;

  void validate() const;
  int stride_exponent() const { return kStemExponent + (first_stride == 2 ? 1 : 0); }
  double level_voxel_size(int level) const;
};

/// floor(coordinate / voxel_size) per axis, duplicates collapsed.
SparseVoxelSet voxelize(const PointCloud& cloud, double voxel_size);

/// Integer-halves every coordinate `steps` times (floor division) and dedups.
/// Scores are dropped.
SparseVoxelSet downsample(const SparseVoxelSet& set, int steps);

/// Locations of feature level `level`, derived from a finer voxel set whose
/// voxel size differs from the level's by a power of two.
SparseVoxelSet level_locations(const SparseVoxelSet& set, const LevelSpec& spec, int level);

/// All feature levels of `spec` built from a base-resolution voxelization.
std::vector<SparseVoxelSet> build_levels(const SparseVoxelSet& base, const LevelSpec& spec);

/// Keeps the `n_vox` highest-scoring voxels (ties: smaller coordinate first).
/// Identity when the set already has at most `n_vox` voxels.
SparseVoxelSet prune_topk(const SparseVoxelSet& set, std::int64_t n_vox);

/// Deterministic uniform subsample without replacement, keeping input order.
PointCloud subsample(const PointCloud& cloud, std::size_t max_points, std::uint64_t seed);

}  // namespace fcaf3d
