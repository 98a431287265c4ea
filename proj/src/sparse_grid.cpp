#include "fcaf3d/sparse_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "fcaf3d/error.hpp"
#include "fcaf3d/random.hpp"

namespace fcaf3d {
namespace {

std::int32_t bin(double coordinate, double voxel_size) {
  const double cell = std::floor(coordinate / voxel_size);
  if (!(cell >= std::numeric_limits<std::int32_t>::min() && cell <= std::numeric_limits<std::int32_t>::max())) {
    throw InvalidArgument("point coordinate out of voxel index range");
  }
  return static_cast<std::int32_t>(cell);
}

void sort_unique(std::vector<Voxel>& voxels) {
  std::sort(voxels.begin(), voxels.end());
  voxels.erase(std::unique(voxels.begin(), voxels.end()), voxels.end());
}

}  // namespace

void LevelSpec::validate() const {
  if (!(base_voxel_size > 0.0) || !std::isfinite(base_voxel_size)) {
    throw InvalidArgument("base voxel size must be positive");
  }
  if (num_levels < 1) throw InvalidArgument("at least one feature level is required");
  if (first_stride != 1 && first_stride != 2) throw InvalidArgument("first stride must be 1 or 2");
}

double LevelSpec::level_voxel_size(int level) const {
  return std::ldexp(base_voxel_size, level + stride_exponent());
}

SparseVoxelSet voxelize(const PointCloud& cloud, double voxel_size) {
  if (cloud.empty()) throw InvalidArgument("cannot voxelize an empty point cloud");
  if (!(voxel_size > 0.0) || !std::isfinite(voxel_size)) throw InvalidArgument("voxel size must be positive");
  SparseVoxelSet out;
  out.voxel_size = voxel_size;
  out.voxels.reserve(cloud.size());
  for (const Point& p : cloud.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw InvalidArgument("point coordinates must be finite");
    }
    out.voxels.push_back({bin(p.x, voxel_size), bin(p.y, voxel_size), bin(p.z, voxel_size)});
  }
  sort_unique(out.voxels);
  return out;
}

SparseVoxelSet downsample(const SparseVoxelSet& set, int steps) {
  if (steps < 0 || steps > 30) throw InvalidArgument("downsample steps must be in [0, 30]");
  SparseVoxelSet out;
  out.level = set.level;
  out.voxel_size = std::ldexp(set.voxel_size, steps);
  out.voxels.reserve(set.voxels.size());
  // Arithmetic right shift is floor division by 2^steps, also for negatives.
  for (const Voxel& v : set.voxels) out.voxels.push_back({v.x >> steps, v.y >> steps, v.z >> steps});
  sort_unique(out.voxels);
  return out;
}

SparseVoxelSet level_locations(const SparseVoxelSet& set, const LevelSpec& spec, int level) {
  spec.validate();
  if (level < 0 || level >= spec.num_levels) throw InvalidArgument("feature level out of range");
  if (!(set.voxel_size > 0.0)) throw InvalidArgument("voxel set has no voxel size");
  const double ratio = spec.level_voxel_size(level) / set.voxel_size;
  const double steps = std::round(std::log2(ratio));
  if (steps < 0 || std::abs(std::ldexp(1.0, static_cast<int>(steps)) - ratio) > 1e-9 * ratio) {
    throw InvalidArgument("level voxel size is not a power-of-two multiple of the input voxel size");
  }
  SparseVoxelSet out = downsample(set, static_cast<int>(steps));
  out.level = level;
  out.voxel_size = spec.level_voxel_size(level);
  return out;
}

std::vector<SparseVoxelSet> build_levels(const SparseVoxelSet& base, const LevelSpec& spec) {
  spec.validate();
  std::vector<SparseVoxelSet> levels;
  levels.reserve(static_cast<std::size_t>(spec.num_levels));
  for (int level = 0; level < spec.num_levels; ++level) {
    levels.push_back(level_locations(level == 0 ? base : levels.back(), spec, level));
  }
  return levels;
}

SparseVoxelSet prune_topk(const SparseVoxelSet& set, std::int64_t n_vox) {
  if (n_vox <= 0) throw InvalidArgument("n_vox must be positive");
  if (!set.scores || set.scores->size() != set.voxels.size()) {
    throw InvalidArgument("pruning requires one score per voxel");
  }
  const auto& scores = *set.scores;
  for (double s : scores) {
    if (std::isnan(s)) throw InvalidArgument("voxel scores must not be NaN");
  }
  if (set.voxels.size() <= static_cast<std::size_t>(n_vox)) return set;

  std::vector<std::size_t> order(set.voxels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto keep = static_cast<std::ptrdiff_t>(n_vox);
  std::nth_element(order.begin(), order.begin() + keep - 1, order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return set.voxels[a] < set.voxels[b];
  });
  order.resize(static_cast<std::size_t>(n_vox));
  // Voxels are sorted, so index order is coordinate order.
  std::sort(order.begin(), order.end());

  SparseVoxelSet out;
  out.level = set.level;
  out.voxel_size = set.voxel_size;
  out.voxels.reserve(order.size());
  std::vector<double> kept_scores;
  kept_scores.reserve(order.size());
  for (std::size_t i : order) {
    out.voxels.push_back(set.voxels[i]);
    kept_scores.push_back(scores[i]);
  }
  out.scores = std::move(kept_scores);
  return out;
}

PointCloud subsample(const PointCloud& cloud, std::size_t max_points, std::uint64_t seed) {
  if (cloud.size() <= max_points) return cloud;
  std::vector<std::size_t> idx(cloud.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = 0; i < max_points; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.index(idx.size() - i));
    std::swap(idx[i], idx[j]);
  }
  idx.resize(max_points);
  std::sort(idx.begin(), idx.end());
  PointCloud out;
  out.points.reserve(max_points);
  for (std::size_t i : idx) out.points.push_back(cloud.points[i]);
  return out;
}

}  // namespace fcaf3d
