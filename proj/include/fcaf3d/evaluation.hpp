#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fcaf3d/assignment.hpp"
#include "fcaf3d/postprocess.hpp"
#include "fcaf3d/sparse_grid.hpp"

namespace fcaf3d {

struct GroundTruthRecord {
  std::string scene_id;
  LabeledBox gt;
};

struct DetectionRecord {
  std::string scene_id;
  Detection det;
};

/// Greedy matching within one scene. `dets` must be sorted by score
/// descending. A detection is a true positive when the unmatched
/// same-class ground truth of highest IoU reaches `iou_threshold`.
/// `rotated == false` compares boxes as axis-aligned, ignoring theta.
std::vector<bool> match_detections(std::span<const Detection> dets, std::span<const LabeledBox> gts,
                                   double iou_threshold, bool rotated);

/// Area under the precision/recall curve with the monotone precision
/// envelope (all-point interpolation). Empty when n_gt == 0.
std::optional<double> average_precision(const std::vector<bool>& is_tp, std::span<const double> scores,
                                        std::size_t n_gt);

struct PrCurve {
  std::vector<double> recall;
  std::vector<double> precision;
};

struct EvalReport {
  std::vector<double> thresholds;
  int num_classes = 0;
  /// ap[t][c]; empty for classes without ground truth.
  std::vector<std::vector<std::optional<double>>> ap;
  /// Unweighted mean over classes with ground truth (0 when there are none).
  std::vector<double> map;
  std::vector<std::size_t> gt_count;
  std::vector<std::size_t> det_count;
  /// curves[t][c]
  std::vector<std::vector<PrCurve>> curves;
};

/// Pools detections across scenes per class and reports AP per class and
/// mAP per threshold. Labels must lie in [0, num_classes).
EvalReport evaluate(std::span<const DetectionRecord> dets, std::span<const GroundTruthRecord> gts,
                    std::span<const double> thresholds, bool rotated, int num_classes);

/// Key-value text with 4-decimal APs, ending in the "mAP@t v, ..." summary line.
std::string format_report(const EvalReport& report);

/// Synthetic room for end-to-end checks.
struct SceneSpec {
  double room_x = 8.0, room_y = 8.0, room_z = 3.0;
  int num_classes = 3;
  std::size_t num_boxes = 5;
  std::size_t points_per_box = 2000;
  std::size_t clutter_points = 2000;
  double min_extent = 0.4;
  double max_extent = 1.6;
  /// Minimum |ln(w/l)| of generated boxes.
  double min_log_aspect = 0.1;
  bool axis_aligned = false;
};

struct Scene {
  PointCloud cloud;
  std::vector<LabeledBox> boxes;
};

/// Deterministic in `seed`. Boxes stand on the floor, do not overlap, and
/// carry points sampled on a surface inset 1 mm from their faces; clutter is
/// spread over the free floor.
Scene generate_scene(std::uint64_t seed, const SceneSpec& spec);

}  // namespace fcaf3d
