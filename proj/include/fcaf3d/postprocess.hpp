#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fcaf3d/box.hpp"

namespace fcaf3d {

struct Detection {
  int class_label = 0;
  double score = 0.0;
  OrientedBox3 box;

  friend bool operator==(const Detection&, const Detection&) = default;
};

/// Scales class probabilities by the predicted centerness before NMS.
std::vector<double> apply_centerness(std::span<const double> class_probs, double centerness);

/// Per-class greedy rotated NMS. Returns indices of kept detections ordered
/// by score descending, ties by input index.
std::vector<std::size_t> nms_rotated_indices(std::span<const Detection> dets, double iou_threshold);

std::vector<Detection> nms_rotated(std::span<const Detection> dets, double iou_threshold);

}  // namespace fcaf3d
