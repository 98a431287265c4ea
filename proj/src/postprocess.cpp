#include "fcaf3d/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fcaf3d/error.hpp"

namespace fcaf3d {

std::vector<double> apply_centerness(std::span<const double> class_probs, double centerness) {
  if (!(centerness >= 0.0 && centerness <= 1.0)) throw InvalidArgument("centerness must be in [0, 1]");
  std::vector<double> out(class_probs.begin(), class_probs.end());
  for (double& p : out) p *= centerness;
  return out;
}

std::vector<std::size_t> nms_rotated_indices(std::span<const Detection> dets, double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) throw InvalidArgument("NMS threshold must be in (0, 1]");
  for (const Detection& d : dets) {
    if (!std::isfinite(d.score)) throw InvalidArgument("detection score must be finite");
    validate(d.box);
  }
  auto by_score = [&](std::size_t a, std::size_t b) {
    if (dets[a].score != dets[b].score) return dets[a].score > dets[b].score;
    return a < b;
  };

  std::map<int, std::vector<std::size_t>> per_class;
  for (std::size_t i = 0; i < dets.size(); ++i) per_class[dets[i].class_label].push_back(i);

  std::vector<std::size_t> kept;
  for (auto& [label, idx] : per_class) {
    std::sort(idx.begin(), idx.end(), by_score);
    std::vector<bool> suppressed(idx.size(), false);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      if (suppressed[i]) continue;
      kept.push_back(idx[i]);
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (!suppressed[j] && iou_obb(dets[idx[i]].box, dets[idx[j]].box) >= iou_threshold) suppressed[j] = true;
      }
    }
  }
  std::sort(kept.begin(), kept.end(), by_score);
  return kept;
}

std::vector<Detection> nms_rotated(std::span<const Detection> dets, double iou_threshold) {
  std::vector<Detection> out;
  for (std::size_t i : nms_rotated_indices(dets, iou_threshold)) out.push_back(dets[i]);
  return out;
}

}  // namespace fcaf3d
