#pragma once

#include <span>
#include <vector>

#include "fcaf3d/io.hpp"

namespace fcaf3d {

struct TargetDecodeOptions {
  /// Keep only the most central target of each (scene, box) pair, which
  /// turns a target set back into its ground truth. Otherwise every target
  /// becomes a detection.
  bool one_per_box = true;
  /// Score by target centerness; 1.0 otherwise.
  bool centerness_scores = true;
};

/// Decodes training targets into detections. With one_per_box the output
/// follows the first appearance of each box; ties in centerness keep the
/// earlier target.
std::vector<DetectionRecord> detections_from_targets(std::span<const io::TargetRecord> targets,
                                                     const TargetDecodeOptions& options = {});

}  // namespace fcaf3d
