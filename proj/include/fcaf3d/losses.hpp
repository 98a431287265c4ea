#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fcaf3d/assignment.hpp"
#include "fcaf3d/parametrization.hpp"

namespace fcaf3d {

/// Probabilities are clamped to [kProbEpsilon, 1 - kProbEpsilon] before any log.
inline constexpr double kProbEpsilon = 1e-7;

struct FocalParams {
  double gamma = 2.0;
  double alpha = 0.25;
};

/// Multi-binary focal loss over all classes. `true_label` empty means background.
double focal_loss(std::span<const double> probs, std::optional<int> true_label, double gamma, double alpha);

double binary_cross_entropy(double pred, double target);
double centerness_loss(double pred, double target);

/// 1 - IoU of the decoded boxes. Both deltas must use the same mode; rotated
/// IoU is used for angle-carrying modes.
double iou_loss(const BoxDeltas& pred, const BoxDeltas& target, const Location3& loc);

/// Analytic d(iou_loss)/d(pred) for Aabb deltas. Angle channels get 0.
std::array<double, 8> iou_loss_aabb_gradient(const BoxDeltas& pred, const BoxDeltas& target);

/// Central finite differences of `loss` in each of the eight delta channels.
std::array<double, 8> fd_gradient(const std::function<double(const BoxDeltas&)>& loss, const BoxDeltas& deltas,
                                  double step);

/// Head outputs at one location.
struct LocationPrediction {
  int level = 0;
  Voxel voxel;
  Location3 location;
  std::vector<double> class_probs;
  BoxDeltas deltas;
  double centerness = 0.5;
};

struct LossBreakdown {
  double cls = 0.0;
  double reg = 0.0;
  double cntr = 0.0;
  double total = 0.0;
  std::size_t n_pos = 0;
  /// Set when there are no foreground locations; all components are then 0.
  bool empty_scene = false;
};

/// Classification over every prediction, regression and centerness over the
/// foreground only, each normalized by the number of foreground locations.
/// Every target must match exactly one prediction by (level, voxel).
LossBreakdown total_loss(std::span<const LocationPrediction> predictions, std::span<const AssignmentTarget> targets,
                         const FocalParams& params = {});

}  // namespace fcaf3d
