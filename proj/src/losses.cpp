#include "fcaf3d/losses.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "fcaf3d/error.hpp"

namespace fcaf3d {
namespace {

double clamp_prob(double p) {
  if (std::isnan(p)) throw InvalidArgument("probability is NaN");
  return std::clamp(p, kProbEpsilon, 1.0 - kProbEpsilon);
}

struct AxisTerms {
  double overlap;
  bool pred_pos_smaller;  // min(p+, t+) picks the prediction
  bool pred_neg_smaller;
};

AxisTerms axis_terms(double p_pos, double p_neg, double t_pos, double t_neg) {
  const double hi = std::min(p_pos, t_pos);
  const double lo = std::max(-p_neg, -t_neg);
  return {std::max(0.0, hi - lo), p_pos < t_pos, p_neg < t_neg};
}

}  // namespace

double focal_loss(std::span<const double> probs, std::optional<int> true_label, double gamma, double alpha) {
  if (!(gamma >= 0.0)) throw InvalidArgument("focal gamma must be non-negative");
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InvalidArgument("focal alpha must be in [0, 1]");
  if (true_label && (*true_label < 0 || static_cast<std::size_t>(*true_label) >= probs.size())) {
    throw InvalidArgument("class label out of range");
  }
  double loss = 0.0;
  for (std::size_t c = 0; c < probs.size(); ++c) {
    const double p = clamp_prob(probs[c]);
    if (true_label && static_cast<std::size_t>(*true_label) == c) {
      loss += -alpha * std::pow(1.0 - p, gamma) * std::log(p);
    } else {
      loss += -(1.0 - alpha) * std::pow(p, gamma) * std::log(1.0 - p);
    }
  }
  return loss;
}

double binary_cross_entropy(double pred, double target) {
  if (!(target >= 0.0 && target <= 1.0)) throw InvalidArgument("BCE target must be in [0, 1]");
  const double p = clamp_prob(pred);
  return -target * std::log(p) - (1.0 - target) * std::log(1.0 - p);
}

double centerness_loss(double pred, double target) { return binary_cross_entropy(pred, target); }

double iou_loss(const BoxDeltas& pred, const BoxDeltas& target, const Location3& loc) {
  if (pred.mode != target.mode) throw InvalidArgument("prediction and target use different parametrizations");
  if (pred.mode == ParamMode::Aabb) return 1.0 - iou_aabb(decode_aabb(pred, loc), decode_aabb(target, loc));
  return 1.0 - iou_obb(decode_obb(pred, loc), decode_obb(target, loc));
}

std::array<double, 8> iou_loss_aabb_gradient(const BoxDeltas& pred, const BoxDeltas& target) {
  if (pred.mode != ParamMode::Aabb || target.mode != ParamMode::Aabb) {
    throw InvalidArgument("analytic IoU gradient is defined for aabb deltas only");
  }
  const auto& p = pred.d;
  const auto& t = target.d;
  std::array<AxisTerms, 3> axes{};
  std::array<double, 3> pred_ext{}, target_ext{};
  for (std::size_t k = 0; k < 3; ++k) {
    axes[k] = axis_terms(p[2 * k], p[2 * k + 1], t[2 * k], t[2 * k + 1]);
    pred_ext[k] = p[2 * k] + p[2 * k + 1];
    target_ext[k] = t[2 * k] + t[2 * k + 1];
    if (!(pred_ext[k] > 0.0 && target_ext[k] > 0.0)) throw InvalidArgument("deltas decode to a degenerate box");
  }
  const double inter = axes[0].overlap * axes[1].overlap * axes[2].overlap;
  const double vp = pred_ext[0] * pred_ext[1] * pred_ext[2];
  const double vt = target_ext[0] * target_ext[1] * target_ext[2];
  const double uni = vp + vt - inter;

  std::array<double, 8> grad{};
  for (std::size_t k = 0; k < 3; ++k) {
    const std::size_t j1 = (k + 1) % 3, j2 = (k + 2) % 3;
    const double inter_rest = axes[j1].overlap * axes[j2].overlap;
    const double vol_rest = pred_ext[j1] * pred_ext[j2];
    const bool overlapping = axes[k].overlap > 0.0;
    const double d_inter_pos = overlapping && axes[k].pred_pos_smaller ? inter_rest : 0.0;
    const double d_inter_neg = overlapping && axes[k].pred_neg_smaller ? inter_rest : 0.0;
    // d(I/U) = (dI * (U + I) - I * dVp) / U^2, and the loss is 1 - I/U.
    grad[2 * k] = -(d_inter_pos * (uni + inter) - inter * vol_rest) / (uni * uni);
    grad[2 * k + 1] = -(d_inter_neg * (uni + inter) - inter * vol_rest) / (uni * uni);
  }
  return grad;
}

std::array<double, 8> fd_gradient(const std::function<double(const BoxDeltas&)>& loss, const BoxDeltas& deltas,
                                  double step) {
  if (!(step > 0.0)) throw InvalidArgument("finite-difference step must be positive");
  std::array<double, 8> grad{};
  for (std::size_t i = 0; i < 8; ++i) {
    BoxDeltas plus = deltas, minus = deltas;
    plus.d[i] += step;
    minus.d[i] -= step;
    grad[i] = (loss(plus) - loss(minus)) / (2 * step);
  }
  return grad;
}

LossBreakdown total_loss(std::span<const LocationPrediction> predictions, std::span<const AssignmentTarget> targets,
                         const FocalParams& params) {
  using Key = std::pair<int, Voxel>;
  std::map<Key, std::size_t> by_key;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    if (!by_key.try_emplace({predictions[i].level, predictions[i].voxel}, i).second) {
      throw InvalidArgument("duplicate prediction location");
    }
  }
  std::vector<const AssignmentTarget*> matched(predictions.size(), nullptr);
  for (const AssignmentTarget& t : targets) {
    auto it = by_key.find({t.level, t.voxel});
    if (it == by_key.end()) throw InvalidArgument("target location has no aligned prediction");
    if (matched[it->second] != nullptr) throw InvalidArgument("two targets share a location");
    matched[it->second] = &t;
  }

  LossBreakdown out;
  out.n_pos = targets.size();
  if (out.n_pos == 0) {
    out.empty_scene = true;
    return out;
  }
  // Summation in (level, voxel) order keeps the result independent of input order.
  for (const auto& [key, i] : by_key) {
    const LocationPrediction& pred = predictions[i];
    const AssignmentTarget* t = matched[i];
    out.cls += focal_loss(pred.class_probs, t ? std::optional<int>(t->class_label) : std::nullopt, params.gamma,
                          params.alpha);
    if (t) {
      out.reg += iou_loss(pred.deltas, t->deltas, pred.location);
      out.cntr += centerness_loss(pred.centerness, t->centerness);
    }
  }
  const double n = static_cast<double>(out.n_pos);
  out.cls /= n;
  out.reg /= n;
  out.cntr /= n;
  out.total = out.cls + out.reg + out.cntr;
  return out;
}

}  // namespace fcaf3d
