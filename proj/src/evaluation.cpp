#include "fcaf3d/evaluation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

#include "fcaf3d/error.hpp"

namespace fcaf3d {
namespace {

double box_iou(const OrientedBox3& a, const OrientedBox3& b, bool rotated) {
  return rotated ? iou_obb(a, b) : iou_aabb(a.axis_aligned(), b.axis_aligned());
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fixed4(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 4);
  return std::string(buf, res.ptr);
}

PrCurve pr_curve(const std::vector<bool>& is_tp, std::size_t n_gt) {
  PrCurve curve;
  double tp = 0, fp = 0;
  for (bool hit : is_tp) {
    (hit ? tp : fp) += 1.0;
    curve.recall.push_back(n_gt ? tp / static_cast<double>(n_gt) : 0.0);
    curve.precision.push_back(tp / (tp + fp));
  }
  return curve;
}

}  // namespace

std::vector<bool> match_detections(std::span<const Detection> dets, std::span<const LabeledBox> gts,
                                   double iou_threshold, bool rotated) {
  for (std::size_t i = 1; i < dets.size(); ++i) {
    if (dets[i].score > dets[i - 1].score) throw InvalidArgument("detections must be sorted by score descending");
  }
  std::vector<bool> matched(gts.size(), false);
  std::vector<bool> is_tp(dets.size(), false);
  for (std::size_t i = 0; i < dets.size(); ++i) {
    double best = -1.0;
    std::size_t best_gt = gts.size();
    for (std::size_t g = 0; g < gts.size(); ++g) {
      if (matched[g] || gts[g].class_label != dets[i].class_label) continue;
      const double iou = box_iou(dets[i].box, gts[g].box, rotated);
      if (iou > best) {
        best = iou;
        best_gt = g;
      }
    }
    if (best_gt < gts.size() && best >= iou_threshold) {
      matched[best_gt] = true;
      is_tp[i] = true;
    }
  }
  return is_tp;
}

std::optional<double> average_precision(const std::vector<bool>& is_tp, std::span<const double> scores,
                                        std::size_t n_gt) {
  if (is_tp.size() != scores.size()) throw InvalidArgument("flags and scores differ in length");
  if (n_gt == 0) return std::nullopt;
  std::vector<std::size_t> order(is_tp.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });
  std::vector<bool> sorted_tp;
  sorted_tp.reserve(order.size());
  for (std::size_t i : order) sorted_tp.push_back(is_tp[i]);
  const PrCurve curve = pr_curve(sorted_tp, n_gt);

  // Sentinels (0, 0) and (1, 0), then the monotone envelope from the right.
  std::vector<double> rec{0.0}, prec{0.0};
  rec.insert(rec.end(), curve.recall.begin(), curve.recall.end());
  prec.insert(prec.end(), curve.precision.begin(), curve.precision.end());
  rec.push_back(1.0);
  prec.push_back(0.0);
  for (std::size_t i = prec.size() - 1; i > 0; --i) prec[i - 1] = std::max(prec[i - 1], prec[i]);
  double ap = 0.0;
  for (std::size_t i = 1; i < rec.size(); ++i) {
    if (rec[i] != rec[i - 1]) ap += (rec[i] - rec[i - 1]) * prec[i];
  }
  return ap;
}

EvalReport evaluate(std::span<const DetectionRecord> dets, std::span<const GroundTruthRecord> gts,
                    std::span<const double> thresholds, bool rotated, int num_classes) {
  if (num_classes < 1) throw InvalidArgument("num_classes must be positive");
  for (double t : thresholds) {
    if (!(t > 0.0 && t <= 1.0)) throw InvalidArgument("IoU thresholds must be in (0, 1]");
  }
  auto check_label = [&](int label) {
    if (label < 0 || label >= num_classes) {
      throw InvalidArgument("unknown class label " + std::to_string(label));
    }
  };

  EvalReport report;
  report.thresholds.assign(thresholds.begin(), thresholds.end());
  report.num_classes = num_classes;
  report.gt_count.assign(static_cast<std::size_t>(num_classes), 0);
  report.det_count.assign(static_cast<std::size_t>(num_classes), 0);

  // Per class: scene -> ground-truth boxes.
  std::vector<std::map<std::string, std::vector<LabeledBox>>> gt_by_class(static_cast<std::size_t>(num_classes));
  for (const GroundTruthRecord& r : gts) {
    check_label(r.gt.class_label);
    validate(r.gt.box);
    gt_by_class[static_cast<std::size_t>(r.gt.class_label)][r.scene_id].push_back(r.gt);
    ++report.gt_count[static_cast<std::size_t>(r.gt.class_label)];
  }
  std::vector<std::vector<std::size_t>> det_by_class(static_cast<std::size_t>(num_classes));
  for (std::size_t i = 0; i < dets.size(); ++i) {
    check_label(dets[i].det.class_label);
    validate(dets[i].det.box);
    if (!std::isfinite(dets[i].det.score)) throw InvalidArgument("detection score must be finite");
    det_by_class[static_cast<std::size_t>(dets[i].det.class_label)].push_back(i);
    ++report.det_count[static_cast<std::size_t>(dets[i].det.class_label)];
  }

  for (double threshold : thresholds) {
    std::vector<std::optional<double>> aps(static_cast<std::size_t>(num_classes));
    std::vector<PrCurve> curves(static_cast<std::size_t>(num_classes));
    double sum = 0.0;
    int counted = 0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(num_classes); ++c) {
      std::vector<std::size_t> order = det_by_class[c];
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) { return dets[a].det.score > dets[b].det.score; });
      // Matching is independent per scene; preserve the global score order within each.
      std::map<std::string, std::vector<std::size_t>> per_scene;
      for (std::size_t i : order) per_scene[dets[i].scene_id].push_back(i);
      std::vector<char> tp_of(dets.size(), 0);
      for (const auto& [scene, idx] : per_scene) {
        std::vector<Detection> scene_dets;
        for (std::size_t i : idx) scene_dets.push_back(dets[i].det);
        auto it = gt_by_class[c].find(scene);
        const std::vector<LabeledBox> none;
        const auto& scene_gts = it == gt_by_class[c].end() ? none : it->second;
        const auto flags = match_detections(scene_dets, scene_gts, threshold, rotated);
        for (std::size_t k = 0; k < idx.size(); ++k) tp_of[idx[k]] = flags[k] ? 1 : 0;
      }
      std::vector<bool> flags;
      std::vector<double> scores;
      for (std::size_t i : order) {
        flags.push_back(tp_of[i] != 0);
        scores.push_back(dets[i].det.score);
      }
      aps[c] = average_precision(flags, scores, report.gt_count[c]);
      curves[c] = pr_curve(flags, report.gt_count[c]);
      if (aps[c]) {
        sum += *aps[c];
        ++counted;
      }
    }
    report.ap.push_back(std::move(aps));
    report.curves.push_back(std::move(curves));
    report.map.push_back(counted ? sum / counted : 0.0);
  }
  return report;
}

std::string format_report(const EvalReport& report) {
  std::ostringstream out;
  out << "classes " << report.num_classes << "\n";
  for (std::size_t c = 0; c < static_cast<std::size_t>(report.num_classes); ++c) {
    out << "class " << c << " gt " << report.gt_count[c] << " det " << report.det_count[c];
    for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
      out << " AP@" << shortest(report.thresholds[t]) << " ";
      out << (report.ap[t][c] ? fixed4(*report.ap[t][c]) : std::string("-"));
    }
    out << "\n";
  }
  for (std::size_t t = 0; t < report.thresholds.size(); ++t) {
    out << (t ? ", " : "") << "mAP@" << shortest(report.thresholds[t]) << " " << fixed4(report.map[t]);
  }
  out << "\n";
  return out.str();
}

}  // namespace fcaf3d
