#include "fcaf3d/targets.hpp"

#include <map>
#include <string>
#include <utility>

#include "fcaf3d/parametrization.hpp"

namespace fcaf3d {

std::vector<DetectionRecord> detections_from_targets(std::span<const io::TargetRecord> targets,
                                                     const TargetDecodeOptions& options) {
  auto to_detection = [&](const io::TargetRecord& r) {
    const AssignmentTarget& t = r.target;
    return DetectionRecord{r.scene_id,
                           {t.class_label, options.centerness_scores ? t.centerness : 1.0, decode(t.deltas, t.location)}};
  };

  std::vector<DetectionRecord> out;
  if (!options.one_per_box) {
    out.reserve(targets.size());
    for (const auto& r : targets) out.push_back(to_detection(r));
    return out;
  }

  std::map<std::pair<std::string, std::size_t>, std::size_t> best;  // (scene, box) -> index into order
  std::vector<const io::TargetRecord*> order;
  for (const auto& r : targets) {
    if (!r.target.box_id) continue;
    const auto [it, inserted] = best.try_emplace({r.scene_id, *r.target.box_id}, order.size());
    if (inserted) {
      order.push_back(&r);
    } else if (r.target.centerness > order[it->second]->target.centerness) {
      order[it->second] = &r;
    }
  }
  out.reserve(order.size());
  for (const auto* r : order) out.push_back(to_detection(*r));
  return out;
}

}  // namespace fcaf3d
