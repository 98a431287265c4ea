#include "fcaf3d/fcaf3d.h"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include "fcaf3d/assignment.hpp"
#include "fcaf3d/error.hpp"
#include "fcaf3d/evaluation.hpp"
#include "fcaf3d/io.hpp"
#include "fcaf3d/losses.hpp"
#include "fcaf3d/parametrization.hpp"
#include "fcaf3d/postprocess.hpp"
#include "fcaf3d/sparse_grid.hpp"
#include "fcaf3d/targets.hpp"

namespace f = fcaf3d;

struct fcaf3d_cloud {
  f::PointCloud cloud;
  std::vector<double> flat;

  void sync() {
    flat.clear();
    flat.reserve(cloud.size() * FCAF3D_POINT_STRIDE);
    for (const auto& p : cloud.points) flat.insert(flat.end(), {p.x, p.y, p.z, p.r, p.g, p.b});
  }
};

struct fcaf3d_records {
  bool has_scores = false;
  std::vector<std::string> scene_ids;
  std::vector<int> labels;
  std::vector<double> scores;
  std::vector<double> boxes;

  std::size_t size() const { return labels.size(); }
  f::OrientedBox3 box(std::size_t i) const {
    const double* b = boxes.data() + i * FCAF3D_BOX_STRIDE;
    return {b[0], b[1], b[2], b[3], b[4], b[5], b[6]};
  }
  void push(const std::string& scene, int label, double score, const f::OrientedBox3& b) {
    scene_ids.push_back(scene);
    labels.push_back(label);
    if (has_scores) scores.push_back(score);
    boxes.insert(boxes.end(), {b.x, b.y, b.z, b.w, b.l, b.h, b.theta});
  }
  std::vector<f::GroundTruthRecord> ground_truth() const {
    std::vector<f::GroundTruthRecord> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back({scene_ids[i], {box(i), labels[i]}});
    return out;
  }
  std::vector<f::DetectionRecord> detections() const {
    std::vector<f::DetectionRecord> out;
    for (std::size_t i = 0; i < size(); ++i) out.push_back({scene_ids[i], {labels[i], scores[i], box(i)}});
    return out;
  }
};

struct fcaf3d_targets {
  std::vector<f::io::TargetRecord> records;
};

struct fcaf3d_report {
  f::EvalReport report;
};

namespace {

thread_local std::string g_last_error;

fcaf3d_status fail(fcaf3d_status status, const char* what) {
  g_last_error = what;
  return status;
}

template <typename Fn>
fcaf3d_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return FCAF3D_OK;
  } catch (const f::ParseError& e) {
    return fail(FCAF3D_ERR_PARSE, e.what());
  } catch (const f::IoError& e) {
    return fail(FCAF3D_ERR_IO, e.what());
  } catch (const f::InvalidArgument& e) {
    return fail(FCAF3D_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(FCAF3D_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(FCAF3D_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(FCAF3D_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* ptr, const char* name) {
  if (ptr == nullptr) throw f::InvalidArgument(std::string(name) + " must not be NULL");
}

void require_if(std::size_t n, const void* ptr, const char* name) {
  if (n > 0) require(ptr, name);
}

f::ParamMode to_mode(fcaf3d_mode mode) {
  switch (mode) {
    case FCAF3D_MODE_AABB: return f::ParamMode::Aabb;
    case FCAF3D_MODE_NAIVE: return f::ParamMode::Naive;
    case FCAF3D_MODE_SINCOS: return f::ParamMode::SinCos;
    case FCAF3D_MODE_MOBIUS: return f::ParamMode::Mobius;
  }
  throw f::InvalidArgument("unknown parametrization mode");
}

fcaf3d_mode from_mode(f::ParamMode mode) {
  switch (mode) {
    case f::ParamMode::Aabb: return FCAF3D_MODE_AABB;
    case f::ParamMode::Naive: return FCAF3D_MODE_NAIVE;
    case f::ParamMode::SinCos: return FCAF3D_MODE_SINCOS;
    case f::ParamMode::Mobius: return FCAF3D_MODE_MOBIUS;
  }
  throw f::InternalError("unhandled parametrization mode");
}

f::OrientedBox3 box_at(const double* boxes, std::size_t i) {
  const double* b = boxes + i * FCAF3D_BOX_STRIDE;
  return {b[0], b[1], b[2], b[3], b[4], b[5], b[6]};
}

void put_box(double* out, std::size_t i, const f::OrientedBox3& b) {
  double* o = out + i * FCAF3D_BOX_STRIDE;
  o[0] = b.x, o[1] = b.y, o[2] = b.z, o[3] = b.w, o[4] = b.l, o[5] = b.h, o[6] = b.theta;
}

f::Location3 loc_at(const double* locs, std::size_t i) { return {locs[3 * i], locs[3 * i + 1], locs[3 * i + 2]}; }

f::BoxDeltas deltas_at(const double* deltas, std::size_t i, f::ParamMode mode) {
  f::BoxDeltas d;
  d.mode = mode;
  std::memcpy(d.d.data(), deltas + i * FCAF3D_DELTA_STRIDE, sizeof(double) * FCAF3D_DELTA_STRIDE);
  return d;
}

template <typename Writer>
void write_to(const char* path, Writer&& writer) {
  if (path == nullptr || std::strcmp(path, "-") == 0) {
    writer(std::cout);
    std::cout.flush();
    if (!std::cout) throw f::IoError("failed writing to stdout");
    return;
  }
  std::ofstream out(path);
  if (!out) throw f::IoError(std::string("cannot open ") + path + " for writing");
  writer(out);
  out.flush();
  if (!out) throw f::IoError(std::string("failed writing ") + path);
}

template <typename T>
T* release(std::unique_ptr<T> p) {
  return p.release();
}

}  // namespace

extern "C" {

const char* fcaf3d_version(void) { return "0.1.0"; }

const char* fcaf3d_last_error(void) { return g_last_error.c_str(); }

fcaf3d_status fcaf3d_parse_mode(const char* name, fcaf3d_mode* out) {
  return guarded([&] {
    require(name, "name");
    require(out, "out");
    *out = from_mode(f::parse_mode(name));
  });
}

const char* fcaf3d_mode_name(fcaf3d_mode mode) {
  switch (mode) {
    case FCAF3D_MODE_AABB: return "aabb";
    case FCAF3D_MODE_NAIVE: return "naive";
    case FCAF3D_MODE_SINCOS: return "sincos";
    case FCAF3D_MODE_MOBIUS: return "mobius";
  }
  return "unknown";
}

fcaf3d_status fcaf3d_encode(fcaf3d_mode mode, const double* boxes, const double* locations, size_t n,
                            double* deltas_out) {
  return guarded([&] {
    require_if(n, boxes, "boxes");
    require_if(n, locations, "locations");
    require_if(n, deltas_out, "deltas_out");
    const f::ParamMode m = to_mode(mode);
    for (std::size_t i = 0; i < n; ++i) {
      const f::BoxDeltas d = f::encode(box_at(boxes, i), loc_at(locations, i), m);
      std::memcpy(deltas_out + i * FCAF3D_DELTA_STRIDE, d.d.data(), sizeof(double) * FCAF3D_DELTA_STRIDE);
    }
  });
}

fcaf3d_status fcaf3d_decode(fcaf3d_mode mode, const double* deltas, const double* locations, size_t n,
                            double* boxes_out) {
  return guarded([&] {
    require_if(n, deltas, "deltas");
    require_if(n, locations, "locations");
    require_if(n, boxes_out, "boxes_out");
    const f::ParamMode m = to_mode(mode);
    for (std::size_t i = 0; i < n; ++i) put_box(boxes_out, i, f::decode(deltas_at(deltas, i, m), loc_at(locations, i)));
  });
}

fcaf3d_status fcaf3d_canonicalize(const double* boxes, size_t n, double* boxes_out) {
  return guarded([&] {
    require_if(n, boxes, "boxes");
    require_if(n, boxes_out, "boxes_out");
    for (std::size_t i = 0; i < n; ++i) put_box(boxes_out, i, f::canonicalize_obb(box_at(boxes, i)));
  });
}

fcaf3d_status fcaf3d_iou(const double* a, const double* b, size_t n, int rotated, double* out) {
  return guarded([&] {
    require_if(n, a, "a");
    require_if(n, b, "b");
    require_if(n, out, "out");
    for (std::size_t i = 0; i < n; ++i) {
      const f::OrientedBox3 ba = box_at(a, i), bb = box_at(b, i);
      f::validate(ba);
      f::validate(bb);
      out[i] = rotated ? f::iou_obb(ba, bb) : f::iou_aabb(ba.axis_aligned(), bb.axis_aligned());
    }
  });
}

fcaf3d_status fcaf3d_centerness(const double* deltas, size_t n, double* out) {
  return guarded([&] {
    require_if(n, deltas, "deltas");
    require_if(n, out, "out");
    for (std::size_t i = 0; i < n; ++i) out[i] = f::centerness3d(deltas_at(deltas, i, f::ParamMode::Aabb));
  });
}

fcaf3d_status fcaf3d_mobius_embed(const double* q, const double* theta, size_t n, double* out) {
  return guarded([&] {
    require_if(n, q, "q");
    require_if(n, theta, "theta");
    require_if(n, out, "out");
    for (std::size_t i = 0; i < n; ++i) {
      const f::MobiusPoint p = f::mobius_embed(q[i], theta[i]);
      out[4 * i] = p.e1, out[4 * i + 1] = p.e2, out[4 * i + 2] = p.e3, out[4 * i + 3] = p.e4;
    }
  });
}

fcaf3d_status fcaf3d_focal_loss(const double* probs, size_t n, size_t num_classes, const int* labels, double gamma,
                                double alpha, double* out) {
  return guarded([&] {
    require_if(n * num_classes, probs, "probs");
    require_if(n, labels, "labels");
    require_if(n, out, "out");
    for (std::size_t i = 0; i < n; ++i) {
      const std::span<const double> row(probs + i * num_classes, num_classes);
      const std::optional<int> label = labels[i] < 0 ? std::nullopt : std::optional<int>(labels[i]);
      out[i] = f::focal_loss(row, label, gamma, alpha);
    }
  });
}

fcaf3d_status fcaf3d_iou_loss(fcaf3d_mode mode, const double* pred, const double* target, const double* locations,
                              size_t n, double* out) {
  return guarded([&] {
    require_if(n, pred, "pred");
    require_if(n, target, "target");
    require_if(n, locations, "locations");
    require_if(n, out, "out");
    const f::ParamMode m = to_mode(mode);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = f::iou_loss(deltas_at(pred, i, m), deltas_at(target, i, m), loc_at(locations, i));
    }
  });
}

fcaf3d_status fcaf3d_centerness_loss(const double* pred, const double* target, size_t n, double* out) {
  return guarded([&] {
    require_if(n, pred, "pred");
    require_if(n, target, "target");
    require_if(n, out, "out");
    for (std::size_t i = 0; i < n; ++i) out[i] = f::centerness_loss(pred[i], target[i]);
  });
}

fcaf3d_status fcaf3d_cloud_create(const double* points, size_t n, fcaf3d_cloud** out) {
  return guarded([&] {
    require_if(n, points, "points");
    require(out, "out");
    auto cloud = std::make_unique<fcaf3d_cloud>();
    cloud->cloud.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double* p = points + i * FCAF3D_POINT_STRIDE;
      cloud->cloud.points.push_back({p[0], p[1], p[2], p[3], p[4], p[5]});
    }
    cloud->sync();
    *out = release(std::move(cloud));
  });
}

fcaf3d_status fcaf3d_cloud_load(const char* path, fcaf3d_cloud** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto cloud = std::make_unique<fcaf3d_cloud>();
    cloud->cloud = f::io::load_point_cloud(path);
    cloud->sync();
    *out = release(std::move(cloud));
  });
}

fcaf3d_status fcaf3d_cloud_save(const fcaf3d_cloud* cloud, const char* path) {
  return guarded([&] {
    require(cloud, "cloud");
    write_to(path, [&](std::ostream& os) { f::io::write_point_cloud(os, cloud->cloud); });
  });
}

size_t fcaf3d_cloud_size(const fcaf3d_cloud* cloud) { return cloud ? cloud->cloud.size() : 0; }
const double* fcaf3d_cloud_data(const fcaf3d_cloud* cloud) { return cloud ? cloud->flat.data() : nullptr; }
void fcaf3d_cloud_free(fcaf3d_cloud* cloud) { delete cloud; }

fcaf3d_status fcaf3d_voxelize(const fcaf3d_cloud* cloud, double voxel_size, int32_t* coords_out, size_t capacity,
                              size_t* count) {
  bool too_small = false;
  const fcaf3d_status st = guarded([&] {
    require(cloud, "cloud");
    require(count, "count");
    const f::SparseVoxelSet set = f::voxelize(cloud->cloud, voxel_size);
    *count = set.size();
    if (coords_out == nullptr) return;
    if (capacity < set.size()) {
      too_small = true;
      return;
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
      coords_out[3 * i] = set.voxels[i].x;
      coords_out[3 * i + 1] = set.voxels[i].y;
      coords_out[3 * i + 2] = set.voxels[i].z;
    }
  });
  if (st == FCAF3D_OK && too_small) return fail(FCAF3D_ERR_BUFFER_TOO_SMALL, "coordinate buffer too small");
  return st;
}

fcaf3d_status fcaf3d_prune_topk(const int32_t* coords, const double* scores, size_t n, int64_t n_vox,
                                size_t* kept_out, size_t* n_kept) {
  return guarded([&] {
    require_if(n, coords, "coords");
    require_if(n, scores, "scores");
    require_if(n, kept_out, "kept_out");
    require(n_kept, "n_kept");
    // Voxels may arrive unsorted; keep the caller's indices alongside.
    std::vector<std::pair<f::Voxel, std::size_t>> items;
    items.reserve(n);
    for (std::size_t i = 0; i < n; ++i) items.push_back({{coords[3 * i], coords[3 * i + 1], coords[3 * i + 2]}, i});
    std::sort(items.begin(), items.end());
    for (std::size_t i = 1; i < items.size(); ++i) {
      if (items[i].first == items[i - 1].first) throw f::InvalidArgument("duplicate voxel coordinates");
    }
    f::SparseVoxelSet set;
    std::vector<double> sorted_scores;
    for (const auto& [v, i] : items) {
      set.voxels.push_back(v);
      sorted_scores.push_back(scores[i]);
    }
    set.scores = std::move(sorted_scores);
    const f::SparseVoxelSet kept = f::prune_topk(set, n_vox);
    std::vector<std::size_t> idx;
    std::size_t j = 0;
    for (const f::Voxel& v : kept.voxels) {
      while (items[j].first != v) ++j;
      idx.push_back(items[j].second);
    }
    std::sort(idx.begin(), idx.end());
    std::copy(idx.begin(), idx.end(), kept_out);
    *n_kept = idx.size();
  });
}

fcaf3d_status fcaf3d_records_create(const char* const* scene_ids, const int* labels, const double* scores,
                                    const double* boxes, size_t n, fcaf3d_records** out) {
  return guarded([&] {
    require_if(n, scene_ids, "scene_ids");
    require_if(n, labels, "labels");
    require_if(n, boxes, "boxes");
    require(out, "out");
    auto rec = std::make_unique<fcaf3d_records>();
    rec->has_scores = scores != nullptr;
    for (std::size_t i = 0; i < n; ++i) {
      require(scene_ids[i], "scene id");
      const f::OrientedBox3 b = box_at(boxes, i);
      f::validate(b);
      if (labels[i] < 0) throw f::InvalidArgument("class labels must be non-negative");
      if (scores && !std::isfinite(scores[i])) throw f::InvalidArgument("scores must be finite");
      rec->push(scene_ids[i], labels[i], scores ? scores[i] : 0.0, b);
    }
    *out = release(std::move(rec));
  });
}

fcaf3d_status fcaf3d_records_load(const char* path, int with_scores, fcaf3d_records** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto rec = std::make_unique<fcaf3d_records>();
    rec->has_scores = with_scores != 0;
    if (with_scores) {
      for (const auto& r : f::io::load_detections(path)) rec->push(r.scene_id, r.det.class_label, r.det.score, r.det.box);
    } else {
      for (const auto& r : f::io::load_ground_truth(path)) rec->push(r.scene_id, r.gt.class_label, 0.0, r.gt.box);
    }
    *out = release(std::move(rec));
  });
}

fcaf3d_status fcaf3d_records_save(const fcaf3d_records* records, const char* path) {
  return guarded([&] {
    require(records, "records");
    write_to(path, [&](std::ostream& os) {
      if (records->has_scores) {
        f::io::write_detections(os, records->detections());
      } else {
        f::io::write_ground_truth(os, records->ground_truth());
      }
    });
  });
}

fcaf3d_status fcaf3d_records_append(fcaf3d_records* dst, const fcaf3d_records* src) {
  return guarded([&] {
    require(dst, "dst");
    require(src, "src");
    if (dst->has_scores != src->has_scores) throw f::InvalidArgument("cannot mix detections and ground truth");
    for (std::size_t i = 0; i < src->size(); ++i) {
      dst->push(src->scene_ids[i], src->labels[i], src->has_scores ? src->scores[i] : 0.0, src->box(i));
    }
  });
}

fcaf3d_status fcaf3d_records_subset(const fcaf3d_records* records, const size_t* indices, size_t n,
                                    fcaf3d_records** out) {
  return guarded([&] {
    require(records, "records");
    require_if(n, indices, "indices");
    require(out, "out");
    auto rec = std::make_unique<fcaf3d_records>();
    rec->has_scores = records->has_scores;
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t i = indices[k];
      if (i >= records->size()) throw f::InvalidArgument("record index out of range");
      rec->push(records->scene_ids[i], records->labels[i], records->has_scores ? records->scores[i] : 0.0,
                records->box(i));
    }
    *out = release(std::move(rec));
  });
}

size_t fcaf3d_records_size(const fcaf3d_records* records) { return records ? records->size() : 0; }
int fcaf3d_records_has_scores(const fcaf3d_records* records) { return records && records->has_scores ? 1 : 0; }
const double* fcaf3d_records_boxes(const fcaf3d_records* records) { return records ? records->boxes.data() : nullptr; }
const double* fcaf3d_records_scores(const fcaf3d_records* records) {
  return records && records->has_scores ? records->scores.data() : nullptr;
}
const int* fcaf3d_records_labels(const fcaf3d_records* records) { return records ? records->labels.data() : nullptr; }
const char* fcaf3d_records_scene_id(const fcaf3d_records* records, size_t i) {
  return records && i < records->size() ? records->scene_ids[i].c_str() : nullptr;
}
void fcaf3d_records_free(fcaf3d_records* records) { delete records; }

void fcaf3d_scene_params_default(fcaf3d_scene_params* params) {
  if (params == nullptr) return;
  const f::SceneSpec spec;
  params->room[0] = spec.room_x;
  params->room[1] = spec.room_y;
  params->room[2] = spec.room_z;
  params->num_classes = spec.num_classes;
  params->num_boxes = spec.num_boxes;
  params->points_per_box = spec.points_per_box;
  params->clutter_points = spec.clutter_points;
  params->min_extent = spec.min_extent;
  params->max_extent = spec.max_extent;
  params->min_log_aspect = spec.min_log_aspect;
  params->axis_aligned = spec.axis_aligned ? 1 : 0;
}

fcaf3d_status fcaf3d_generate_scene(uint64_t seed, const fcaf3d_scene_params* params, const char* scene_id,
                                    fcaf3d_cloud** cloud_out, fcaf3d_records** gt_out) {
  return guarded([&] {
    require(params, "params");
    require(scene_id, "scene_id");
    require(cloud_out, "cloud_out");
    require(gt_out, "gt_out");
    f::SceneSpec spec;
    spec.room_x = params->room[0];
    spec.room_y = params->room[1];
    spec.room_z = params->room[2];
    spec.num_classes = params->num_classes;
    spec.num_boxes = params->num_boxes;
    spec.points_per_box = params->points_per_box;
    spec.clutter_points = params->clutter_points;
    spec.min_extent = params->min_extent;
    spec.max_extent = params->max_extent;
    spec.min_log_aspect = params->min_log_aspect;
    spec.axis_aligned = params->axis_aligned != 0;
    f::Scene scene = f::generate_scene(seed, spec);

    auto cloud = std::make_unique<fcaf3d_cloud>();
    cloud->cloud = std::move(scene.cloud);
    cloud->sync();
    auto gt = std::make_unique<fcaf3d_records>();
    for (const auto& lb : scene.boxes) gt->push(scene_id, lb.class_label, 0.0, lb.box);
    *cloud_out = release(std::move(cloud));
    *gt_out = release(std::move(gt));
  });
}

void fcaf3d_assign_config_default(fcaf3d_assign_config* cfg) {
  if (cfg == nullptr) return;
  const f::LevelSpec spec;
  const f::AssignmentConfig assign;
  cfg->base_voxel_size = spec.base_voxel_size;
  cfg->num_levels = spec.num_levels;
  cfg->first_stride = spec.first_stride;
  cfg->n_loc = assign.n_loc;
  cfg->center_sample_k = assign.center_sample_k;
  cfg->n_pts = 100000;
  cfg->seed = 0;
}

fcaf3d_status fcaf3d_assign(const fcaf3d_cloud* cloud, const double* boxes, const int* labels, size_t n_boxes,
                            const fcaf3d_assign_config* cfg, fcaf3d_mode mode, const char* scene_id,
                            fcaf3d_targets** out) {
  return guarded([&] {
    require(cloud, "cloud");
    require_if(n_boxes, boxes, "boxes");
    require_if(n_boxes, labels, "labels");
    require(cfg, "cfg");
    require(scene_id, "scene_id");
    require(out, "out");
    const f::LevelSpec spec{cfg->base_voxel_size, cfg->num_levels, cfg->first_stride};
    const f::AssignmentConfig acfg{cfg->n_loc, cfg->center_sample_k};
    const f::ParamMode m = to_mode(mode);

    std::vector<f::LabeledBox> gt;
    for (std::size_t i = 0; i < n_boxes; ++i) {
      const f::OrientedBox3 b = box_at(boxes, i);
      f::validate(b);
      if (labels[i] < 0) throw f::InvalidArgument("class labels must be non-negative");
      gt.push_back({b, labels[i]});
    }
    const f::PointCloud& points =
        cfg->n_pts > 0 && cloud->cloud.size() > cfg->n_pts ? f::subsample(cloud->cloud, cfg->n_pts, cfg->seed)
                                                           : cloud->cloud;
    const auto levels = f::build_levels(f::voxelize(points, spec.base_voxel_size), spec);
    auto result = std::make_unique<fcaf3d_targets>();
    for (auto& t : f::assign(gt, levels, acfg, m)) result->records.push_back({scene_id, std::move(t)});
    *out = release(std::move(result));
  });
}

fcaf3d_status fcaf3d_targets_load(const char* path, fcaf3d_targets** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    auto t = std::make_unique<fcaf3d_targets>();
    t->records = f::io::load_targets(path);
    *out = release(std::move(t));
  });
}

fcaf3d_status fcaf3d_targets_save(const fcaf3d_targets* targets, const char* path) {
  return guarded([&] {
    require(targets, "targets");
    write_to(path, [&](std::ostream& os) { f::io::write_targets(os, targets->records); });
  });
}

size_t fcaf3d_targets_size(const fcaf3d_targets* targets) { return targets ? targets->records.size() : 0; }

fcaf3d_status fcaf3d_targets_get(const fcaf3d_targets* targets, size_t i, fcaf3d_target* out) {
  return guarded([&] {
    require(targets, "targets");
    require(out, "out");
    if (i >= targets->records.size()) throw f::InvalidArgument("target index out of range");
    const f::AssignmentTarget& t = targets->records[i].target;
    out->level = t.level;
    out->voxel[0] = t.voxel.x, out->voxel[1] = t.voxel.y, out->voxel[2] = t.voxel.z;
    out->location[0] = t.location.x, out->location[1] = t.location.y, out->location[2] = t.location.z;
    out->class_label = t.class_label;
    out->box_id = t.box_id ? static_cast<int64_t>(*t.box_id) : -1;
    out->centerness = t.centerness;
    out->mode = from_mode(t.deltas.mode);
    std::memcpy(out->deltas, t.deltas.d.data(), sizeof out->deltas);
  });
}

const char* fcaf3d_targets_scene_id(const fcaf3d_targets* targets, size_t i) {
  return targets && i < targets->records.size() ? targets->records[i].scene_id.c_str() : nullptr;
}

void fcaf3d_targets_free(fcaf3d_targets* targets) { delete targets; }

fcaf3d_status fcaf3d_targets_to_detections(const fcaf3d_targets* targets, int one_per_box, int centerness_scores,
                                           fcaf3d_records** out) {
  return guarded([&] {
    require(targets, "targets");
    require(out, "out");
    auto rec = std::make_unique<fcaf3d_records>();
    rec->has_scores = true;
    const f::TargetDecodeOptions options{one_per_box != 0, centerness_scores != 0};
    for (const auto& d : f::detections_from_targets(targets->records, options)) {
      rec->push(d.scene_id, d.det.class_label, d.det.score, d.det.box);
    }
    *out = release(std::move(rec));
  });
}

fcaf3d_status fcaf3d_nms(const double* boxes, const double* scores, const int* labels, size_t n,
                         double iou_threshold, size_t* kept_out, size_t* n_kept) {
  return guarded([&] {
    require_if(n, boxes, "boxes");
    require_if(n, scores, "scores");
    require_if(n, labels, "labels");
    require_if(n, kept_out, "kept_out");
    require(n_kept, "n_kept");
    std::vector<f::Detection> dets;
    dets.reserve(n);
    for (std::size_t i = 0; i < n; ++i) dets.push_back({labels[i], scores[i], box_at(boxes, i)});
    const auto kept = f::nms_rotated_indices(dets, iou_threshold);
    std::copy(kept.begin(), kept.end(), kept_out);
    *n_kept = kept.size();
  });
}

fcaf3d_status fcaf3d_evaluate(const fcaf3d_records* dets, const fcaf3d_records* gts, const double* thresholds,
                              size_t n_thresholds, int rotated, int num_classes, fcaf3d_report** out) {
  return guarded([&] {
    require(dets, "dets");
    require(gts, "gts");
    require_if(n_thresholds, thresholds, "thresholds");
    require(out, "out");
    if (!dets->has_scores) throw f::InvalidArgument("detections need scores");
    if (num_classes <= 0) {
      num_classes = 0;
      for (int label : gts->labels) num_classes = std::max(num_classes, label + 1);
      if (num_classes == 0) throw f::InvalidArgument("cannot infer the class count from empty ground truth");
    }
    auto report = std::make_unique<fcaf3d_report>();
    report->report = f::evaluate(dets->detections(), gts->ground_truth(), {thresholds, n_thresholds}, rotated != 0,
                                 num_classes);
    *out = release(std::move(report));
  });
}

int fcaf3d_report_num_classes(const fcaf3d_report* report) { return report ? report->report.num_classes : 0; }

size_t fcaf3d_report_num_thresholds(const fcaf3d_report* report) {
  return report ? report->report.thresholds.size() : 0;
}

fcaf3d_status fcaf3d_report_map(const fcaf3d_report* report, size_t threshold_index, double* out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    if (threshold_index >= report->report.map.size()) throw f::InvalidArgument("threshold index out of range");
    *out = report->report.map[threshold_index];
  });
}

fcaf3d_status fcaf3d_report_ap(const fcaf3d_report* report, size_t threshold_index, int class_label, double* ap,
                               int* has_gt) {
  return guarded([&] {
    require(report, "report");
    require(ap, "ap");
    require(has_gt, "has_gt");
    const auto& r = report->report;
    if (threshold_index >= r.ap.size()) throw f::InvalidArgument("threshold index out of range");
    if (class_label < 0 || class_label >= r.num_classes) throw f::InvalidArgument("class label out of range");
    const auto& value = r.ap[threshold_index][static_cast<std::size_t>(class_label)];
    *has_gt = value ? 1 : 0;
    *ap = value.value_or(0.0);
  });
}

fcaf3d_status fcaf3d_report_format(const fcaf3d_report* report, char* buf, size_t capacity, size_t* needed) {
  bool too_small = false;
  const fcaf3d_status st = guarded([&] {
    require(report, "report");
    require(needed, "needed");
    const std::string text = f::format_report(report->report);
    *needed = text.size() + 1;
    if (buf == nullptr) return;
    if (capacity < text.size() + 1) {
      too_small = true;
      return;
    }
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
  if (st == FCAF3D_OK && too_small) return fail(FCAF3D_ERR_BUFFER_TOO_SMALL, "report buffer too small");
  return st;
}

fcaf3d_status fcaf3d_report_write_pr_curves(const fcaf3d_report* report, const char* directory) {
  return guarded([&] {
    require(report, "report");
    require(directory, "directory");
    const auto& r = report->report;
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec) throw f::IoError(std::string("cannot create ") + directory + ": " + ec.message());
    for (std::size_t t = 0; t < r.thresholds.size(); ++t) {
      for (std::size_t c = 0; c < static_cast<std::size_t>(r.num_classes); ++c) {
        const auto path = std::filesystem::path(directory) /
                          ("pr_class" + std::to_string(c) + "_iou" + f::io::format_double(r.thresholds[t]) + ".txt");
        write_to(path.c_str(), [&](std::ostream& os) {
          os << "# recall precision\n";
          const auto& curve = r.curves[t][c];
          for (std::size_t i = 0; i < curve.recall.size(); ++i) {
            os << f::io::format_double(curve.recall[i]) << ' ' << f::io::format_double(curve.precision[i]) << '\n';
          }
        });
      }
    }
  });
}

void fcaf3d_report_free(fcaf3d_report* report) { delete report; }

}  // extern "C"
