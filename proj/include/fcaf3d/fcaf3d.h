/* C interface to the fcaf3d detection core.
 *
 * Conventions:
 *  - Boxes are flat row-major arrays of 7 doubles: x y z w l h theta.
 *  - Deltas are 8 doubles: d1..d6 face distances, d7 d8 angle channels.
 *  - Locations are 3 doubles, points 6 (x y z r g b).
 *  - Every call returns a status; on failure fcaf3d_last_error() describes
 *    it. The message is per thread and valid until the next failing call.
 *  - Opaque handles are released with their matching _free function, which
 *    accepts NULL. Functions hold no state between calls.
 */
#ifndef FCAF3D_FCAF3D_H_
#define FCAF3D_FCAF3D_H_

#include <stddef.h>
#include <stdint.h>

#if defined(FCAF3D_BUILDING_LIBRARY)
#define FCAF3D_API __attribute__((visibility("default")))
#else
#define FCAF3D_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define FCAF3D_BOX_STRIDE 7
#define FCAF3D_DELTA_STRIDE 8
#define FCAF3D_POINT_STRIDE 6

typedef enum fcaf3d_status {
  FCAF3D_OK = 0,
  FCAF3D_ERR_INVALID_ARGUMENT = 1,
  FCAF3D_ERR_PARSE = 2,
  FCAF3D_ERR_IO = 3,
  FCAF3D_ERR_BUFFER_TOO_SMALL = 4,
  FCAF3D_ERR_INTERNAL = 5
} fcaf3d_status;

typedef enum fcaf3d_mode {
  FCAF3D_MODE_AABB = 0,
  FCAF3D_MODE_NAIVE = 1,
  FCAF3D_MODE_SINCOS = 2,
  FCAF3D_MODE_MOBIUS = 3
} fcaf3d_mode;

FCAF3D_API const char* fcaf3d_version(void);
FCAF3D_API const char* fcaf3d_last_error(void);
/* "aabb", "naive", "sincos" or "mobius". */
FCAF3D_API fcaf3d_status fcaf3d_parse_mode(const char* name, fcaf3d_mode* out);
FCAF3D_API const char* fcaf3d_mode_name(fcaf3d_mode mode);

/* ---- boxes and parametrizations (batched) ---- */

/* Aabb mode requires theta == 0. */
FCAF3D_API fcaf3d_status fcaf3d_encode(fcaf3d_mode mode, const double* boxes, const double* locations, size_t n,
                                       double* deltas_out);
FCAF3D_API fcaf3d_status fcaf3d_decode(fcaf3d_mode mode, const double* deltas, const double* locations, size_t n,
                                       double* boxes_out);
FCAF3D_API fcaf3d_status fcaf3d_canonicalize(const double* boxes, size_t n, double* boxes_out);
/* rotated == 0 compares the boxes as axis-aligned (theta ignored). */
FCAF3D_API fcaf3d_status fcaf3d_iou(const double* a, const double* b, size_t n, int rotated, double* out);
/* Centerness from the six face distances of each delta row. */
FCAF3D_API fcaf3d_status fcaf3d_centerness(const double* deltas, size_t n, double* out);
/* out receives 4 doubles per input. */
FCAF3D_API fcaf3d_status fcaf3d_mobius_embed(const double* q, const double* theta, size_t n, double* out);

/* ---- losses (per row) ---- */

/* probs: n x num_classes; labels[i] < 0 marks background. */
FCAF3D_API fcaf3d_status fcaf3d_focal_loss(const double* probs, size_t n, size_t num_classes, const int* labels,
                                           double gamma, double alpha, double* out);
FCAF3D_API fcaf3d_status fcaf3d_iou_loss(fcaf3d_mode mode, const double* pred, const double* target,
                                         const double* locations, size_t n, double* out);
FCAF3D_API fcaf3d_status fcaf3d_centerness_loss(const double* pred, const double* target, size_t n, double* out);

/* ---- point clouds ---- */

typedef struct fcaf3d_cloud fcaf3d_cloud;

FCAF3D_API fcaf3d_status fcaf3d_cloud_create(const double* points, size_t n, fcaf3d_cloud** out);
FCAF3D_API fcaf3d_status fcaf3d_cloud_load(const char* path, fcaf3d_cloud** out);
/* path NULL or "-" writes to stdout. */
FCAF3D_API fcaf3d_status fcaf3d_cloud_save(const fcaf3d_cloud* cloud, const char* path);
FCAF3D_API size_t fcaf3d_cloud_size(const fcaf3d_cloud* cloud);
FCAF3D_API const double* fcaf3d_cloud_data(const fcaf3d_cloud* cloud);
FCAF3D_API void fcaf3d_cloud_free(fcaf3d_cloud* cloud);

/* ---- sparse voxels ---- */

/* Writes up to `capacity` voxels (3 int32 each) and sets *count to the
 * number of occupied voxels; returns FCAF3D_ERR_BUFFER_TOO_SMALL when
 * capacity < *count. Pass coords_out = NULL to query the size. */
FCAF3D_API fcaf3d_status fcaf3d_voxelize(const fcaf3d_cloud* cloud, double voxel_size, int32_t* coords_out,
                                         size_t capacity, size_t* count);
/* Indices (ascending) of the voxels kept by top-k pruning; kept_out must hold n entries. */
FCAF3D_API fcaf3d_status fcaf3d_prune_topk(const int32_t* coords, const double* scores, size_t n, int64_t n_vox,
                                           size_t* kept_out, size_t* n_kept);

/* ---- box records (ground truth or detections) ---- */

typedef struct fcaf3d_records fcaf3d_records;

/* scores == NULL creates ground-truth records. */
FCAF3D_API fcaf3d_status fcaf3d_records_create(const char* const* scene_ids, const int* labels, const double* scores,
                                               const double* boxes, size_t n, fcaf3d_records** out);
FCAF3D_API fcaf3d_status fcaf3d_records_load(const char* path, int with_scores, fcaf3d_records** out);
FCAF3D_API fcaf3d_status fcaf3d_records_save(const fcaf3d_records* records, const char* path);
/* Appends src to dst; both must agree on having scores. */
FCAF3D_API fcaf3d_status fcaf3d_records_append(fcaf3d_records* dst, const fcaf3d_records* src);
FCAF3D_API fcaf3d_status fcaf3d_records_subset(const fcaf3d_records* records, const size_t* indices, size_t n,
                                               fcaf3d_records** out);
FCAF3D_API size_t fcaf3d_records_size(const fcaf3d_records* records);
FCAF3D_API int fcaf3d_records_has_scores(const fcaf3d_records* records);
FCAF3D_API const double* fcaf3d_records_boxes(const fcaf3d_records* records);
FCAF3D_API const double* fcaf3d_records_scores(const fcaf3d_records* records);
FCAF3D_API const int* fcaf3d_records_labels(const fcaf3d_records* records);
FCAF3D_API const char* fcaf3d_records_scene_id(const fcaf3d_records* records, size_t i);
FCAF3D_API void fcaf3d_records_free(fcaf3d_records* records);

/* ---- synthetic scenes ---- */

typedef struct fcaf3d_scene_params {
  double room[3];
  int num_classes;
  size_t num_boxes;
  size_t points_per_box;
  size_t clutter_points;
  double min_extent;
  double max_extent;
  double min_log_aspect;
  int axis_aligned;
} fcaf3d_scene_params;

FCAF3D_API void fcaf3d_scene_params_default(fcaf3d_scene_params* params);
FCAF3D_API fcaf3d_status fcaf3d_generate_scene(uint64_t seed, const fcaf3d_scene_params* params, const char* scene_id,
                                               fcaf3d_cloud** cloud_out, fcaf3d_records** gt_out);

/* ---- assignment ---- */

typedef struct fcaf3d_assign_config {
  double base_voxel_size;
  int num_levels;
  int first_stride;
  int n_loc;
  int center_sample_k;
  /* Clouds larger than n_pts are subsampled with `seed`; 0 disables. */
  size_t n_pts;
  uint64_t seed;
} fcaf3d_assign_config;

typedef struct fcaf3d_target {
  int level;
  int32_t voxel[3];
  double location[3];
  int class_label;
  int64_t box_id;
  double centerness;
  fcaf3d_mode mode;
  double deltas[8];
} fcaf3d_target;

typedef struct fcaf3d_targets fcaf3d_targets;

FCAF3D_API void fcaf3d_assign_config_default(fcaf3d_assign_config* cfg);
FCAF3D_API fcaf3d_status fcaf3d_assign(const fcaf3d_cloud* cloud, const double* boxes, const int* labels,
                                       size_t n_boxes, const fcaf3d_assign_config* cfg, fcaf3d_mode mode,
                                       const char* scene_id, fcaf3d_targets** out);
FCAF3D_API fcaf3d_status fcaf3d_targets_load(const char* path, fcaf3d_targets** out);
FCAF3D_API fcaf3d_status fcaf3d_targets_save(const fcaf3d_targets* targets, const char* path);
FCAF3D_API size_t fcaf3d_targets_size(const fcaf3d_targets* targets);
FCAF3D_API fcaf3d_status fcaf3d_targets_get(const fcaf3d_targets* targets, size_t i, fcaf3d_target* out);
FCAF3D_API const char* fcaf3d_targets_scene_id(const fcaf3d_targets* targets, size_t i);
FCAF3D_API void fcaf3d_targets_free(fcaf3d_targets* targets);
/* Decodes targets into scored detections. one_per_box keeps the most central
 * target of each (scene, box) pair; centerness_scores == 0 scores them 1.0. */
FCAF3D_API fcaf3d_status fcaf3d_targets_to_detections(const fcaf3d_targets* targets, int one_per_box,
                                                      int centerness_scores, fcaf3d_records** out);

/* ---- inference ---- */

/* kept_out must hold n entries; receives indices ordered by score. */
FCAF3D_API fcaf3d_status fcaf3d_nms(const double* boxes, const double* scores, const int* labels, size_t n,
                                    double iou_threshold, size_t* kept_out, size_t* n_kept);

/* ---- evaluation ---- */

typedef struct fcaf3d_report fcaf3d_report;

/* num_classes <= 0 infers it from the largest ground-truth label. */
FCAF3D_API fcaf3d_status fcaf3d_evaluate(const fcaf3d_records* dets, const fcaf3d_records* gts,
                                         const double* thresholds, size_t n_thresholds, int rotated, int num_classes,
                                         fcaf3d_report** out);
FCAF3D_API int fcaf3d_report_num_classes(const fcaf3d_report* report);
FCAF3D_API size_t fcaf3d_report_num_thresholds(const fcaf3d_report* report);
FCAF3D_API fcaf3d_status fcaf3d_report_map(const fcaf3d_report* report, size_t threshold_index, double* out);
/* *has_gt is set to 0 for classes without ground truth; *ap is then 0. */
FCAF3D_API fcaf3d_status fcaf3d_report_ap(const fcaf3d_report* report, size_t threshold_index, int class_label,
                                          double* ap, int* has_gt);
/* Copies the text report (NUL-terminated) into buf; *needed includes the NUL. */
FCAF3D_API fcaf3d_status fcaf3d_report_format(const fcaf3d_report* report, char* buf, size_t capacity,
                                              size_t* needed);
/* One "recall precision" file per class and threshold inside `directory`. */
FCAF3D_API fcaf3d_status fcaf3d_report_write_pr_curves(const fcaf3d_report* report, const char* directory);
FCAF3D_API void fcaf3d_report_free(fcaf3d_report* report);

#ifdef __cplusplus
}
#endif

#endif /* FCAF3D_FCAF3D_H_ */
