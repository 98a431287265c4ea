#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "fcaf3d/assignment.hpp"
#include "fcaf3d/evaluation.hpp"
#include "fcaf3d/sparse_grid.hpp"

namespace fcaf3d::io {

// All formats are whitespace-separated text, one record per line. Blank
// lines and lines starting with '#' are skipped. Numbers are written in the
// shortest form that round-trips, independent of the global locale.

/// "x y z r g b"
PointCloud read_point_cloud(std::istream& in, const std::string& source = "<input>");
void write_point_cloud(std::ostream& out, const PointCloud& cloud);

/// "scene_id class_id x y z w l h theta"
std::vector<GroundTruthRecord> read_ground_truth(std::istream& in, const std::string& source = "<input>");
void write_ground_truth(std::ostream& out, std::span<const GroundTruthRecord> records);

/// "scene_id class_id score x y z w l h theta"
std::vector<DetectionRecord> read_detections(std::istream& in, const std::string& source = "<input>");
void write_detections(std::ostream& out, std::span<const DetectionRecord> records);

/// "scene_id level vx vy vz x y z class_id box_id centerness mode d1 .. d8"
struct TargetRecord {
  std::string scene_id;
  AssignmentTarget target;
};
std::vector<TargetRecord> read_targets(std::istream& in, const std::string& source = "<input>");
void write_targets(std::ostream& out, std::span<const TargetRecord> records);

/// Convenience wrappers that open a file; errors name the path.
PointCloud load_point_cloud(const std::string& path);
std::vector<GroundTruthRecord> load_ground_truth(const std::string& path);
std::vector<DetectionRecord> load_detections(const std::string& path);
std::vector<TargetRecord> load_targets(const std::string& path);

std::string format_double(double v);
std::string format_fixed(double v, int decimals);
/// Strict full-token parse; throws InvalidArgument on failure.
double parse_double(std::string_view token);
long long parse_int(std::string_view token);

}  // namespace fcaf3d::io
