#include "fcaf3d/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include "fcaf3d/error.hpp"

namespace fcaf3d::io {
namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

// Calls fn(tokens, line_number) for each data line; parse failures are
// rethrown with the location attached.
template <typename Fn>
void for_each_record(std::istream& in, const std::string& source, Fn&& fn) {
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto tokens = split(line);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    try {
      fn(tokens);
    } catch (const ParseError&) {
      throw;
    } catch (const InvalidArgument& e) {
      throw ParseError(source, number, e.what());
    }
  }
  if (in.bad()) throw IoError(source + ": read error");
}

void expect_fields(const std::vector<std::string_view>& tokens, std::size_t n, const char* what) {
  if (tokens.size() != n) {
    throw InvalidArgument(std::string("expected ") + std::to_string(n) + " fields for " + what + ", got " +
                          std::to_string(tokens.size()));
  }
}

int parse_label(std::string_view token) {
  const long long v = parse_int(token);
  if (v < 0 || v > 1'000'000) throw InvalidArgument("class id out of range: " + std::string(token));
  return static_cast<int>(v);
}

OrientedBox3 parse_box(const std::vector<std::string_view>& t, std::size_t at) {
  OrientedBox3 box{parse_double(t[at]),     parse_double(t[at + 1]), parse_double(t[at + 2]),
                   parse_double(t[at + 3]), parse_double(t[at + 4]), parse_double(t[at + 5]),
                   parse_double(t[at + 6])};
  validate(box);
  return box;
}

void write_box(std::ostream& out, const OrientedBox3& b) {
  out << format_double(b.x) << ' ' << format_double(b.y) << ' ' << format_double(b.z) << ' ' << format_double(b.w)
      << ' ' << format_double(b.l) << ' ' << format_double(b.h) << ' ' << format_double(b.theta);
}

template <typename T>
T with_file(const std::string& path, T (*reader)(std::istream&, const std::string&)) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return reader(in, path);
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_fixed(double v, int decimals) {
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, decimals);
  if (res.ec != std::errc()) return format_double(v);
  std::string s(buf, res.ptr);
  // Avoid printing "-0.000000".
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

double parse_double(std::string_view token) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v)) {
    throw InvalidArgument("invalid number '" + std::string(token) + "'");
  }
  return v;
}

long long parse_int(std::string_view token) {
  long long v = 0;
  const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
  if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
    throw InvalidArgument("invalid integer '" + std::string(token) + "'");
  }
  return v;
}

PointCloud read_point_cloud(std::istream& in, const std::string& source) {
  PointCloud cloud;
  for_each_record(in, source, [&](const std::vector<std::string_view>& t) {
    expect_fields(t, 6, "a point (x y z r g b)");
    cloud.points.push_back({parse_double(t[0]), parse_double(t[1]), parse_double(t[2]), parse_double(t[3]),
                            parse_double(t[4]), parse_double(t[5])});
  });
  return cloud;
}

void write_point_cloud(std::ostream& out, const PointCloud& cloud) {
  out << "# x y z r g b\n";
  for (const Point& p : cloud.points) {
    out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z) << ' '
        << format_double(p.r) << ' ' << format_double(p.g) << ' ' << format_double(p.b) << '\n';
  }
}

std::vector<GroundTruthRecord> read_ground_truth(std::istream& in, const std::string& source) {
  std::vector<GroundTruthRecord> out;
  for_each_record(in, source, [&](const std::vector<std::string_view>& t) {
    expect_fields(t, 9, "a ground-truth box (scene_id class_id x y z w l h theta)");
    out.push_back({std::string(t[0]), {parse_box(t, 2), parse_label(t[1])}});
  });
  return out;
}

void write_ground_truth(std::ostream& out, std::span<const GroundTruthRecord> records) {
  out << "# scene_id class_id x y z w l h theta\n";
  for (const auto& r : records) {
    out << r.scene_id << ' ' << r.gt.class_label << ' ';
    write_box(out, r.gt.box);
    out << '\n';
  }
}

std::vector<DetectionRecord> read_detections(std::istream& in, const std::string& source) {
  std::vector<DetectionRecord> out;
  for_each_record(in, source, [&](const std::vector<std::string_view>& t) {
    expect_fields(t, 10, "a detection (scene_id class_id score x y z w l h theta)");
    DetectionRecord r{std::string(t[0]), {parse_label(t[1]), parse_double(t[2]), parse_box(t, 3)}};
    out.push_back(std::move(r));
  });
  return out;
}

void write_detections(std::ostream& out, std::span<const DetectionRecord> records) {
  out << "# scene_id class_id score x y z w l h theta\n";
  for (const auto& r : records) {
    out << r.scene_id << ' ' << r.det.class_label << ' ' << format_double(r.det.score) << ' ';
    write_box(out, r.det.box);
    out << '\n';
  }
}

std::vector<TargetRecord> read_targets(std::istream& in, const std::string& source) {
  std::vector<TargetRecord> out;
  for_each_record(in, source, [&](const std::vector<std::string_view>& t) {
    expect_fields(t, 20, "an assignment target");
    TargetRecord r;
    r.scene_id = std::string(t[0]);
    AssignmentTarget& a = r.target;
    a.level = static_cast<int>(parse_int(t[1]));
    a.voxel = {static_cast<std::int32_t>(parse_int(t[2])), static_cast<std::int32_t>(parse_int(t[3])),
               static_cast<std::int32_t>(parse_int(t[4]))};
    a.location = {parse_double(t[5]), parse_double(t[6]), parse_double(t[7])};
    a.class_label = parse_label(t[8]);
    const long long box_id = parse_int(t[9]);
    if (box_id < 0) throw InvalidArgument("box id must be non-negative");
    a.box_id = static_cast<std::size_t>(box_id);
    a.centerness = parse_double(t[10]);
    a.deltas.mode = parse_mode(t[11]);
    for (std::size_t i = 0; i < 8; ++i) a.deltas.d[i] = parse_double(t[12 + i]);
    out.push_back(std::move(r));
  });
  return out;
}

void write_targets(std::ostream& out, std::span<const TargetRecord> records) {
  out << "# scene_id level vx vy vz x y z class_id box_id centerness mode d1 d2 d3 d4 d5 d6 d7 d8\n";
  for (const auto& r : records) {
    const AssignmentTarget& a = r.target;
    out << r.scene_id << ' ' << a.level << ' ' << a.voxel.x << ' ' << a.voxel.y << ' ' << a.voxel.z << ' '
        << format_double(a.location.x) << ' ' << format_double(a.location.y) << ' ' << format_double(a.location.z)
        << ' ' << a.class_label << ' ' << (a.box_id ? static_cast<long long>(*a.box_id) : -1LL) << ' '
        << format_double(a.centerness) << ' ' << to_string(a.deltas.mode);
    for (double v : a.deltas.d) out << ' ' << format_double(v);
    out << '\n';
  }
}

PointCloud load_point_cloud(const std::string& path) { return with_file(path, &read_point_cloud); }
std::vector<GroundTruthRecord> load_ground_truth(const std::string& path) { return with_file(path, &read_ground_truth); }
std::vector<DetectionRecord> load_detections(const std::string& path) { return with_file(path, &read_detections); }
std::vector<TargetRecord> load_targets(const std::string& path) { return with_file(path, &read_targets); }

}  // namespace fcaf3d::io
