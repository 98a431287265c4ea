// fcaf3d command-line tool. Everything goes through the C API in libfcaf3d.

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "fcaf3d/fcaf3d.h"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitInternal = 2;

struct CliFailure {
  int code;
  std::string message;
};

[[noreturn]] void input_error(const std::string& message) { throw CliFailure{kExitInput, message}; }

void check(fcaf3d_status status) {
  if (status == FCAF3D_OK) return;
  throw CliFailure{status == FCAF3D_ERR_INTERNAL ? kExitInternal : kExitInput, fcaf3d_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Cloud = std::unique_ptr<fcaf3d_cloud, Deleter<fcaf3d_cloud, fcaf3d_cloud_free>>;
using Records = std::unique_ptr<fcaf3d_records, Deleter<fcaf3d_records, fcaf3d_records_free>>;
using Targets = std::unique_ptr<fcaf3d_targets, Deleter<fcaf3d_targets, fcaf3d_targets_free>>;
using Report = std::unique_ptr<fcaf3d_report, Deleter<fcaf3d_report, fcaf3d_report_free>>;

Records load_records(const std::string& path, bool with_scores) {
  fcaf3d_records* raw = nullptr;
  check(fcaf3d_records_load(path.c_str(), with_scores ? 1 : 0, &raw));
  return Records(raw);
}

// A plain GT file is accepted as detections, every box scored 1.
Records load_detections_or_gt(const std::string& path) {
  fcaf3d_records* raw = nullptr;
  const fcaf3d_status st = fcaf3d_records_load(path.c_str(), 1, &raw);
  if (st == FCAF3D_OK) return Records(raw);
  const std::string first_error = fcaf3d_last_error();
  if (st != FCAF3D_ERR_PARSE || fcaf3d_records_load(path.c_str(), 0, &raw) != FCAF3D_OK) {
    throw CliFailure{st == FCAF3D_ERR_INTERNAL ? kExitInternal : kExitInput, first_error};
  }
  const Records gt(raw);
  const std::size_t n = fcaf3d_records_size(gt.get());
  std::vector<const char*> scenes(n);
  for (std::size_t i = 0; i < n; ++i) scenes[i] = fcaf3d_records_scene_id(gt.get(), i);
  const std::vector<double> scores(n, 1.0);
  fcaf3d_records* dets = nullptr;
  check(fcaf3d_records_create(scenes.data(), fcaf3d_records_labels(gt.get()), scores.data(),
                              fcaf3d_records_boxes(gt.get()), n, &dets));
  return Records(dets);
}

std::optional<double> to_double(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> values;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item(text.data() + start, (comma == std::string::npos ? text.size() : comma) - start);
    const auto v = to_double(item);
    if (!v) input_error(flag + ": not a number: '" + std::string(item) + "'");
    values.push_back(*v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return values;
}

std::vector<double> parse_fixed_list(const std::string& text, const std::string& flag, std::size_t n) {
  auto values = parse_list(text, flag);
  if (values.size() != n) input_error(flag + ": expected " + std::to_string(n) + " comma-separated values");
  return values;
}

struct NumericLine {
  std::size_t number;
  std::vector<double> values;
};

std::istream& open_input(const std::string& path, std::ifstream& file) {
  if (path == "-") return std::cin;
  file.open(path);
  if (!file) input_error("cannot open " + path);
  return file;
}

std::vector<NumericLine> read_numeric(const std::string& path) {
  std::ifstream file;
  std::istream& in = open_input(path, file);
  const std::string source = path == "-" ? "<stdin>" : path;
  std::vector<NumericLine> lines;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    std::istringstream tokens(line);
    std::string token;
    NumericLine parsed{number, {}};
    while (tokens >> token) {
      if (parsed.values.empty() && token.front() == '#') break;
      const auto v = to_double(token);
      if (!v) input_error(source + ":" + std::to_string(number) + ": not a number: '" + token + "'");
      parsed.values.push_back(*v);
    }
    if (!parsed.values.empty()) lines.push_back(std::move(parsed));
  }
  return lines;
}

std::string line_error(const std::string& path, std::size_t number, const std::string& what) {
  return (path == "-" ? std::string("<stdin>") : path) + ":" + std::to_string(number) + ": " + what;
}

// Fixed-point or shortest round-trip formatting, both locale-independent.
struct NumberFormat {
  int precision = 6;
  bool exact = false;

  std::string operator()(double v) const {
    char buf[64];
    const auto res = exact ? std::to_chars(buf, buf + sizeof buf, v)
                           : std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
    std::string s(buf, res.ptr);
    if (!exact && s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
  }
};

struct Output {
  std::ofstream file;
  std::ostream* stream = &std::cout;

  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file.open(path);
    if (!file) input_error("cannot open " + path + " for writing");
    stream = &file;
  }
  std::ostream& operator*() { return *stream; }
  void finish() {
    stream->flush();
    if (!*stream) input_error("write failed");
  }
};

void write_row(std::ostream& out, const NumberFormat& fmt, const double* values, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out << (i ? " " : "") << fmt(values[i]);
  out << '\n';
}

fcaf3d_mode mode_from(const std::string& name) {
  fcaf3d_mode mode{};
  check(fcaf3d_parse_mode(name.c_str(), &mode));
  return mode;
}

struct CodecOptions {
  std::string mode = "mobius";
  std::string location;
  std::string input = "-";
  std::string output;
  int precision = 6;
  bool exact = false;
  std::string centerness = "on";
  bool all_targets = false;
};

void add_codec_options(CLI::App* cmd, CodecOptions& o) {
  cmd->add_option("--mode", o.mode, "Parametrization: aabb, naive, sincos, mobius")
      ->check(CLI::IsMember({"aabb", "naive", "sincos", "mobius"}))
      ->capture_default_str();
  cmd->add_option("--location", o.location, "Location x,y,z used when a record carries none");
  cmd->add_option("-i,--input", o.input, "Input file, '-' for stdin")->capture_default_str();
  cmd->add_option("-o,--output", o.output, "Output file (default stdout)");
  cmd->add_option("--precision", o.precision, "Decimal places")->check(CLI::Range(0, 17))->capture_default_str();
  cmd->add_flag("--exact", o.exact, "Shortest round-trip formatting instead of fixed decimals");
}

int run_encode(const CodecOptions& o) {
  const fcaf3d_mode mode = mode_from(o.mode);
  std::optional<std::vector<double>> fixed_loc;
  if (!o.location.empty()) fixed_loc = parse_fixed_list(o.location, "--location", 3);
  const NumberFormat fmt{o.precision, o.exact};
  Output out(o.output);
  for (const NumericLine& line : read_numeric(o.input)) {
    const auto& v = line.values;
    double box[FCAF3D_BOX_STRIDE] = {0, 0, 0, 0, 0, 0, 0};
    double loc[3];
    std::size_t box_fields = 0;
    switch (v.size()) {
      case 6: case 9: box_fields = 6; break;
      case 7: case 10: box_fields = 7; break;
      default:
        input_error(line_error(o.input, line.number, "expected 6, 7, 9 or 10 fields, got " + std::to_string(v.size())));
    }
    std::copy_n(v.begin(), box_fields, box);
    if (v.size() > box_fields) {
      std::copy_n(v.begin() + static_cast<std::ptrdiff_t>(box_fields), 3, loc);
    } else if (fixed_loc) {
      std::copy_n(fixed_loc->begin(), 3, loc);
    } else {
      std::copy_n(box, 3, loc);
    }
    double deltas[FCAF3D_DELTA_STRIDE];
    if (fcaf3d_encode(mode, box, loc, 1, deltas) != FCAF3D_OK) {
      input_error(line_error(o.input, line.number, fcaf3d_last_error()));
    }
    write_row(*out, fmt, deltas, FCAF3D_DELTA_STRIDE);
  }
  out.finish();
  return 0;
}

bool is_target_file(const std::string& path) {
  if (path == "-") return false;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream tokens(line);
    std::string first;
    if (!(tokens >> first) || first.front() == '#') continue;
    std::size_t n = 1;
    for (std::string t; tokens >> t;) ++n;
    return n == 20;
  }
  return false;
}

int decode_targets(const CodecOptions& o) {
  fcaf3d_targets* raw = nullptr;
  check(fcaf3d_targets_load(o.input.c_str(), &raw));
  const Targets targets(raw);
  fcaf3d_records* dets = nullptr;
  check(fcaf3d_targets_to_detections(targets.get(), o.all_targets ? 0 : 1, o.centerness == "on" ? 1 : 0, &dets));
  const Records owned(dets);
  check(fcaf3d_records_save(owned.get(), o.output.empty() ? nullptr : o.output.c_str()));
  return 0;
}

int run_decode(const CodecOptions& o) {
  if (is_target_file(o.input)) return decode_targets(o);
  const fcaf3d_mode mode = mode_from(o.mode);
  std::optional<std::vector<double>> fixed_loc;
  if (!o.location.empty()) fixed_loc = parse_fixed_list(o.location, "--location", 3);
  const NumberFormat fmt{o.precision, o.exact};
  Output out(o.output);
  for (const NumericLine& line : read_numeric(o.input)) {
    const auto& v = line.values;
    double loc[3];
    if (v.size() == 11) {
      std::copy_n(v.begin() + 8, 3, loc);
    } else if (v.size() == 8 && fixed_loc) {
      std::copy_n(fixed_loc->begin(), 3, loc);
    } else if (v.size() == 8) {
      input_error(line_error(o.input, line.number, "no location: pass --location or append x y z"));
    } else {
      input_error(line_error(o.input, line.number, "expected 8 or 11 fields, got " + std::to_string(v.size())));
    }
    double box[FCAF3D_BOX_STRIDE];
    if (fcaf3d_decode(mode, v.data(), loc, 1, box) != FCAF3D_OK) {
      input_error(line_error(o.input, line.number, fcaf3d_last_error()));
    }
    write_row(*out, fmt, box, FCAF3D_BOX_STRIDE);
  }
  out.finish();
  return 0;
}

struct IouOptions {
  std::string a, b, input, output;
  bool rotated = false;
  int precision = 6;
  bool exact = false;
};

std::vector<double> box_from_flag(const std::string& text, const std::string& flag) {
  auto values = parse_list(text, flag);
  if (values.size() == 6) values.push_back(0.0);
  if (values.size() != 7) input_error(flag + ": expected x,y,z,w,l,h[,theta]");
  return values;
}

int run_iou(const IouOptions& o) {
  const NumberFormat fmt{o.precision, o.exact};
  Output out(o.output);
  const auto emit = [&](const double* a, const double* b) {
    double iou = 0.0;
    check(fcaf3d_iou(a, b, 1, o.rotated ? 1 : 0, &iou));
    *out << fmt(iou) << '\n';
  };
  if (!o.input.empty()) {
    for (const NumericLine& line : read_numeric(o.input)) {
      if (line.values.size() != 14) {
        input_error(line_error(o.input, line.number, "expected 14 fields, got " + std::to_string(line.values.size())));
      }
      double iou = 0.0;
      if (fcaf3d_iou(line.values.data(), line.values.data() + 7, 1, o.rotated ? 1 : 0, &iou) != FCAF3D_OK) {
        input_error(line_error(o.input, line.number, fcaf3d_last_error()));
      }
      *out << fmt(iou) << '\n';
    }
  } else {
    if (o.a.empty() || o.b.empty()) input_error("iou: pass --a and --b, or --input");
    emit(box_from_flag(o.a, "--a").data(), box_from_flag(o.b, "--b").data());
  }
  out.finish();
  return 0;
}

struct AssignOptions {
  std::string points, gt, scene, output, mode = "mobius";
  fcaf3d_assign_config cfg{};
};

std::vector<std::size_t> scene_indices(const fcaf3d_records* records, const std::string& scene) {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < fcaf3d_records_size(records); ++i) {
    if (scene == fcaf3d_records_scene_id(records, i)) idx.push_back(i);
  }
  return idx;
}

int run_assign(AssignOptions o) {
  fcaf3d_cloud* raw_cloud = nullptr;
  check(fcaf3d_cloud_load(o.points.c_str(), &raw_cloud));
  const Cloud cloud(raw_cloud);
  const Records all_gt = load_records(o.gt, false);
  const std::size_t n_all = fcaf3d_records_size(all_gt.get());
  if (o.scene.empty()) {
    for (std::size_t i = 0; i < n_all; ++i) {
      const std::string id = fcaf3d_records_scene_id(all_gt.get(), i);
      if (o.scene.empty()) o.scene = id;
      if (id != o.scene) input_error(o.gt + ": several scenes present, choose one with --scene");
    }
    if (o.scene.empty()) o.scene = "scene0";
  }
  const auto idx = scene_indices(all_gt.get(), o.scene);
  fcaf3d_records* raw_gt = nullptr;
  check(fcaf3d_records_subset(all_gt.get(), idx.data(), idx.size(), &raw_gt));
  const Records gt(raw_gt);

  fcaf3d_targets* raw_targets = nullptr;
  check(fcaf3d_assign(cloud.get(), fcaf3d_records_boxes(gt.get()), fcaf3d_records_labels(gt.get()),
                      fcaf3d_records_size(gt.get()), &o.cfg, mode_from(o.mode), o.scene.c_str(), &raw_targets));
  const Targets targets(raw_targets);
  check(fcaf3d_targets_save(targets.get(), o.output.empty() ? nullptr : o.output.c_str()));
  return 0;
}

struct NmsOptions {
  std::string input, output;
  double threshold = 0.5;
};

int run_nms(const NmsOptions& o) {
  const Records dets = load_records(o.input, true);
  std::vector<std::string> scene_order;
  std::map<std::string, std::vector<std::size_t>> by_scene;
  for (std::size_t i = 0; i < fcaf3d_records_size(dets.get()); ++i) {
    const std::string id = fcaf3d_records_scene_id(dets.get(), i);
    auto [it, inserted] = by_scene.try_emplace(id);
    if (inserted) scene_order.push_back(id);
    it->second.push_back(i);
  }
  fcaf3d_records* raw_kept = nullptr;
  check(fcaf3d_records_subset(dets.get(), nullptr, 0, &raw_kept));
  const Records kept(raw_kept);
  for (const std::string& id : scene_order) {
    const auto& idx = by_scene[id];
    fcaf3d_records* raw_scene = nullptr;
    check(fcaf3d_records_subset(dets.get(), idx.data(), idx.size(), &raw_scene));
    const Records scene(raw_scene);
    std::vector<std::size_t> keep(idx.size());
    std::size_t n_keep = 0;
    check(fcaf3d_nms(fcaf3d_records_boxes(scene.get()), fcaf3d_records_scores(scene.get()),
                     fcaf3d_records_labels(scene.get()), idx.size(), o.threshold, keep.data(), &n_keep));
    fcaf3d_records* raw_sel = nullptr;
    check(fcaf3d_records_subset(scene.get(), keep.data(), n_keep, &raw_sel));
    const Records selected(raw_sel);
    check(fcaf3d_records_append(kept.get(), selected.get()));
  }
  check(fcaf3d_records_save(kept.get(), o.output.empty() ? nullptr : o.output.c_str()));
  return 0;
}

struct EvalOptions {
  std::string gt, det, thresholds = "0.25,0.5", pr_dir, output;
  bool rotated = false, axis_aligned = false;
  int num_classes = 0;
};

bool any_rotation(const fcaf3d_records* records) {
  const double* boxes = fcaf3d_records_boxes(records);
  for (std::size_t i = 0; i < fcaf3d_records_size(records); ++i) {
    if (boxes[i * FCAF3D_BOX_STRIDE + 6] != 0.0) return true;
  }
  return false;
}

int run_eval(const EvalOptions& o) {
  const Records gt = load_records(o.gt, false);
  const Records det = load_detections_or_gt(o.det);
  const auto thresholds = parse_list(o.thresholds, "--thresholds");
  const bool rotated = o.rotated || (!o.axis_aligned && (any_rotation(gt.get()) || any_rotation(det.get())));
  fcaf3d_report* raw = nullptr;
  check(fcaf3d_evaluate(det.get(), gt.get(), thresholds.data(), thresholds.size(), rotated ? 1 : 0, o.num_classes,
                        &raw));
  const Report report(raw);
  std::size_t needed = 0;
  check(fcaf3d_report_format(report.get(), nullptr, 0, &needed));
  std::string text(needed, '\0');
  check(fcaf3d_report_format(report.get(), text.data(), text.size(), &needed));
  text.resize(needed - 1);
  Output out(o.output);
  *out << text;
  if (!text.empty() && text.back() != '\n') *out << '\n';
  out.finish();
  if (!o.pr_dir.empty()) check(fcaf3d_report_write_pr_curves(report.get(), o.pr_dir.c_str()));
  return 0;
}

struct GenOptions {
  std::uint64_t seed = 0;
  std::string room = "8,8,3", scene_id = "scene0", points_out, gt_out;
  fcaf3d_scene_params params{};
};

int run_gen(const GenOptions& o) {
  fcaf3d_scene_params params = o.params;
  const auto room = parse_fixed_list(o.room, "--room", 3);
  std::copy(room.begin(), room.end(), params.room);
  fcaf3d_cloud* raw_cloud = nullptr;
  fcaf3d_records* raw_gt = nullptr;
  check(fcaf3d_generate_scene(o.seed, &params, o.scene_id.c_str(), &raw_cloud, &raw_gt));
  const Cloud cloud(raw_cloud);
  const Records gt(raw_gt);
  check(fcaf3d_cloud_save(cloud.get(), o.points_out.c_str()));
  check(fcaf3d_records_save(gt.get(), o.gt_out.c_str()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"FCAF3D geometry, target assignment, NMS and evaluation tools"};
  app.set_version_flag("--version", std::string(fcaf3d_version()));
  app.set_config("--config", "", "TOML/INI file with option defaults");
  app.require_subcommand(1);

  CodecOptions enc_opts;
  auto* enc = app.add_subcommand("encode", "Boxes (x y z w l h [theta] [lx ly lz]) to deltas d1..d8");
  add_codec_options(enc, enc_opts);

  CodecOptions dec_opts;
  auto* dec = app.add_subcommand("decode", "Deltas (d1..d8 [lx ly lz]) or a target file to boxes");
  add_codec_options(dec, dec_opts);
  dec->add_option("--centerness", dec_opts.centerness, "Score decoded targets by centerness")
      ->check(CLI::IsMember({"on", "off"}))
      ->capture_default_str();
  dec->add_flag("--all-targets", dec_opts.all_targets,
                "Emit every target of a target file instead of the most central one per box");

  IouOptions iou_opts;
  auto* iou = app.add_subcommand("iou", "IoU of box pairs");
  iou->add_option("--a", iou_opts.a, "First box x,y,z,w,l,h[,theta]");
  iou->add_option("--b", iou_opts.b, "Second box x,y,z,w,l,h[,theta]");
  iou->add_option("-i,--input", iou_opts.input, "File of 14-field box pairs");
  iou->add_option("-o,--output", iou_opts.output, "Output file (default stdout)");
  iou->add_flag("--rotated", iou_opts.rotated, "Use heading angles (oriented IoU)");
  iou->add_option("--precision", iou_opts.precision, "Decimal places")->check(CLI::Range(0, 17))->capture_default_str();
  iou->add_flag("--exact", iou_opts.exact, "Shortest round-trip formatting");

  AssignOptions as_opts;
  fcaf3d_assign_config_default(&as_opts.cfg);
  auto* as = app.add_subcommand("assign", "Emit training targets for one scene");
  as->add_option("--points", as_opts.points, "Point cloud file")->required();
  as->add_option("--gt", as_opts.gt, "Ground-truth box file")->required();
  as->add_option("--scene", as_opts.scene, "Scene id to select from the GT file");
  as->add_option("--levels", as_opts.cfg.num_levels, "Number of feature levels")->capture_default_str();
  as->add_option("--voxel-size", as_opts.cfg.base_voxel_size, "Input voxel size in meters")->capture_default_str();
  as->add_option("--first-stride", as_opts.cfg.first_stride, "Stride of the first level (1 or 2)")
      ->capture_default_str();
  as->add_option("--n-loc", as_opts.cfg.n_loc, "Minimum covered locations for level selection")->capture_default_str();
  as->add_option("--k", as_opts.cfg.center_sample_k, "Locations kept per box by center sampling")
      ->capture_default_str();
  as->add_option("--n-pts", as_opts.cfg.n_pts, "Subsample the cloud to this many points, 0 keeps all")
      ->capture_default_str();
  as->add_option("--seed", as_opts.cfg.seed, "Subsampling seed")->capture_default_str();
  as->add_option("--mode", as_opts.mode, "Delta parametrization")
      ->check(CLI::IsMember({"aabb", "naive", "sincos", "mobius"}))
      ->capture_default_str();
  as->add_option("-o,--output", as_opts.output, "Output file (default stdout)");

  NmsOptions nms_opts;
  auto* nms = app.add_subcommand("nms", "Per-scene, per-class rotated NMS over a detection file");
  nms->add_option("-i,--input", nms_opts.input, "Detection file")->required();
  nms->add_option("--iou-threshold", nms_opts.threshold, "Suppression IoU")->capture_default_str();
  nms->add_option("-o,--output", nms_opts.output, "Output file (default stdout)");

  EvalOptions ev_opts;
  auto* ev = app.add_subcommand("eval", "Per-class AP and mAP");
  ev->add_option("--gt", ev_opts.gt, "Ground-truth box file")->required();
  ev->add_option("--det", ev_opts.det, "Detection file")->required();
  ev->add_option("--thresholds", ev_opts.thresholds, "Comma-separated IoU thresholds")->capture_default_str();
  auto* rot_flag = ev->add_flag("--rotated", ev_opts.rotated, "Match with oriented IoU");
  ev->add_flag("--axis-aligned", ev_opts.axis_aligned, "Match with axis-aligned IoU, ignoring theta")
      ->excludes(rot_flag);
  ev->add_option("--num-classes", ev_opts.num_classes, "Class count (default: max GT class id + 1)");
  ev->add_option("--pr-dir", ev_opts.pr_dir, "Write per-class precision/recall curves here");
  ev->add_option("-o,--output", ev_opts.output, "Output file (default stdout)");

  GenOptions gen_opts;
  fcaf3d_scene_params_default(&gen_opts.params);
  auto* gen = app.add_subcommand("gen", "Write a synthetic scene");
  gen->add_option("--seed", gen_opts.seed, "Random seed")->capture_default_str();
  gen->add_option("--boxes", gen_opts.params.num_boxes, "Number of objects")->capture_default_str();
  gen->add_option("--points", gen_opts.params.points_per_box, "Surface points per object")->capture_default_str();
  gen->add_option("--clutter", gen_opts.params.clutter_points, "Floor points")->capture_default_str();
  gen->add_option("--classes", gen_opts.params.num_classes, "Number of classes")->capture_default_str();
  gen->add_option("--room", gen_opts.room, "Room extent x,y,z")->capture_default_str();
  gen->add_option("--min-extent", gen_opts.params.min_extent, "Smallest object side")->capture_default_str();
  gen->add_option("--max-extent", gen_opts.params.max_extent, "Largest object side")->capture_default_str();
  gen->add_option("--scene-id", gen_opts.scene_id, "Scene id written to the GT file")->capture_default_str();
  gen->add_flag("--axis-aligned", gen_opts.params.axis_aligned, "Generate theta = 0 boxes only");
  gen->add_option("--points-out", gen_opts.points_out, "Point cloud output file")->required();
  gen->add_option("--gt-out", gen_opts.gt_out, "GT output file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*enc) return run_encode(enc_opts);
    if (*dec) return run_decode(dec_opts);
    if (*iou) return run_iou(iou_opts);
    if (*as) return run_assign(as_opts);
    if (*nms) return run_nms(nms_opts);
    if (*ev) return run_eval(ev_opts);
    if (*gen) return run_gen(gen_opts);
  } catch (const CliFailure& f) {
    std::cerr << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}
