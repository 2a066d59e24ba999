#include "lidepth/bench.hpp"
#include "lidepth/densify.hpp"
#include "lidepth/depth_eval.hpp"
#include "lidepth/errors.hpp"
#include "lidepth/kitti_io.hpp"
#include "lidepth/log.hpp"
#include "lidepth/pipeline.hpp"
#include "lidepth/projection.hpp"
#include "lidepth/sequence.hpp"
#include "lidepth/traj_eval.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace lidepth;

namespace {

// Exit codes (documented in README): 0 ok, 1 runtime failure, 2 bad argument
// value, 3 data parse, 4 shape mismatch, 5 empty evaluation, 6 I/O.
constexpr int kExitFailure = 1;
constexpr int kExitBadArgument = 2;
constexpr int kExitParse = 3;
constexpr int kExitShape = 4;
constexpr int kExitEmptyEvaluation = 5;
constexpr int kExitIo = 6;

struct GlobalOptions {
  std::string camera = "P2";
  std::string kernel = "diamond:5";
  double min_depth = 0.0;
  double max_depth = 80.0;
  std::string rounding = "nearest";

  CameraId camera_id() const { return parse_camera_id(camera); }
  StructuringElement kernel_element() const {
    return StructuringElement::parse(kernel);
  }
  ProjectionConfig projection_config() const {
    ProjectionConfig cfg;
    cfg.min_depth = min_depth;
    cfg.max_depth = max_depth;
    if (rounding == "nearest")
      cfg.rounding = PixelRounding::nearest_ties_away;
    else if (rounding == "floor")
      cfg.rounding = PixelRounding::floor;
    else
      throw ParseError("unknown rounding '" + rounding +
                       "' (expected nearest or floor)");
    return cfg;
  }
};

std::optional<std::pair<int, int>> image_size_from(int width, int height) {
  if (width > 0 && height > 0) return std::make_pair(width, height);
  if (width > 0 || height > 0)
    throw std::invalid_argument("--width and --height must be given together");
  return std::nullopt;
}

// "100..800" (step 100) or a comma list like "100,250,400".
std::vector<double> parse_lengths(const std::string& spec) {
  std::vector<double> lengths;
  const auto dots = spec.find("..");
  if (dots != std::string::npos) {
    const double from = std::stod(spec.substr(0, dots));
    const double to = std::stod(spec.substr(dots + 2));
    if (!(from > 0.0) || to < from)
      throw std::invalid_argument("bad --lengths range '" + spec + "'");
    for (double v = from; v <= to + 1e-9; v += 100.0) lengths.push_back(v);
    return lengths;
  }
  std::size_t pos = 0;
  while (pos <= spec.size()) {
    const auto comma = spec.find(',', pos);
    const std::string token =
        spec.substr(pos, comma == std::string::npos ? spec.size() - pos
                                                    : comma - pos);
    if (!token.empty()) lengths.push_back(std::stod(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (lengths.empty())
    throw std::invalid_argument("empty --lengths spec '" + spec + "'");
  return lengths;
}

int run_project(const GlobalOptions& global, const std::string& scan,
                const std::string& calib_path, const std::string& out,
                int width, int height, const std::string& image) {
  std::pair<int, int> size{0, 0};
  if (!image.empty())
    size = read_png_dimensions(image);
  else if (auto s = image_size_from(width, height))
    size = *s;
  else
    throw std::invalid_argument(
        "project needs --width/--height or --image for map dimensions");

  const CalibrationSet calib =
      load_kitti_calib(calib_path, size.first, size.second, global.camera_id());
  const LidarPointCloud cloud = load_velodyne_bin(scan);
  const DepthMap map = project(cloud, calib, global.projection_config());
  write_depth_png(map, out);
  std::printf("wrote %s: %dx%d, %zu of %zu px valid, sparsity %.4f\n",
              out.c_str(), map.width(), map.height(), map.valid_count(),
              map.pixel_count(), sparsity(map));
  return 0;
}

int run_densify(const GlobalOptions& global, const std::string& in,
                const std::string& out) {
  const StructuringElement kernel = global.kernel_element();
  const DepthMap sparse = read_depth_png(in);
  const DepthMap dense = inverse_dilate(sparse, kernel);
  write_depth_png(dense, out);
  std::printf("wrote %s: kernel %s, sparsity %.4f -> %.4f\n", out.c_str(),
              kernel.name().c_str(), sparsity(sparse), sparsity(dense));
  return 0;
}

int run_pipeline_cmd(const GlobalOptions& global, const std::string& sequence,
                     const std::string& out, int workers, long long frames,
                     int width, int height) {
  PipelineConfig cfg;
  cfg.sequence_dir = sequence;
  cfg.output_dir = out;
  cfg.kernel = global.kernel_element();
  cfg.camera = global.camera_id();
  cfg.projection = global.projection_config();
  cfg.workers = workers;
  cfg.image_size = image_size_from(width, height);
  if (frames >= 0) cfg.frame_limit = static_cast<std::size_t>(frames);

  const PipelineSummary summary = run_pipeline(cfg);
  std::printf("frames processed:     %zu\n", summary.frames_processed);
  std::printf("frames failed:        %zu\n", summary.frames_failed);
  std::printf("mean sparsity before: %.4f\n", summary.mean_sparsity_before);
  std::printf("mean sparsity after:  %.4f\n", summary.mean_sparsity_after);
  for (const std::string& failure : summary.failures)
    std::fprintf(stderr, "failed: %s\n", failure.c_str());
  return summary.frames_failed == 0 ? 0 : kExitFailure;
}

std::vector<std::pair<std::string, fs::path>> depth_inputs(const fs::path& p) {
  std::vector<std::pair<std::string, fs::path>> files;
  if (fs::is_directory(p)) {
    for (const auto& entry : fs::directory_iterator(p))
      if (entry.is_regular_file() && entry.path().extension() == ".png")
        files.emplace_back(entry.path().stem().string(), entry.path());
    std::sort(files.begin(), files.end());
  } else {
    files.emplace_back(p.stem().string(), p);
  }
  return files;
}

int run_eval_depth(const std::string& pred, const std::string& gt,
                   double crop_top, const std::string& csv) {
  const EvalCrop crop{crop_top};
  const auto pred_files = depth_inputs(pred);
  std::vector<std::pair<std::string, fs::path>> pairs;  // (frame, gt path)
  if (fs::is_directory(gt)) {
    for (const auto& [frame, path] : pred_files) {
      const fs::path candidate = fs::path(gt) / (frame + ".png");
      if (fs::exists(candidate))
        pairs.emplace_back(frame, candidate);
      else
        log::warn("eval-depth: no ground truth for frame " + frame);
    }
  } else {
    if (pred_files.size() != 1)
      throw ShapeError("eval-depth: single gt file but multiple predictions");
    pairs.emplace_back(pred_files.front().first, gt);
  }
  if (pairs.empty())
    throw EmptyEvaluationError("eval-depth: no frame has ground truth");

  std::ofstream csv_out;
  if (!csv.empty()) {
    csv_out.open(csv, std::ios::trunc);
    if (!csv_out) throw IoError("cannot open for writing: " + csv);
    csv_out << "frame_id,mae,rmse,evaluated_pixels,gt_coverage,pred_sparsity\n";
  }

  DepthErrorAccumulator acc;
  std::size_t empty_frames = 0;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [frame, gt_path] = pairs[i];
    const DepthMap pred_map = read_depth_png(pred_files[i].second);
    const DepthMap gt_map = read_depth_png(gt_path);
    DepthErrorReport report;
    try {
      report = eval_depth(pred_map, gt_map, crop);
    } catch (const EmptyEvaluationError&) {
      ++empty_frames;
      log::warn("eval-depth: frame " + frame + " has no evaluable pixel");
      continue;
    }
    acc.add(report);
    if (csv_out.is_open()) {
      char row[256];
      std::snprintf(row, sizeof(row), "%s,%.6f,%.6f,%zu,%.6f,%.6f\n",
                    frame.c_str(), report.mae, report.rmse,
                    report.evaluated_pixels, report.gt_coverage,
                    report.pred_sparsity);
      csv_out << row;
    }
    if (pairs.size() > 1)
      std::printf("%s: mae %.3f m, rmse %.3f m, pixels %zu\n", frame.c_str(),
                  report.mae, report.rmse, report.evaluated_pixels);
  }
  if (acc.frames() == 0)
    throw EmptyEvaluationError("eval-depth: no evaluable pixels in any frame");

  std::printf("frames evaluated:    %zu\n", acc.frames());
  if (empty_frames > 0) std::printf("frames skipped:      %zu\n", empty_frames);
  std::printf("evaluated pixels:    %zu\n", acc.evaluated_pixels());
  std::printf("mae:                 %.3f m\n", acc.pooled_mae());
  std::printf("rmse:                %.3f m\n", acc.pooled_rmse());
  if (acc.frames() > 1) {
    std::printf("per-frame mean mae:  %.3f m\n", acc.mean_frame_mae());
    std::printf("per-frame mean rmse: %.3f m\n", acc.mean_frame_rmse());
  }
  return 0;
}

int run_eval_traj(const std::string& est_path, const std::string& gt_path,
                  const std::string& lengths_spec, int step,
                  const std::string& plot, const std::string& csv) {
  const Trajectory est = load_trajectory(est_path);
  const Trajectory gt = load_trajectory(gt_path);
  const std::vector<double> lengths = parse_lengths(lengths_spec);
  const OdometryErrorReport report = eval_odometry(est, gt, lengths, step);

  std::printf("segments evaluated:      %zu\n", report.segment_total);
  std::printf("avg translational error: %.3f %%\n", report.avg_t_err_percent);
  std::printf("avg rotational error:    %.3f °/100 m\n",
              report.avg_r_err_deg_per_100m);
  for (const auto& [len, stats] : report.per_length)
    std::printf("  %4.0f m: t %.3f %%  r %.3f °/100 m  (%zu segments)\n", len,
                stats.t_err_percent, stats.r_err_deg_per_100m, stats.segments);

  if (!csv.empty()) {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + csv);
    out << "length,t_err_percent,r_err_deg_per_100m,segments\n";
    for (const auto& [len, stats] : report.per_length) {
      char row[160];
      std::snprintf(row, sizeof(row), "%.0f,%.9f,%.9f,%zu\n", len,
                    stats.t_err_percent, stats.r_err_deg_per_100m,
                    stats.segments);
      out << row;
    }
  }
  if (!plot.empty()) plot_trajectory(est, gt, plot);
  return 0;
}

int run_bench(const GlobalOptions& global, const std::string& sequence,
              long long frames, int warmup, const std::string& csv, int width,
              int height) {
  BenchConfig cfg;
  cfg.kernel = global.kernel_element();
  cfg.camera = global.camera_id();
  cfg.projection = global.projection_config();
  cfg.warmup = warmup;
  cfg.image_size = image_size_from(width, height);
  if (frames >= 0) cfg.frame_limit = static_cast<std::size_t>(frames);

  std::vector<FrameTiming> rows;
  const RuntimeStats stats = bench_sequence(sequence, cfg, &rows);

  std::printf("%-12s %10s %10s %10s\n", "stage", "min", "median", "max");
  const auto line = [](const char* name, const StageStats& s) {
    std::printf("%-12s %10.3f %10.3f %10.3f   ms over %zu samples\n", name,
                s.min_ms, s.median_ms, s.max_ms, s.samples);
  };
  line("projection", stats.projection);
  line("upsampling", stats.upsampling);
  line("total", stats.total);
  if (stats.skipped_frames > 0)
    std::printf("skipped frames: %zu\n", stats.skipped_frames);

  if (!csv.empty()) {
    std::ofstream out(csv, std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + csv);
    out << "frame,projection_ms,upsampling_ms,total_ms\n";
    for (const FrameTiming& row : rows) {
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f,%.6f\n", row.frame.c_str(),
                    row.projection_ms, row.upsampling_ms, row.total_ms);
      out << buf;
    }
  }
  return stats.output_mismatches == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LiDAR depth-map toolkit: projection, densification and "
               "evaluation for RGB-D style SLAM consumption"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--camera", global.camera,
                 "Projection matrix to use (P2 color, P0 gray)")
      ->default_val("P2");
  app.add_option("--kernel", global.kernel,
                 "Structuring element, name:size (diamond, full, cross)")
      ->default_val("diamond:5");
  app.add_option("--min-depth", global.min_depth,
                 "Exclusive lower depth bound in meters")
      ->default_val(0.0);
  app.add_option("--max-depth", global.max_depth,
                 "Inclusive upper depth bound in meters")
      ->default_val(80.0);
  app.add_option("--rounding", global.rounding,
                 "Pixel assignment: nearest (ties away from zero) or floor")
      ->default_val("nearest");

  auto* project_cmd =
      app.add_subcommand("project", "Project one scan to a sparse depth PNG");
  std::string scan, calib_path, out_path, image_path;
  int width = 0, height = 0;
  project_cmd->add_option("--scan", scan, "velodyne .bin scan")->required();
  project_cmd->add_option("--calib", calib_path, "calib.txt")->required();
  project_cmd->add_option("--out", out_path, "output PNG")->required();
  project_cmd->add_option("--width", width, "image width in px");
  project_cmd->add_option("--height", height, "image height in px");
  project_cmd->add_option("--image", image_path,
                          "camera PNG to take dimensions from");

  auto* densify_cmd = app.add_subcommand(
      "densify", "Inverse-dilate a sparse depth PNG into a denser one");
  std::string densify_in, densify_out;
  densify_cmd->add_option("--in", densify_in, "sparse depth PNG")->required();
  densify_cmd->add_option("--out", densify_out, "output PNG")->required();

  auto* pipeline_cmd = app.add_subcommand(
      "pipeline", "Batch depth-map generation over a KITTI sequence");
  std::string sequence_dir, pipeline_out;
  int workers = 1;
  long long frames = -1;
  int p_width = 0, p_height = 0;
  pipeline_cmd->add_option("--sequence", sequence_dir, "sequence directory")
      ->required();
  pipeline_cmd->add_option("--out", pipeline_out, "output directory")
      ->required();
  pipeline_cmd->add_option("--workers", workers, "parallel frame workers")
      ->default_val(1);
  pipeline_cmd->add_option("--frames", frames, "process only the first N frames");
  pipeline_cmd->add_option("--width", p_width, "depth map width in px");
  pipeline_cmd->add_option("--height", p_height, "depth map height in px");

  auto* eval_depth_cmd = app.add_subcommand(
      "eval-depth", "Score predicted depth maps against ground truth");
  std::string pred, gt, eval_csv;
  double crop_top = 0.0;
  eval_depth_cmd->add_option("--pred", pred, "prediction PNG or directory")
      ->required();
  eval_depth_cmd->add_option("--gt", gt, "ground-truth PNG or directory")
      ->required();
  eval_depth_cmd
      ->add_option("--crop-top", crop_top,
                   "fraction of top rows to ignore (0.30 for learned maps)")
      ->default_val(0.0);
  eval_depth_cmd->add_option("--csv", eval_csv, "per-frame CSV output");

  auto* eval_traj_cmd = app.add_subcommand(
      "eval-traj", "KITTI odometry drift errors for an estimated trajectory");
  std::string est_path, gt_traj_path, lengths_spec = "100..800", plot_path,
              traj_csv;
  int step = 10;
  eval_traj_cmd->add_option("--est", est_path, "estimated poses file")
      ->required();
  eval_traj_cmd->add_option("--gt", gt_traj_path, "ground-truth poses file")
      ->required();
  eval_traj_cmd
      ->add_option("--lengths", lengths_spec,
                   "segment lengths, 'A..B' (step 100) or comma list")
      ->default_val("100..800");
  eval_traj_cmd->add_option("--step", step, "start-frame stride")
      ->default_val(10);
  eval_traj_cmd->add_option("--plot", plot_path, "write top-down SVG plot");
  eval_traj_cmd->add_option("--csv", traj_csv, "per-length CSV output");

  auto* bench_cmd = app.add_subcommand(
      "bench", "Per-frame projection/upsampling latency over a sequence");
  std::string bench_sequence_dir, bench_csv;
  long long bench_frames = -1;
  int bench_warmup = 5;
  int b_width = 0, b_height = 0;
  bench_cmd->add_option("--sequence", bench_sequence_dir, "sequence directory")
      ->required();
  bench_cmd->add_option("--frames", bench_frames, "bench only the first N frames");
  bench_cmd->add_option("--warmup", bench_warmup, "untimed warmup frames")
      ->default_val(5);
  bench_cmd->add_option("--csv", bench_csv, "per-frame CSV output");
  bench_cmd->add_option("--width", b_width, "depth map width in px");
  bench_cmd->add_option("--height", b_height, "depth map height in px");

  CLI11_PARSE(app, argc, argv);

  try {
    if (project_cmd->parsed())
      return run_project(global, scan, calib_path, out_path, width, height,
                         image_path);
    if (densify_cmd->parsed()) return run_densify(global, densify_in, densify_out);
    if (pipeline_cmd->parsed())
      return run_pipeline_cmd(global, sequence_dir, pipeline_out, workers,
                              frames, p_width, p_height);
    if (eval_depth_cmd->parsed())
      return run_eval_depth(pred, gt, crop_top, eval_csv);
    if (eval_traj_cmd->parsed())
      return run_eval_traj(est_path, gt_traj_path, lengths_spec, step,
                           plot_path, traj_csv);
    if (bench_cmd->parsed())
      return run_bench(global, bench_sequence_dir, bench_frames, bench_warmup,
                       bench_csv, b_width, b_height);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitParse;
  } catch (const ShapeError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitShape;
  } catch (const EmptyEvaluationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitEmptyEvaluation;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitBadArgument;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return 0;
}
