#include "lidepth/traj_eval.hpp"

#include "lidepth/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace lidepth {

namespace {

Eigen::Matrix4d rigid_inverse(const Eigen::Matrix4d& pose) {
  Eigen::Matrix4d inv = Eigen::Matrix4d::Identity();
  const Eigen::Matrix3d rt = pose.topLeftCorner<3, 3>().transpose();
  inv.topLeftCorner<3, 3>() = rt;
  inv.topRightCorner<3, 1>() = -rt * pose.topRightCorner<3, 1>();
  return inv;
}

std::vector<double> cumulative_gt_distance(const Trajectory& gt) {
  std::vector<double> dist(gt.size(), 0.0);
  for (std::size_t i = 1; i < gt.size(); ++i)
    dist[i] = dist[i - 1] + (gt.poses[i].topRightCorner<3, 1>() -
                             gt.poses[i - 1].topRightCorner<3, 1>())
                                .norm();
  return dist;
}

// First frame j >= first with dist(j) - dist(first) >= len, or -1.
int end_frame_for_length(const std::vector<double>& dist, int first,
                         double len) {
  for (std::size_t j = static_cast<std::size_t>(first); j < dist.size(); ++j)
    if (dist[j] - dist[static_cast<std::size_t>(first)] >= len)
      return static_cast<int>(j);
  return -1;
}

constexpr double kRadPerMeterToDegPer100m = 180.0 / std::numbers::pi * 100.0;

}  // namespace

std::vector<double> default_segment_lengths() {
  return {100.0, 200.0, 300.0, 400.0, 500.0, 600.0, 700.0, 800.0};
}

double translation_error_m(const Eigen::Matrix4d& pose_error) {
  return pose_error.topRightCorner<3, 1>().norm();
}

double rotation_error_rad(const Eigen::Matrix4d& pose_error) {
  const double tr = pose_error.topLeftCorner<3, 3>().trace();
  const double c = std::clamp(0.5 * (tr - 1.0), -1.0, 1.0);
  return std::acos(c);
}

OdometryErrorReport eval_odometry(const Trajectory& est, const Trajectory& gt,
                                  std::span<const double> lengths,
                                  int frame_step) {
  if (est.size() != gt.size())
    throw ShapeError("eval_odometry: est has " + std::to_string(est.size()) +
                     " poses, gt has " + std::to_string(gt.size()));
  if (frame_step < 1)
    throw std::invalid_argument("eval_odometry: frame_step must be >= 1");

  const std::vector<double> default_lengths = default_segment_lengths();
  if (lengths.empty()) lengths = default_lengths;
  for (const double len : lengths)
    if (!(len > 0.0))
      throw std::invalid_argument("eval_odometry: segment lengths must be > 0");

  if (gt.size() < 2)
    throw EmptyEvaluationError("eval_odometry: need at least 2 poses");

  const std::vector<double> dist = cumulative_gt_distance(gt);

  struct Accum {
    double t_sum = 0.0;  // ratio (meters error per meter traveled)
    double r_sum = 0.0;  // rad per meter
    std::size_t n = 0;
  };
  std::map<double, Accum> per_length;
  Accum all;

  const int n_frames = static_cast<int>(gt.size());
  for (int first = 0; first < n_frames; first += frame_step) {
    for (const double len : lengths) {
      const int last = end_frame_for_length(dist, first, len);
      if (last < 0) continue;
      const double dist_l = dist[static_cast<std::size_t>(last)] -
                            dist[static_cast<std::size_t>(first)];
      if (!(dist_l > 0.0)) continue;

      const Eigen::Matrix4d delta_gt =
          rigid_inverse(gt.poses[static_cast<std::size_t>(first)]) *
          gt.poses[static_cast<std::size_t>(last)];
      const Eigen::Matrix4d delta_est =
          rigid_inverse(est.poses[static_cast<std::size_t>(first)]) *
          est.poses[static_cast<std::size_t>(last)];
      const Eigen::Matrix4d pose_error = rigid_inverse(delta_est) * delta_gt;

      const double t_err = translation_error_m(pose_error) / dist_l;
      const double r_err = rotation_error_rad(pose_error) / dist_l;
      Accum& acc = per_length[len];
      acc.t_sum += t_err;
      acc.r_sum += r_err;
      ++acc.n;
      all.t_sum += t_err;
      all.r_sum += r_err;
      ++all.n;
    }
  }
  if (all.n == 0)
    throw EmptyEvaluationError(
        "eval_odometry: trajectory shorter than the smallest segment length");

  OdometryErrorReport report;
  for (const auto& [len, acc] : per_length) {
    SegmentErrorStats stats;
    stats.segments = acc.n;
    stats.t_err_percent = acc.t_sum / static_cast<double>(acc.n) * 100.0;
    stats.r_err_deg_per_100m =
        acc.r_sum / static_cast<double>(acc.n) * kRadPerMeterToDegPer100m;
    report.per_length.emplace(len, stats);
  }
  report.segment_total = all.n;
  report.avg_t_err_percent = all.t_sum / static_cast<double>(all.n) * 100.0;
  report.avg_r_err_deg_per_100m =
      all.r_sum / static_cast<double>(all.n) * kRadPerMeterToDegPer100m;
  return report;
}

namespace {

constexpr double kCanvasW = 800.0;
constexpr double kCanvasH = 600.0;
constexpr double kMargin = 60.0;

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_m(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

}  // namespace

void plot_trajectory(const Trajectory& est, const Trajectory& gt,
                     const std::filesystem::path& path) {
  if (est.empty() || gt.empty())
    throw EmptyEvaluationError("plot_trajectory: trajectories must be non-empty");

  double min_x = std::numeric_limits<double>::infinity();
  double max_x = -std::numeric_limits<double>::infinity();
  double min_z = std::numeric_limits<double>::infinity();
  double max_z = -std::numeric_limits<double>::infinity();
  const auto expand = [&](const Trajectory& t) {
    for (const Eigen::Matrix4d& pose : t.poses) {
      min_x = std::min(min_x, pose(0, 3));
      max_x = std::max(max_x, pose(0, 3));
      min_z = std::min(min_z, pose(2, 3));
      max_z = std::max(max_z, pose(2, 3));
    }
  };
  expand(gt);
  expand(est);

  const double inner_w = kCanvasW - 2.0 * kMargin;
  const double inner_h = kCanvasH - 2.0 * kMargin;
  const double range_x = max_x - min_x;
  const double range_z = max_z - min_z;
  double scale = 1.0;
  if (range_x > 0.0 || range_z > 0.0)
    scale = std::min(range_x > 0.0 ? inner_w / range_x : std::numeric_limits<double>::infinity(),
                     range_z > 0.0 ? inner_h / range_z : std::numeric_limits<double>::infinity());
  const double draw_w = range_x * scale;
  const double draw_h = range_z * scale;
  const double org_x = kMargin + (inner_w - draw_w) / 2.0;
  const double org_y = kMargin + (inner_h - draw_h) / 2.0;
  const auto px = [&](double x) { return org_x + (x - min_x) * scale; };
  const auto py = [&](double z) { return org_y + (max_z - z) * scale; };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(kCanvasW) +
         "\" height=\"" + fmt(kCanvasH) + "\" viewBox=\"0 0 " + fmt(kCanvasW) +
         " " + fmt(kCanvasH) + "\">\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fmt(kCanvasW) + "\" height=\"" +
         fmt(kCanvasH) + "\" fill=\"#ffffff\"/>\n";

  // frame around the drawing area, ticks labeled in meters
  svg += "<rect x=\"" + fmt(org_x) + "\" y=\"" + fmt(org_y) + "\" width=\"" +
         fmt(std::max(draw_w, 1.0)) + "\" height=\"" + fmt(std::max(draw_h, 1.0)) +
         "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
  const auto tick_label = [&](double cx, double cy, const std::string& text,
                              const char* anchor) {
    svg += "<text x=\"" + fmt(cx) + "\" y=\"" + fmt(cy) +
           "\" font-size=\"12\" font-family=\"sans-serif\" text-anchor=\"" +
           anchor + "\" fill=\"#333333\">" + text + "</text>\n";
  };
  tick_label(px(min_x), kCanvasH - kMargin / 2.0, fmt_m(min_x), "middle");
  if (range_x > 0.0)
    tick_label(px(max_x), kCanvasH - kMargin / 2.0, fmt_m(max_x), "middle");
  tick_label(org_x - 8.0, py(min_z), fmt_m(min_z), "end");
  if (range_z > 0.0) tick_label(org_x - 8.0, py(max_z), fmt_m(max_z), "end");
  tick_label(kCanvasW / 2.0, kCanvasH - 12.0, "x [m]", "middle");
  tick_label(16.0, kCanvasH / 2.0, "z [m]", "middle");

  const auto emit = [&](const Trajectory& t, const char* color) {
    if (t.size() == 1) {
      svg += std::string("<circle cx=\"") + fmt(px(t.poses[0](0, 3))) +
             "\" cy=\"" + fmt(py(t.poses[0](2, 3))) + "\" r=\"4\" fill=\"" +
             color + "\"/>\n";
      return;
    }
    svg += std::string("<polyline fill=\"none\" stroke=\"") + color +
           "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (const Eigen::Matrix4d& pose : t.poses) {
      if (!first) svg += ' ';
      first = false;
      svg += fmt(px(pose(0, 3))) + "," + fmt(py(pose(2, 3)));
    }
    svg += "\"/>\n";
  };
  emit(gt, "#555555");
  emit(est, "#d62728");

  // legend
  svg += "<line x1=\"" + fmt(kMargin) + "\" y1=\"20\" x2=\"" +
         fmt(kMargin + 24.0) + "\" y2=\"20\" stroke=\"#555555\" stroke-width=\"1.5\"/>\n";
  tick_label(kMargin + 30.0, 24.0, "ground truth", "start");
  svg += "<line x1=\"" + fmt(kMargin + 140.0) + "\" y1=\"20\" x2=\"" +
         fmt(kMargin + 164.0) + "\" y2=\"20\" stroke=\"#d62728\" stroke-width=\"1.5\"/>\n";
  tick_label(kMargin + 170.0, 24.0, "estimate", "start");
  svg += "</svg>\n";

  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out << svg;
  if (!out) throw IoError("failed to write plot: " + path.string());
}

}  // namespace lidepth
