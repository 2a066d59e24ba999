#pragma once

#include "lidepth/trajectory.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <filesystem>
#include <map>
#include <span>
#include <vector>

namespace lidepth {

struct SegmentErrorStats {
  double t_err_percent = 0.0;
  double r_err_deg_per_100m = 0.0;
  std::size_t segments = 0;
};

// KITTI-odometry-style drift errors: translation as % of segment length,
// rotation in degrees per 100 m, averaged over all evaluated segments with
// equal weight.
struct OdometryErrorReport {
  std::map<double, SegmentErrorStats> per_length;
  double avg_t_err_percent = 0.0;
  double avg_r_err_deg_per_100m = 0.0;
  std::size_t segment_total = 0;
};

std::vector<double> default_segment_lengths();  // 100, 200, ..., 800

// For every start frame i (stride frame_step) and every length L, the end
// frame j is the first with gt path distance dist(j) - dist(i) >= L. With
// E = (est_i^-1 est_j)^-1 (gt_i^-1 gt_j), the segment contributes
//   t_err = |translation(E)| / dist_L, r_err = angle(rotation(E)) / dist_L,
// where dist_L is the actual gt distance of the segment. No alignment pass:
// the metric cancels the global frame of est by construction.
// Throws ShapeError if est and gt differ in length, EmptyEvaluationError if
// no segment is evaluable.
OdometryErrorReport eval_odometry(
    const Trajectory& est, const Trajectory& gt,
    std::span<const double> lengths = {}, int frame_step = 10);

// Per-segment error kernels.
double translation_error_m(const Eigen::Matrix4d& pose_error);
// acos argument clamped to [-1, 1]; numerically imperfect rotations never
// produce NaN.
double rotation_error_rad(const Eigen::Matrix4d& pose_error);

// Top-down x-z SVG plot of both trajectories with legend and meter-scaled
// axes. Byte output is deterministic for fixed inputs.
void plot_trajectory(const Trajectory& est, const Trajectory& gt,
                     const std::filesystem::path& path);

}  // namespace lidepth
