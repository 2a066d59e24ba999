#pragma once

#include "lidepth/calibration.hpp"
#include "lidepth/depth_map.hpp"
#include "lidepth/point_cloud.hpp"

namespace lidepth {

enum class PixelRounding {
  // round(u), round(v) with ties away from zero (default).
  nearest_ties_away,
  // floor(u), floor(v); some projection codes bin pixels this way.
  floor,
};

struct ProjectionConfig {
  double min_depth = 0.0;   // exclusive lower bound on camera-frame z
  double max_depth = 80.0;  // inclusive upper bound
  PixelRounding rounding = PixelRounding::nearest_ties_away;
};

// Rasterizes a LiDAR sweep into a sparse depth map:
//   p_cam = lidar_to_cam * p, keep min_depth < z_cam <= max_depth,
//   (u,v,w) = projection * p_cam, pixel = round(u/w), round(v/w).
// When several points land on one pixel the smallest z_cam wins. The stored
// value is z_cam (camera-frame forward coordinate, not Euclidean range).
DepthMap project(const LidarPointCloud& cloud, const CalibrationSet& calib,
                 const ProjectionConfig& cfg = {});

}  // namespace lidepth
