#include "lidepth/projection.hpp"

#include <cmath>
#include <stdexcept>

namespace lidepth {

namespace {

// Fixed left-to-right evaluation order; keeps results reproducible across
// equivalent formulations.
inline void transform_point(const Eigen::Matrix4d& t, double x, double y,
                            double z, double out[3]) {
  out[0] = t(0, 0) * x + t(0, 1) * y + t(0, 2) * z + t(0, 3);
  out[1] = t(1, 0) * x + t(1, 1) * y + t(1, 2) * z + t(1, 3);
  out[2] = t(2, 0) * x + t(2, 1) * y + t(2, 2) * z + t(2, 3);
}

}  // namespace

DepthMap project(const LidarPointCloud& cloud, const CalibrationSet& calib,
                 const ProjectionConfig& cfg) {
  if (!(cfg.min_depth >= 0.0) || !(cfg.min_depth < cfg.max_depth))
    throw std::invalid_argument(
        "ProjectionConfig: need 0 <= min_depth < max_depth");
  calib.validate();

  const int w = calib.image_width;
  const int h = calib.image_height;
  DepthMap map(w, h);

  const Eigen::Matrix4d& t = calib.lidar_to_cam;
  const Eigen::Matrix<double, 3, 4>& p = calib.projection;

  for (const LidarPoint& pt : cloud.points) {
    const double lx = pt.x;
    const double ly = pt.y;
    const double lz = pt.z;
    double cam[3];
    transform_point(t, lx, ly, lz, cam);
    const double z = cam[2];
    if (z <= cfg.min_depth || z > cfg.max_depth) continue;

    const double u_h = p(0, 0) * cam[0] + p(0, 1) * cam[1] + p(0, 2) * cam[2] + p(0, 3);
    const double v_h = p(1, 0) * cam[0] + p(1, 1) * cam[1] + p(1, 2) * cam[2] + p(1, 3);
    const double w_h = p(2, 0) * cam[0] + p(2, 1) * cam[1] + p(2, 2) * cam[2] + p(2, 3);
    if (!(w_h > 0.0)) continue;

    const double u = u_h / w_h;
    const double v = v_h / w_h;
    // Away-from-image coordinates cannot round into bounds; skipping them
    // early keeps lround inside its defined range.
    if (u <= -1.0 || u >= static_cast<double>(w) || v <= -1.0 ||
        v >= static_cast<double>(h))
      continue;

    int px = 0;
    int py = 0;
    if (cfg.rounding == PixelRounding::nearest_ties_away) {
      px = static_cast<int>(std::lround(u));
      py = static_cast<int>(std::lround(v));
    } else {
      px = static_cast<int>(std::floor(u));
      py = static_cast<int>(std::floor(v));
    }
    if (px < 0 || px >= w || py < 0 || py >= h) continue;

    const float depth = static_cast<float>(z);
    if (!(depth > 0.0f)) continue;
    if (!map.valid(px, py) || depth < map.depth(px, py)) map.set(px, py, depth);
  }
  return map;
}

}  // namespace lidepth
