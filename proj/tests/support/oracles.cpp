#include "oracles.hpp"

#include <cmath>
#include <vector>

namespace testsupport {

using lidepth::CalibrationSet;
using lidepth::DepthMap;
using lidepth::LidarPoint;
using lidepth::LidarPointCloud;
using lidepth::PixelRounding;
using lidepth::ProjectionConfig;
using lidepth::StructuringElement;

DepthMap oracle_inverse_dilate(const DepthMap& map,
                               const StructuringElement& kernel) {
  const int w = map.width();
  const int h = map.height();
  DepthMap out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      bool any = false;
      float best = 0.0f;
      // Gather over the reflected kernel: source q contributes to p when
      // p = q + offset, i.e. q = p - offset.
      for (const auto& [dy, dx] : kernel.offsets()) {
        const int sy = y - dy;
        const int sx = x - dx;
        if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
        if (!map.valid(sx, sy)) continue;
        const float d = map.depth(sx, sy);
        if (!any || d < best) {
          any = true;
          best = d;
        }
      }
      if (any) out.set(x, y, best);
    }
  }
  return out;
}

std::vector<std::uint8_t> oracle_mask_dilate(const DepthMap& map,
                                             const StructuringElement& kernel) {
  const int w = map.width();
  const int h = map.height();
  std::vector<std::uint8_t> out(static_cast<std::size_t>(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      for (const auto& [dy, dx] : kernel.offsets()) {
        const int sy = y - dy;
        const int sx = x - dx;
        if (sx < 0 || sx >= w || sy < 0 || sy >= h) continue;
        if (map.valid(sx, sy)) {
          out[static_cast<std::size_t>(y) * w + x] = 1;
          break;
        }
      }
  return out;
}

namespace {

struct ProjectedPoint {
  int px;
  int py;
  float depth;
};

}  // namespace

DepthMap oracle_project(const LidarPointCloud& cloud,
                        const CalibrationSet& calib,
                        const ProjectionConfig& cfg) {
  const int w = calib.image_width;
  const int h = calib.image_height;
  const Eigen::Matrix4d& t = calib.lidar_to_cam;
  const Eigen::Matrix<double, 3, 4>& p = calib.projection;

  std::vector<ProjectedPoint> hits;
  hits.reserve(cloud.points.size());
  for (const LidarPoint& pt : cloud.points) {
    const double x = pt.x;
    const double y = pt.y;
    const double z = pt.z;
    const double cx = t(0, 0) * x + t(0, 1) * y + t(0, 2) * z + t(0, 3);
    const double cy = t(1, 0) * x + t(1, 1) * y + t(1, 2) * z + t(1, 3);
    const double cz = t(2, 0) * x + t(2, 1) * y + t(2, 2) * z + t(2, 3);
    if (cz <= cfg.min_depth || cz > cfg.max_depth) continue;

    const double uh = p(0, 0) * cx + p(0, 1) * cy + p(0, 2) * cz + p(0, 3);
    const double vh = p(1, 0) * cx + p(1, 1) * cy + p(1, 2) * cz + p(1, 3);
    const double wh = p(2, 0) * cx + p(2, 1) * cy + p(2, 2) * cz + p(2, 3);
    if (!(wh > 0.0)) continue;
    const double u = uh / wh;
    const double v = vh / wh;
    if (u <= -1.0 || u >= w || v <= -1.0 || v >= h) continue;

    int px;
    int py;
    if (cfg.rounding == PixelRounding::nearest_ties_away) {
      px = static_cast<int>(std::lround(u));
      py = static_cast<int>(std::lround(v));
    } else {
      px = static_cast<int>(std::floor(u));
      py = static_cast<int>(std::floor(v));
    }
    if (px < 0 || px >= w || py < 0 || py >= h) continue;
    const float depth = static_cast<float>(cz);
    if (!(depth > 0.0f)) continue;
    hits.push_back({px, py, depth});
  }

  DepthMap out(w, h);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      bool any = false;
      float best = 0.0f;
      for (const ProjectedPoint& hit : hits) {
        if (hit.px != x || hit.py != y) continue;
        if (!any || hit.depth < best) {
          any = true;
          best = hit.depth;
        }
      }
      if (any) out.set(x, y, best);
    }
  return out;
}

}  // namespace testsupport
