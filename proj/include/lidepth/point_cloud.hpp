#pragma once

#include <cstddef>
#include <vector>

namespace lidepth {

// One LiDAR return in the sensor frame. Matches the KITTI velodyne record
// layout (4 x float32) so clouds round-trip bit-exactly through .bin files.
struct LidarPoint {
  float x = 0.0f;
  float y = 0.0f;
  float z = 0.0f;
  float reflectance = 0.0f;

  bool operator==(const LidarPoint&) const = default;
};

struct LidarPointCloud {
  std::vector<LidarPoint> points;
  // Non-finite records dropped while loading. Never serialized.
  std::size_t dropped_non_finite = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

}  // namespace lidepth
