#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <vector>

namespace lidepth {

// Ordered camera-to-world poses, one per frame (KITTI poses convention).
struct Trajectory {
  std::vector<Eigen::Matrix4d> poses;

  std::size_t size() const { return poses.size(); }
  bool empty() const { return poses.empty(); }
};

}  // namespace lidepth
