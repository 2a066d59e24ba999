#pragma once

#include <Eigen/Core>

#include <string>

namespace lidepth {

// KITTI odometry calib.txt carries projection matrices P0..P3; P2 is the
// left color camera, P0 the left gray one.
enum class CameraId { P0, P1, P2, P3 };

const char* camera_key(CameraId id);
CameraId parse_camera_id(const std::string& name);

struct CalibrationSet {
  // 3x4 intrinsic projection: homogeneous rectified-camera point -> pixel.
  Eigen::Matrix<double, 3, 4> projection = Eigen::Matrix<double, 3, 4>::Zero();
  // 4x4 rigid transform, LiDAR frame -> rectified camera-0 frame.
  Eigen::Matrix4d lidar_to_cam = Eigen::Matrix4d::Identity();
  int image_width = 0;
  int image_height = 0;

  // Throws ParseError unless: rotation block orthonormal with det +1 within
  // 1e-6, positive focal lengths, positive image dimensions.
  void validate() const;
};

// Orthonormality check used for calibration and pose invariants.
bool is_rigid_transform(const Eigen::Matrix4d& m, double tol = 1e-6);

}  // namespace lidepth
