#include "lidepth/calibration.hpp"

#include "lidepth/errors.hpp"

#include <Eigen/LU>

#include <cmath>

namespace lidepth {

const char* camera_key(CameraId id) {
  switch (id) {
    case CameraId::P0:
      return "P0";
    case CameraId::P1:
      return "P1";
    case CameraId::P2:
      return "P2";
    case CameraId::P3:
      return "P3";
  }
  return "P2";
}

CameraId parse_camera_id(const std::string& name) {
  if (name == "P0") return CameraId::P0;
  if (name == "P1") return CameraId::P1;
  if (name == "P2") return CameraId::P2;
  if (name == "P3") return CameraId::P3;
  throw ParseError("unknown camera id '" + name + "' (expected P0..P3)");
}

bool is_rigid_transform(const Eigen::Matrix4d& m, double tol) {
  const Eigen::Matrix3d r = m.topLeftCorner<3, 3>();
  const Eigen::Matrix3d delta =
      r.transpose() * r - Eigen::Matrix3d::Identity();
  if (delta.cwiseAbs().maxCoeff() > tol) return false;
  if (std::abs(r.determinant() - 1.0) > tol) return false;
  const Eigen::RowVector4d bottom = m.row(3);
  return (bottom - Eigen::RowVector4d(0, 0, 0, 1)).cwiseAbs().maxCoeff() <= tol;
}

void CalibrationSet::validate() const {
  if (!is_rigid_transform(lidar_to_cam))
    throw ParseError("calibration: lidar_to_cam is not a rigid transform "
                     "(rotation must be orthonormal with det +1 within 1e-6)");
  if (!(projection(0, 0) > 0.0) || !(projection(1, 1) > 0.0))
    throw ParseError("calibration: projection focal lengths must be positive");
  if (image_width <= 0 || image_height <= 0)
    throw ParseError("calibration: image dimensions must be positive");
}

}  // namespace lidepth
