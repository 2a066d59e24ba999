#pragma once

#include "lidepth/calibration.hpp"
#include "lidepth/depth_map.hpp"
#include "lidepth/point_cloud.hpp"
#include "lidepth/trajectory.hpp"

#include <filesystem>
#include <utility>
#include <vector>

namespace lidepth {

// Stored PNG value = depth_m * 256, 0 = invalid. The KITTI depth-completion
// convention; matches an RGB-D consumer configured with DepthMapFactor 256.
inline constexpr double kDepthPngScale = 256.0;

// KITTI velodyne scan: headerless little-endian float32 quadruples
// (x, y, z, reflectance). Non-finite records are dropped and counted.
// Throws ParseError if the file size is not a multiple of 16 bytes.
LidarPointCloud load_velodyne_bin(const std::filesystem::path& path);
void write_velodyne_bin(const LidarPointCloud& cloud,
                        const std::filesystem::path& path);

// Parses a KITTI odometry calib.txt ("KEY: v1 .. v12" lines). Selects the
// requested P matrix and promotes Tr to a 4x4 with bottom row 0 0 0 1.
// Image dimensions are not stored in calib.txt and must be supplied.
CalibrationSet load_kitti_calib(const std::filesystem::path& path,
                                int image_width, int image_height,
                                CameraId camera = CameraId::P2);

// times.txt: one float (seconds) per line.
std::vector<double> load_times(const std::filesystem::path& path);

// 16-bit single-channel PNG depth maps, see kDepthPngScale.
void write_depth_png(const DepthMap& map, const std::filesystem::path& path);
DepthMap read_depth_png(const std::filesystem::path& path);

// Width/height from a PNG header without decoding the image data.
std::pair<int, int> read_png_dimensions(const std::filesystem::path& path);

// KITTI poses file: 12 whitespace-separated numbers per line, the row-major
// upper 3x4 of the camera-to-world pose. Rotations are checked rigid on load.
Trajectory load_trajectory(const std::filesystem::path& path);
void write_trajectory(const Trajectory& trajectory,
                      const std::filesystem::path& path);

}  // namespace lidepth
