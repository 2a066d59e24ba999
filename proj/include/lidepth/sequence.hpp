#pragma once

#include <filesystem>
#include <optional>
#include <utility>
#include <vector>

namespace lidepth {

// KITTI odometry sequence layout: calib.txt plus velodyne/NNNNNN.bin, with
// image_2/ (or image_0/) alongside when camera images are present.
struct SequencePaths {
  std::filesystem::path dir;
  std::filesystem::path calib;
  std::vector<std::filesystem::path> scans;  // sorted by filename
  std::optional<std::filesystem::path> image_dir;
};

// Throws IoError when calib.txt or velodyne/ is missing.
SequencePaths discover_sequence(const std::filesystem::path& dir);

// Image dimensions for depth-map sizing: the explicit override wins, else the
// header of the first image in image_dir. Throws IoError when neither exists.
std::pair<int, int> sequence_image_size(
    const SequencePaths& seq,
    std::optional<std::pair<int, int>> override_size);

}  // namespace lidepth
