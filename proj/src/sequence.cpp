#include "lidepth/sequence.hpp"

#include "lidepth/errors.hpp"
#include "lidepth/kitti_io.hpp"

#include <algorithm>

namespace lidepth {

SequencePaths discover_sequence(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  SequencePaths seq;
  seq.dir = dir;
  seq.calib = dir / "calib.txt";
  if (!fs::exists(seq.calib))
    throw IoError("sequence has no calib.txt: " + dir.string());

  const fs::path velodyne = dir / "velodyne";
  if (!fs::is_directory(velodyne))
    throw IoError("sequence has no velodyne/ directory: " + dir.string());
  for (const auto& entry : fs::directory_iterator(velodyne))
    if (entry.is_regular_file() && entry.path().extension() == ".bin")
      seq.scans.push_back(entry.path());
  std::sort(seq.scans.begin(), seq.scans.end());

  for (const char* name : {"image_2", "image_0"}) {
    const fs::path images = dir / name;
    if (fs::is_directory(images)) {
      seq.image_dir = images;
      break;
    }
  }
  return seq;
}

std::pair<int, int> sequence_image_size(
    const SequencePaths& seq, std::optional<std::pair<int, int>> override_size) {
  if (override_size) return *override_size;
  if (seq.image_dir) {
    namespace fs = std::filesystem;
    std::vector<fs::path> images;
    for (const auto& entry : fs::directory_iterator(*seq.image_dir))
      if (entry.is_regular_file() && entry.path().extension() == ".png")
        images.push_back(entry.path());
    if (!images.empty()) {
      std::sort(images.begin(), images.end());
      return read_png_dimensions(images.front());
    }
  }
  throw IoError(
      "no camera images to take depth-map dimensions from in " +
      seq.dir.string() + "; pass them explicitly (--width/--height)");
}

}  // namespace lidepth
