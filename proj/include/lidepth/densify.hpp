#pragma once

#include "lidepth/calibration.hpp"
#include "lidepth/depth_map.hpp"
#include "lidepth/point_cloud.hpp"
#include "lidepth/projection.hpp"

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lidepth {

// Odd-sized boolean kernel with its origin at the center cell.
class StructuringElement {
 public:
  // Cell (i,j) active iff |i-c| + |j-c| <= c, c = (n-1)/2. diamond(5) has 13
  // active cells.
  static StructuringElement diamond(int size);
  static StructuringElement full(int size);
  // Center row and center column.
  static StructuringElement cross(int size);

  // "name:size", e.g. "diamond:5". Throws ParseError on anything else.
  static StructuringElement parse(std::string_view spec);

  int size() const { return size_; }
  bool active(int row, int col) const;
  int active_count() const { return static_cast<int>(offsets_.size()); }

  // Active cells as (dy, dx) offsets from the center.
  const std::vector<std::pair<int, int>>& offsets() const { return offsets_; }

  // The name:size string this kernel corresponds to, e.g. "diamond:5".
  const std::string& name() const { return name_; }

 private:
  StructuringElement(std::string name, int size,
                     std::vector<std::pair<int, int>> offsets);

  std::string name_;
  int size_ = 1;
  std::vector<std::pair<int, int>> offsets_;
};

// Morphological dilation under nearest-depth semantics: output pixel p is
// valid iff some valid input pixel lies in the reflected-kernel neighborhood
// of p, and takes the minimum such depth, so near surfaces occlude far ones
// while measurements spread. Neighborhoods are clipped at image borders; no
// synthetic values are introduced. Measured pixels are not restored
// afterwards -- a nearer neighbor may overwrite them.
DepthMap inverse_dilate(const DepthMap& map, const StructuringElement& kernel);

// project() + inverse_dilate(): the per-frame unit the bench times.
DepthMap densify_frame(const LidarPointCloud& cloud, const CalibrationSet& calib,
                       const ProjectionConfig& cfg,
                       const StructuringElement& kernel);

}  // namespace lidepth
