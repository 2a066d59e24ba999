#include "lidepth/depth_map.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lidepth {

DepthMap::DepthMap(int width, int height) : width_(width), height_(height) {
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("DepthMap: dimensions must be positive, got " +
                                std::to_string(width) + "x" +
                                std::to_string(height));
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  depth_.assign(n, 0.0f);
  valid_.assign(n, 0);
}

void DepthMap::set(int x, int y, float depth_m) {
  if (!(depth_m > 0.0f))
    throw std::invalid_argument("DepthMap: valid depth must be > 0, got " +
                                std::to_string(depth_m));
  const std::size_t i = index(x, y);
  depth_[i] = depth_m;
  valid_[i] = 1;
}

void DepthMap::clear(int x, int y) {
  const std::size_t i = index(x, y);
  depth_[i] = 0.0f;  // canonical sentinel
  valid_[i] = 0;
}

std::size_t DepthMap::valid_count() const {
  return static_cast<std::size_t>(
      std::count(valid_.begin(), valid_.end(), std::uint8_t{1}));
}

double sparsity(const DepthMap& map) {
  const std::size_t total = map.pixel_count();
  if (total == 0) return 1.0;
  return static_cast<double>(total - map.valid_count()) /
         static_cast<double>(total);
}

}  // namespace lidepth
