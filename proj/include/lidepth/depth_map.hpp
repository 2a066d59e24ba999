#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace lidepth {

// Per-pixel depth image with a validity mask. Invalid pixels always hold the
// canonical sentinel 0 so maps compare and serialize deterministically.
// Depth unit is meters; valid pixels carry depth > 0.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(int width, int height);

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t pixel_count() const { return depth_.size(); }

  bool valid(int x, int y) const { return valid_[index(x, y)] != 0; }
  float depth(int x, int y) const { return depth_[index(x, y)]; }

  // Marks (x, y) valid. depth_m must be > 0.
  void set(int x, int y, float depth_m);
  void clear(int x, int y);

  std::size_t valid_count() const;

  std::span<const float> depth_data() const { return depth_; }
  std::span<const std::uint8_t> valid_data() const { return valid_; }

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

  bool operator==(const DepthMap&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<float> depth_;
  std::vector<std::uint8_t> valid_;
};

// Fraction of invalid pixels, in [0, 1]. An empty map counts as fully sparse.
double sparsity(const DepthMap& map);

}  // namespace lidepth
