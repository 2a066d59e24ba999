#include "lidepth/densify.hpp"

#include "lidepth/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>

namespace lidepth {

namespace {

std::vector<std::pair<int, int>> collect_offsets(
    int size, bool (*cell_active)(int, int, int)) {
  const int c = (size - 1) / 2;
  std::vector<std::pair<int, int>> offsets;
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j)
      if (cell_active(i, j, c)) offsets.emplace_back(i - c, j - c);
  return offsets;
}

void check_size(int size) {
  if (size < 1 || size % 2 == 0)
    throw std::invalid_argument("structuring element size must be odd and >= 1, got " +
                                std::to_string(size));
}

}  // namespace

StructuringElement::StructuringElement(std::string name, int size,
                                       std::vector<std::pair<int, int>> offsets)
    : name_(std::move(name)), size_(size), offsets_(std::move(offsets)) {}

StructuringElement StructuringElement::diamond(int size) {
  check_size(size);
  return StructuringElement(
      "diamond:" + std::to_string(size), size,
      collect_offsets(size, [](int i, int j, int c) {
        return std::abs(i - c) + std::abs(j - c) <= c;
      }));
}

StructuringElement StructuringElement::full(int size) {
  check_size(size);
  return StructuringElement("full:" + std::to_string(size), size,
                            collect_offsets(size, [](int, int, int) {
                              return true;
                            }));
}

StructuringElement StructuringElement::cross(int size) {
  check_size(size);
  return StructuringElement("cross:" + std::to_string(size), size,
                            collect_offsets(size, [](int i, int j, int c) {
                              return i == c || j == c;
                            }));
}

StructuringElement StructuringElement::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ParseError("kernel spec must be name:size, got '" +
                     std::string(spec) + "'");
  const std::string_view name = spec.substr(0, colon);
  const std::string_view size_text = spec.substr(colon + 1);
  int size = 0;
  const auto [end, ec] =
      std::from_chars(size_text.data(), size_text.data() + size_text.size(), size);
  if (ec != std::errc{} || end != size_text.data() + size_text.size())
    throw ParseError("bad kernel size in '" + std::string(spec) + "'");
  if (size < 1 || size % 2 == 0)
    throw ParseError("kernel size must be odd and >= 1, got '" +
                     std::string(spec) + "'");
  if (name == "diamond") return diamond(size);
  if (name == "full") return full(size);
  if (name == "cross") return cross(size);
  throw ParseError("unknown kernel '" + std::string(name) +
                   "' (expected diamond, full, or cross)");
}

bool StructuringElement::active(int row, int col) const {
  const int c = (size_ - 1) / 2;
  for (const auto& [dy, dx] : offsets_)
    if (dy == row - c && dx == col - c) return true;
  return false;
}

DepthMap inverse_dilate(const DepthMap& map, const StructuringElement& kernel) {
  const int w = map.width();
  const int h = map.height();
  DepthMap out(w, h);

  // Scatter form: every valid source pixel spreads its depth to q + b over
  // the kernel offsets b, keeping the minimum per target. Equivalent to a
  // min-gather over the reflected kernel at each output pixel, which is how
  // the brute-force oracle in the tests states it.
  const auto valid = map.valid_data();
  const auto depths = map.depth_data();
  const auto& offsets = kernel.offsets();
  for (int y = 0; y < h; ++y) {
    const std::size_t row = map.index(0, y);
    for (int x = 0; x < w; ++x) {
      if (valid[row + static_cast<std::size_t>(x)] == 0) continue;
      const float d = depths[row + static_cast<std::size_t>(x)];
      for (const auto& [dy, dx] : offsets) {
        const int ny = y + dy;
        const int nx = x + dx;
        if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
        if (!out.valid(nx, ny) || d < out.depth(nx, ny)) out.set(nx, ny, d);
      }
    }
  }
  return out;
}

DepthMap densify_frame(const LidarPointCloud& cloud, const CalibrationSet& calib,
                       const ProjectionConfig& cfg,
                       const StructuringElement& kernel) {
  return inverse_dilate(project(cloud, calib, cfg), kernel);
}

}  // namespace lidepth
