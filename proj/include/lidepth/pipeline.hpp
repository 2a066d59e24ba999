#pragma once

#include "lidepth/calibration.hpp"
#include "lidepth/densify.hpp"
#include "lidepth/projection.hpp"

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lidepth {

struct PipelineConfig {
  std::filesystem::path sequence_dir;
  std::filesystem::path output_dir;
  StructuringElement kernel = StructuringElement::diamond(5);
  CameraId camera = CameraId::P2;
  ProjectionConfig projection;
  int workers = 1;
  std::optional<std::pair<int, int>> image_size;
  std::optional<std::size_t> frame_limit;
};

struct PipelineSummary {
  std::size_t frames_processed = 0;
  std::size_t frames_failed = 0;
  double mean_sparsity_before = 0.0;
  double mean_sparsity_after = 0.0;
  std::vector<std::string> failures;
};

// Batch depth-map generation: one 16-bit PNG per scan, named after the scan
// stem (NNNNNN.bin -> NNNNNN.png), directly consumable by an RGB-D SLAM with
// depth factor 256. Frames are independent; workers > 1 parallelizes across
// frames with byte-identical outputs. Per-frame failures are collected, not
// fatal.
PipelineSummary run_pipeline(const PipelineConfig& cfg);

}  // namespace lidepth
