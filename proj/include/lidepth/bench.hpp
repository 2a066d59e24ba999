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

struct StageStats {
  double min_ms = 0.0;
  // Lower median for even sample counts.
  double median_ms = 0.0;
  double max_ms = 0.0;
  std::size_t samples = 0;
};

struct RuntimeStats {
  StageStats projection;
  StageStats upsampling;
  // Measured on the fused densify_frame() call, not summed from the stages.
  StageStats total;
  std::size_t skipped_frames = 0;
  // Frames whose benched output differed from the unbenched pipeline. Always
  // expected to be 0; exposed so the determinism invariant is checkable.
  std::size_t output_mismatches = 0;
};

struct FrameTiming {
  std::string frame;
  double projection_ms = 0.0;
  double upsampling_ms = 0.0;
  double total_ms = 0.0;
};

// Order statistics over per-frame samples. The median is the lower median on
// even counts, so the reported value is always one of the samples.
StageStats make_stage_stats(std::vector<double> samples_ms);

struct BenchConfig {
  std::optional<std::size_t> frame_limit;
  int warmup = 5;
  StructuringElement kernel = StructuringElement::diamond(5);
  ProjectionConfig projection;
  CameraId camera = CameraId::P2;
  // Required when the sequence has no image_2 directory to take sizes from.
  std::optional<std::pair<int, int>> image_size;
};

// Times project(), inverse_dilate() and the fused densify_frame() per frame
// over a KITTI-layout sequence (monotonic clock, single-threaded stages).
// Warmup frames run but are excluded from the stats. Missing or corrupt
// frames are skipped and counted; throws EmptyEvaluationError if nothing
// was timed. Per-frame rows are appended to *per_frame when given.
RuntimeStats bench_sequence(const std::filesystem::path& sequence_dir,
                            const BenchConfig& cfg,
                            std::vector<FrameTiming>* per_frame = nullptr);

}  // namespace lidepth
