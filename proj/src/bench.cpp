#include "lidepth/bench.hpp"

#include "lidepth/errors.hpp"
#include "lidepth/kitti_io.hpp"
#include "lidepth/log.hpp"
#include "lidepth/sequence.hpp"

#include <algorithm>
#include <chrono>
#include <vector>

namespace lidepth {

namespace {

using Clock = std::chrono::steady_clock;

double ms_between(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

}  // namespace

StageStats make_stage_stats(std::vector<double> samples) {
  StageStats s;
  s.samples = samples.size();
  if (samples.empty()) return s;
  std::sort(samples.begin(), samples.end());
  s.min_ms = samples.front();
  s.max_ms = samples.back();
  s.median_ms = samples[(samples.size() - 1) / 2];  // lower median
  return s;
}

RuntimeStats bench_sequence(const std::filesystem::path& sequence_dir,
                            const BenchConfig& cfg,
                            std::vector<FrameTiming>* per_frame) {
  if (cfg.warmup < 0)
    throw std::invalid_argument("bench: warmup must be >= 0");

  const SequencePaths seq = discover_sequence(sequence_dir);
  const auto [width, height] = sequence_image_size(seq, cfg.image_size);
  const CalibrationSet calib =
      load_kitti_calib(seq.calib, width, height, cfg.camera);

  std::size_t frame_count = seq.scans.size();
  if (cfg.frame_limit) frame_count = std::min(frame_count, *cfg.frame_limit);

  RuntimeStats stats;
  std::vector<double> projection_ms;
  std::vector<double> upsampling_ms;
  std::vector<double> total_ms;
  std::size_t processed = 0;

  for (std::size_t i = 0; i < frame_count; ++i) {
    LidarPointCloud cloud;
    try {
      cloud = load_velodyne_bin(seq.scans[i]);
    } catch (const ParseError& e) {
      ++stats.skipped_frames;
      log::warn(std::string("bench: skipping frame: ") + e.what());
      continue;
    } catch (const IoError& e) {
      ++stats.skipped_frames;
      log::warn(std::string("bench: skipping frame: ") + e.what());
      continue;
    }

    const auto t0 = Clock::now();
    const DepthMap sparse = project(cloud, calib, cfg.projection);
    const auto t1 = Clock::now();
    const DepthMap dense = inverse_dilate(sparse, cfg.kernel);
    const auto t2 = Clock::now();
    const DepthMap fused = densify_frame(cloud, calib, cfg.projection, cfg.kernel);
    const auto t3 = Clock::now();

    if (!(fused == dense)) ++stats.output_mismatches;

    ++processed;
    if (processed <= static_cast<std::size_t>(cfg.warmup)) continue;

    projection_ms.push_back(ms_between(t0, t1));
    upsampling_ms.push_back(ms_between(t1, t2));
    total_ms.push_back(ms_between(t2, t3));
    if (per_frame != nullptr)
      per_frame->push_back(FrameTiming{seq.scans[i].stem().string(),
                                       projection_ms.back(),
                                       upsampling_ms.back(), total_ms.back()});
  }

  if (projection_ms.empty())
    throw EmptyEvaluationError("bench: no frames were timed (scans: " +
                               std::to_string(seq.scans.size()) +
                               ", skipped: " +
                               std::to_string(stats.skipped_frames) +
                               ", warmup: " + std::to_string(cfg.warmup) + ")");

  stats.projection = make_stage_stats(std::move(projection_ms));
  stats.upsampling = make_stage_stats(std::move(upsampling_ms));
  stats.total = make_stage_stats(std::move(total_ms));
  return stats;
}

}  // namespace lidepth
