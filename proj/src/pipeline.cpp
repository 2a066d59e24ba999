#include "lidepth/pipeline.hpp"

#include "lidepth/errors.hpp"
#include "lidepth/kitti_io.hpp"
#include "lidepth/log.hpp"
#include "lidepth/sequence.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <thread>

namespace lidepth {

PipelineSummary run_pipeline(const PipelineConfig& cfg) {
  namespace fs = std::filesystem;
  if (cfg.workers < 1)
    throw std::invalid_argument("pipeline: workers must be >= 1");
  if (fs::weakly_canonical(cfg.sequence_dir) ==
      fs::weakly_canonical(cfg.output_dir))
    throw std::invalid_argument(
        "pipeline: sequence_dir and output_dir must be distinct");

  const SequencePaths seq = discover_sequence(cfg.sequence_dir);
  const auto [width, height] = sequence_image_size(seq, cfg.image_size);
  const CalibrationSet calib =
      load_kitti_calib(seq.calib, width, height, cfg.camera);
  fs::create_directories(cfg.output_dir);

  std::size_t frame_count = seq.scans.size();
  if (cfg.frame_limit) frame_count = std::min(frame_count, *cfg.frame_limit);

  // Indexed per frame so the summary is identical for any worker count.
  std::vector<double> sparsity_before(frame_count, 0.0);
  std::vector<double> sparsity_after(frame_count, 0.0);
  std::vector<std::uint8_t> ok(frame_count, 0);
  std::vector<std::string> failures(frame_count);

  std::atomic<std::size_t> next{0};
  const auto worker = [&]() {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= frame_count) return;
      const fs::path& scan = seq.scans[i];
      try {
        const LidarPointCloud cloud = load_velodyne_bin(scan);
        const DepthMap sparse = project(cloud, calib, cfg.projection);
        const DepthMap dense = inverse_dilate(sparse, cfg.kernel);
        write_depth_png(dense, cfg.output_dir / (scan.stem().string() + ".png"));
        sparsity_before[i] = sparsity(sparse);
        sparsity_after[i] = sparsity(dense);
        ok[i] = 1;
      } catch (const std::exception& e) {
        failures[i] = scan.filename().string() + ": " + e.what();
      }
    }
  };

  const std::size_t n_workers =
      std::min<std::size_t>(static_cast<std::size_t>(cfg.workers),
                            std::max<std::size_t>(frame_count, 1));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_workers);
    for (std::size_t i = 0; i < n_workers; ++i) threads.emplace_back(worker);
    for (std::thread& t : threads) t.join();
  }

  PipelineSummary summary;
  double before_sum = 0.0;
  double after_sum = 0.0;
  for (std::size_t i = 0; i < frame_count; ++i) {
    if (ok[i] != 0) {
      ++summary.frames_processed;
      before_sum += sparsity_before[i];
      after_sum += sparsity_after[i];
    } else {
      ++summary.frames_failed;
      summary.failures.push_back(failures[i]);
      log::warn("pipeline: " + failures[i]);
    }
  }
  if (summary.frames_processed > 0) {
    summary.mean_sparsity_before =
        before_sum / static_cast<double>(summary.frames_processed);
    summary.mean_sparsity_after =
        after_sum / static_cast<double>(summary.frames_processed);
  }
  return summary;
}

}  // namespace lidepth
