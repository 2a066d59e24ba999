#pragma once

#include "lidepth/depth_map.hpp"

#include <cstddef>

namespace lidepth {

// Rows in [floor(height * top_ignore_fraction), height) are evaluated.
// 0.30 reproduces the crop used when scoring learned depth maps.
struct EvalCrop {
  double top_ignore_fraction = 0.0;

  int first_row(int height) const;
};

struct DepthErrorReport {
  double mae = 0.0;   // meters
  double rmse = 0.0;  // meters
  std::size_t evaluated_pixels = 0;
  // Fraction of gt-valid in-crop pixels that were evaluated.
  double gt_coverage = 0.0;
  double pred_sparsity = 0.0;
};

// Scores pred against gt over pixels valid in both maps inside the crop.
// Throws ShapeError on dimension mismatch, EmptyEvaluationError when the
// evaluation set is empty.
DepthErrorReport eval_depth(const DepthMap& pred, const DepthMap& gt,
                            const EvalCrop& crop = {});

// Sequence-level aggregation: a fold over per-frame reports weighted by
// evaluated_pixels. Pooled-over-pixels is the primary statistic; the mean of
// per-frame values is exposed alongside.
class DepthErrorAccumulator {
 public:
  void add(const DepthErrorReport& report);

  std::size_t frames() const { return frames_; }
  std::size_t evaluated_pixels() const { return pixels_; }
  double pooled_mae() const;
  double pooled_rmse() const;
  double mean_frame_mae() const;
  double mean_frame_rmse() const;

 private:
  std::size_t frames_ = 0;
  std::size_t pixels_ = 0;
  double abs_error_sum_ = 0.0;
  double sq_error_sum_ = 0.0;
  double frame_mae_sum_ = 0.0;
  double frame_rmse_sum_ = 0.0;
};

}  // namespace lidepth
