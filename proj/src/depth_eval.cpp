#include "lidepth/depth_eval.hpp"

#include "lidepth/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace lidepth {

int EvalCrop::first_row(int height) const {
  if (!(top_ignore_fraction >= 0.0) || !(top_ignore_fraction < 1.0))
    throw std::invalid_argument("EvalCrop: top_ignore_fraction must be in [0,1)");
  return static_cast<int>(
      std::floor(static_cast<double>(height) * top_ignore_fraction));
}

DepthErrorReport eval_depth(const DepthMap& pred, const DepthMap& gt,
                            const EvalCrop& crop) {
  if (pred.width() != gt.width() || pred.height() != gt.height())
    throw ShapeError("eval_depth: dimension mismatch, pred " +
                     std::to_string(pred.width()) + "x" +
                     std::to_string(pred.height()) + " vs gt " +
                     std::to_string(gt.width()) + "x" +
                     std::to_string(gt.height()));

  const int w = pred.width();
  const int h = pred.height();
  const int row0 = crop.first_row(h);

  std::size_t evaluated = 0;
  std::size_t gt_valid_in_crop = 0;
  double abs_sum = 0.0;
  double sq_sum = 0.0;
  for (int y = row0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!gt.valid(x, y)) continue;
      ++gt_valid_in_crop;
      if (!pred.valid(x, y)) continue;
      const double e = static_cast<double>(pred.depth(x, y)) -
                       static_cast<double>(gt.depth(x, y));
      abs_sum += std::abs(e);
      sq_sum += e * e;
      ++evaluated;
    }
  if (evaluated == 0)
    throw EmptyEvaluationError(
        "eval_depth: no pixel is valid in both maps inside the crop");

  DepthErrorReport report;
  report.evaluated_pixels = evaluated;
  report.mae = abs_sum / static_cast<double>(evaluated);
  report.rmse = std::sqrt(sq_sum / static_cast<double>(evaluated));
  report.gt_coverage =
      static_cast<double>(evaluated) / static_cast<double>(gt_valid_in_crop);
  report.pred_sparsity = sparsity(pred);
  return report;
}

void DepthErrorAccumulator::add(const DepthErrorReport& report) {
  const auto n = static_cast<double>(report.evaluated_pixels);
  ++frames_;
  pixels_ += report.evaluated_pixels;
  abs_error_sum_ += report.mae * n;
  sq_error_sum_ += report.rmse * report.rmse * n;
  frame_mae_sum_ += report.mae;
  frame_rmse_sum_ += report.rmse;
}

double DepthErrorAccumulator::pooled_mae() const {
  return pixels_ == 0 ? 0.0 : abs_error_sum_ / static_cast<double>(pixels_);
}

double DepthErrorAccumulator::pooled_rmse() const {
  return pixels_ == 0 ? 0.0
                      : std::sqrt(sq_error_sum_ / static_cast<double>(pixels_));
}

double DepthErrorAccumulator::mean_frame_mae() const {
  return frames_ == 0 ? 0.0 : frame_mae_sum_ / static_cast<double>(frames_);
}

double DepthErrorAccumulator::mean_frame_rmse() const {
  return frames_ == 0 ? 0.0 : frame_rmse_sum_ / static_cast<double>(frames_);
}

}  // namespace lidepth
