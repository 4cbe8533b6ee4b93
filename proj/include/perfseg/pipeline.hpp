// Copyright (c) 2026 The perfseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PERFSEG__PIPELINE_HPP_
#define PERFSEG__PIPELINE_HPP_

#include <string>
#include <vector>

#include "perfseg/morphology.hpp"
#include "perfseg/projection.hpp"
#include "perfseg/thresholding.hpp"
#include "perfseg/types.hpp"

namespace perfseg
{

struct PipelineConfig
{
  /// Time-point used for brain extraction. The first few images of a DSC
  /// run have not reached steady state; index 3 is the 4th image.
  std::size_t ref_timepoint{3};
  /// Use the whole image when the crop-box edges degenerate.
  bool fallback_full_box{true};
};

/**
 * @brief Perfusion ROI of one slice position.
 *
 * Step one works on the reference time-point only: the crop box from the
 * projection-profile derivatives yields T_L = mean - std, thresholding
 * keeps brighter pixels, holes are filled and the largest 8-connected
 * component is taken as the brain. Step two computes T_H = mean + std over
 * that brain region and clears, for every time-point, the brain pixels
 * brighter than T_H; the ROI is the intersection over all time-points.
 *
 * Throws RefTimepointOutOfRange or SegmentationFailed.
 */
template<class T>
SegmentationResult segment_slice(const BasicSliceSeries<T> & series, const PipelineConfig & cfg)
{
  if (cfg.ref_timepoint >= series.timepoints()) {
    throw RefTimepointOutOfRange(
            "reference time-point " + std::to_string(cfg.ref_timepoint) +
            " out of range, series has " + std::to_string(series.timepoints()) +
            " time-points (valid 0.." + std::to_string(series.timepoints() - 1) + ")");
  }
  const auto & ref = series[cfg.ref_timepoint];

  CropBox box{};
  bool fallback = false;
  try {
    box = brain_crop_box(ref);
  } catch (const DegenerateBrainBox & e) {
    if (!cfg.fallback_full_box) {
      throw SegmentationFailed(std::string("no brain location: ") + e.what());
    }
    box = CropBox::full(ref.width(), ref.height());
    fallback = true;
  }

  const double t_low = low_threshold(stats_in_box(ref, box));
  BinaryMask brain = fill_holes(apply_low_threshold(ref, t_low));
  try {
    brain = largest_component(brain);
  } catch (const EmptyForeground &) {
    throw SegmentationFailed(
            "no pixel above low threshold " + std::to_string(t_low) + " on reference time-point");
  }

  const double t_high = high_threshold(stats_in_mask(ref, brain));
  BinaryMask roi = remove_above_threshold(brain, series[0], t_high);
  for (std::size_t t = 1; t < series.timepoints(); ++t) {
    roi = mask_and(roi, remove_above_threshold(brain, series[t], t_high));
  }

  return SegmentationResult{
    std::move(roi), std::move(brain), box, t_low, t_high, cfg.ref_timepoint, fallback};
}

struct SliceFailure
{
  std::size_t slice_index{};
  std::string message;
};

/// Raised by segment_study when one or more slices fail.
class StudySegmentationError : public SegmentationFailed
{
public:
  explicit StudySegmentationError(std::vector<SliceFailure> failures);
  const std::vector<SliceFailure> & failures() const {return failures_;}

private:
  std::vector<SliceFailure> failures_;
};

/**
 * @brief Segments every slice of a study independently.
 *
 * `jobs` workers pull slices from a shared counter (0 picks the hardware
 * concurrency). Results keep study order and do not depend on `jobs`.
 * When `slice_seconds` is given it receives the wall time of each slice.
 */
std::vector<SegmentationResult> segment_study(const PerfusionStudy & study,
  const PipelineConfig & cfg, std::size_t jobs = 1,
  std::vector<double> * slice_seconds = nullptr);

}  // namespace perfseg

#endif  // PERFSEG__PIPELINE_HPP_
