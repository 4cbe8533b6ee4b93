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

#ifndef PERFSEG__PROJECTION_HPP_
#define PERFSEG__PROJECTION_HPP_

#include <cmath>
#include <vector>

#include "perfseg/types.hpp"

namespace perfseg
{

enum class Axis
{
  /// One value per column (projection onto the x axis).
  Horizontal,
  /// One value per row (projection onto the y axis).
  Vertical
};

/// Per-line sample standard deviations of an image.
struct ProjectionProfile
{
  Axis axis{Axis::Horizontal};
  std::vector<double> values;
};

struct ProfileDerivative
{
  std::vector<double> values;
};

/**
 * @brief Standard-deviation projection profile.
 *
 * Horizontal: values[x] is the sample standard deviation (n - 1 denominator)
 * of column x. Vertical: values[y] is that of row y. Both passes walk the
 * image in storage order.
 */
template<class T>
ProjectionProfile std_projection(const Image<T> & img, Axis axis)
{
  const std::size_t w = img.width();
  const std::size_t h = img.height();
  const auto px = img.pixels();

  ProjectionProfile out{axis, {}};
  if (axis == Axis::Horizontal) {
    std::vector<double> sum(w, 0.0);
    for (std::size_t y = 0; y < h; ++y) {
      const T * row = px.data() + y * w;
      for (std::size_t x = 0; x < w; ++x) {
        sum[x] += static_cast<double>(row[x]);
      }
    }
    std::vector<double> mean(w);
    for (std::size_t x = 0; x < w; ++x) {
      mean[x] = sum[x] / static_cast<double>(h);
    }
    std::vector<double> ss(w, 0.0);
    for (std::size_t y = 0; y < h; ++y) {
      const T * row = px.data() + y * w;
      for (std::size_t x = 0; x < w; ++x) {
        const double d = static_cast<double>(row[x]) - mean[x];
        ss[x] += d * d;
      }
    }
    out.values.resize(w);
    for (std::size_t x = 0; x < w; ++x) {
      out.values[x] = std::sqrt(ss[x] / static_cast<double>(h - 1));
    }
  } else {
    out.values.resize(h);
    for (std::size_t y = 0; y < h; ++y) {
      const T * row = px.data() + y * w;
      double sum = 0.0;
      for (std::size_t x = 0; x < w; ++x) {
        sum += static_cast<double>(row[x]);
      }
      const double mean = sum / static_cast<double>(w);
      double ss = 0.0;
      for (std::size_t x = 0; x < w; ++x) {
        const double d = static_cast<double>(row[x]) - mean;
        ss += d * d;
      }
      out.values[y] = std::sqrt(ss / static_cast<double>(w - 1));
    }
  }
  return out;
}

/// Central differences inside, one-sided at both ends. Throws
/// ProfileTooShort for fewer than 2 values.
ProfileDerivative first_derivative(const ProjectionProfile & p);

/// Index of the first occurrence of the global maximum / minimum.
std::size_t argmax_first(const std::vector<double> & v);
std::size_t argmin_first(const std::vector<double> & v);

/// Crop box from the rising (argmax) and falling (argmin) edges of the two
/// derivative profiles. Throws DegenerateBrainBox if an edge pair is not
/// ordered low-to-high.
CropBox crop_box_from_derivatives(const ProfileDerivative & horizontal,
  const ProfileDerivative & vertical);

/// Approximate anatomical brain location of one image.
template<class T>
CropBox brain_crop_box(const Image<T> & img)
{
  return crop_box_from_derivatives(
    first_derivative(std_projection(img, Axis::Horizontal)),
    first_derivative(std_projection(img, Axis::Vertical)));
}

}  // namespace perfseg

#endif  // PERFSEG__PROJECTION_HPP_
