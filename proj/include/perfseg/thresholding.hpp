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

#ifndef PERFSEG__THRESHOLDING_HPP_
#define PERFSEG__THRESHOLDING_HPP_

#include <cmath>

#include "perfseg/types.hpp"

namespace perfseg
{

/// Mean and sample standard deviation (n - 1) of a pixel set. A single
/// pixel has std 0.
struct RegionStats
{
  double mean{};
  double std{};
  std::size_t count{};
};

namespace detail
{
// Two-pass mean / sum of squared deviations over pixel indices accepted by `pick`.
template<class T, class Pick>
RegionStats region_stats(const Image<T> & img, Pick pick)
{
  const auto px = img.pixels();
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (pick(i)) {
      sum += static_cast<double>(px[i]);
      ++n;
    }
  }
  if (n == 0) {
    throw EmptyRegion("statistics requested over an empty region");
  }
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (pick(i)) {
      const double d = static_cast<double>(px[i]) - mean;
      ss += d * d;
    }
  }
  const double sd = n > 1 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
  return RegionStats{mean, sd, n};
}
}  // namespace detail

template<class T>
RegionStats stats_in_box(const Image<T> & img, const CropBox & box)
{
  validate_box(box, img.width(), img.height());
  const std::size_t w = img.width();
  const auto px = img.pixels();
  double sum = 0.0;
  for (std::size_t y = box.y0; y <= box.y1; ++y) {
    for (std::size_t x = box.x0; x <= box.x1; ++x) {
      sum += static_cast<double>(px[y * w + x]);
    }
  }
  const std::size_t n = box.width() * box.height();
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t y = box.y0; y <= box.y1; ++y) {
    for (std::size_t x = box.x0; x <= box.x1; ++x) {
      const double d = static_cast<double>(px[y * w + x]) - mean;
      ss += d * d;
    }
  }
  return RegionStats{mean, std::sqrt(ss / static_cast<double>(n - 1)), n};
}

/// Throws EmptyRegion if the mask selects nothing.
template<class T>
RegionStats stats_in_mask(const Image<T> & img, const BinaryMask & m)
{
  require_same_shape(img, m, "stats_in_mask");
  const auto bits = m.bits();
  return detail::region_stats(img, [&](std::size_t i) {return bits[i] != 0;});
}

/// mean - std
inline double low_threshold(const RegionStats & s) {return s.mean - s.std;}
/// mean + std
inline double high_threshold(const RegionStats & s) {return s.mean + s.std;}

/// Foreground where intensity is strictly greater than `t`.
template<class T>
BinaryMask apply_low_threshold(const Image<T> & img, double t)
{
  BinaryMask out(img.width(), img.height());
  auto dst = out.bits_mutable();
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    dst[i] = static_cast<double>(px[i]) > t ? 1 : 0;
  }
  return out;
}

/// Clears mask bits wherever intensity is strictly greater than `t`.
template<class T>
BinaryMask remove_above_threshold(const BinaryMask & m, const Image<T> & img, double t)
{
  require_same_shape(m, img, "remove_above_threshold");
  BinaryMask out = m;
  auto dst = out.bits_mutable();
  const auto px = img.pixels();
  for (std::size_t i = 0; i < px.size(); ++i) {
    if (static_cast<double>(px[i]) > t) {
      dst[i] = 0;
    }
  }
  return out;
}

/// User-chosen global threshold; the comparison baseline. Same contract as
/// apply_low_threshold.
template<class T>
BinaryMask baseline_fixed_threshold(const Image<T> & img, double t)
{
  return apply_low_threshold(img, t);
}

}  // namespace perfseg

#endif  // PERFSEG__THRESHOLDING_HPP_
