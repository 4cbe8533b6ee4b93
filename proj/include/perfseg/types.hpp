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

#ifndef PERFSEG__TYPES_HPP_
#define PERFSEG__TYPES_HPP_

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "perfseg/errors.hpp"

namespace perfseg
{

namespace detail
{
inline void check_dims(std::size_t width, std::size_t height, std::size_t n)
{
  if (width < 2 || height < 2) {
    throw InvalidArgument(
            "image dimensions must be at least 2x2, got " + std::to_string(width) + "x" +
            std::to_string(height));
  }
  if (n != width * height) {
    throw InvalidArgument(
            "pixel buffer holds " + std::to_string(n) + " values, expected " +
            std::to_string(width * height));
  }
}
}  // namespace detail

/**
 * @brief Single-channel image, row-major, x = column and y = row.
 *
 * Acquisition data is 12-bit stored in 16-bit cells (Image2D). The
 * real-valued instantiation exists so that statistics and thresholds can be
 * exercised on exactly transformed intensities.
 */
template<class T>
class Image
{
public:
  using value_type = T;

  Image(std::size_t width, std::size_t height, T fill = T{})
  : width_{width}, height_{height}, pixels_(width * height, fill)
  {
    detail::check_dims(width_, height_, pixels_.size());
  }

  Image(std::size_t width, std::size_t height, std::vector<T> pixels)
  : width_{width}, height_{height}, pixels_(std::move(pixels))
  {
    detail::check_dims(width_, height_, pixels_.size());
  }

  std::size_t width() const {return width_;}
  std::size_t height() const {return height_;}
  std::size_t size() const {return pixels_.size();}

  T operator()(std::size_t x, std::size_t y) const {return pixels_[y * width_ + x];}
  T & operator()(std::size_t x, std::size_t y) {return pixels_[y * width_ + x];}

  std::span<const T> pixels() const {return pixels_;}
  std::span<T> pixels() {return pixels_;}

  bool operator==(const Image &) const = default;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<T> pixels_;
};

using Image2D = Image<std::uint16_t>;
using RealImage = Image<double>;

/// Element-wise conversion, used for real-valued copies of acquisition data.
template<class To, class From>
Image<To> image_cast(const Image<From> & img)
{
  std::vector<To> out(img.pixels().begin(), img.pixels().end());
  return Image<To>(img.width(), img.height(), std::move(out));
}

/// Per-pixel foreground (1) / background (0) map.
class BinaryMask
{
public:
  BinaryMask(std::size_t width, std::size_t height, bool fill = false);
  /// Throws InvalidArgument if any element is not 0 or 1.
  BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits);

  std::size_t width() const {return width_;}
  std::size_t height() const {return height_;}
  std::size_t size() const {return bits_.size();}

  bool operator()(std::size_t x, std::size_t y) const {return bits_[y * width_ + x] != 0;}
  void set(std::size_t x, std::size_t y, bool v) {bits_[y * width_ + x] = v ? 1 : 0;}

  std::span<const std::uint8_t> bits() const {return bits_;}
  /// Raw access; writers must store only 0 or 1.
  std::span<std::uint8_t> bits_mutable() {return bits_;}

  bool operator==(const BinaryMask &) const = default;

private:
  std::size_t width_;
  std::size_t height_;
  std::vector<std::uint8_t> bits_;
};

/// Throws DimensionMismatch unless both operands share width and height.
template<class A, class B>
void require_same_shape(const A & a, const B & b, const char * what)
{
  if (a.width() != b.width() || a.height() != b.height()) {
    throw DimensionMismatch(
            std::string(what) + ": " + std::to_string(a.width()) + "x" +
            std::to_string(a.height()) + " vs " + std::to_string(b.width()) + "x" +
            std::to_string(b.height()));
  }
}

BinaryMask mask_and(const BinaryMask & a, const BinaryMask & b);
std::size_t mask_count(const BinaryMask & m);
/// True when every foreground bit of `inner` is also set in `outer`.
bool mask_subset(const BinaryMask & inner, const BinaryMask & outer);

/// All time-points acquired at one slice position, in acquisition order.
template<class T>
class BasicSliceSeries
{
public:
  BasicSliceSeries(std::size_t slice_index, std::vector<Image<T>> images)
  : slice_index_{slice_index}, images_(std::move(images))
  {
    if (images_.empty()) {
      throw InvalidArgument("slice series needs at least one time-point");
    }
    for (const auto & img : images_) {
      require_same_shape(img, images_.front(), "slice series time-points differ in size");
    }
  }

  std::size_t slice_index() const {return slice_index_;}
  std::size_t timepoints() const {return images_.size();}
  std::size_t width() const {return images_.front().width();}
  std::size_t height() const {return images_.front().height();}
  const std::vector<Image<T>> & images() const {return images_;}
  const Image<T> & operator[](std::size_t t) const {return images_[t];}

  bool operator==(const BasicSliceSeries &) const = default;

private:
  std::size_t slice_index_;
  std::vector<Image<T>> images_;
};

using SliceSeries = BasicSliceSeries<std::uint16_t>;
using RealSliceSeries = BasicSliceSeries<double>;

template<class To, class From>
BasicSliceSeries<To> series_cast(const BasicSliceSeries<From> & s)
{
  std::vector<Image<To>> out;
  out.reserve(s.timepoints());
  for (const auto & img : s.images()) {
    out.push_back(image_cast<To>(img));
  }
  return BasicSliceSeries<To>(s.slice_index(), std::move(out));
}

/// A whole dynamic study: slices x time-points.
class PerfusionStudy
{
public:
  using Metadata = std::map<std::string, std::string>;

  PerfusionStudy() = default;
  /// Throws InconsistentStudy when slices disagree on T or image size.
  explicit PerfusionStudy(std::vector<SliceSeries> slices, Metadata metadata = {});

  const std::vector<SliceSeries> & slices() const {return slices_;}
  const Metadata & metadata() const {return metadata_;}
  bool empty() const {return slices_.empty();}

  bool operator==(const PerfusionStudy &) const = default;

private:
  std::vector<SliceSeries> slices_;
  Metadata metadata_;
};

/// Inclusive pixel rectangle.
struct CropBox
{
  std::size_t x0{};
  std::size_t x1{};
  std::size_t y0{};
  std::size_t y1{};

  std::size_t width() const {return x1 - x0 + 1;}
  std::size_t height() const {return y1 - y0 + 1;}

  static CropBox full(std::size_t width, std::size_t height)
  {
    return CropBox{0, width - 1, 0, height - 1};
  }

  bool operator==(const CropBox &) const = default;
};

/// Throws InvalidArgument unless `box` lies inside a width x height image
/// and spans at least 2 pixels along each axis.
void validate_box(const CropBox & box, std::size_t width, std::size_t height);

struct SegmentationResult
{
  BinaryMask roi_mask;
  BinaryMask brain_mask;
  CropBox crop_box;
  double t_low{};
  double t_high{};
  std::size_t ref_timepoint{};
  /// Set when the crop-box search degenerated and the full image was used.
  bool used_fallback_box{false};

  bool operator==(const SegmentationResult &) const = default;
};

}  // namespace perfseg

#endif  // PERFSEG__TYPES_HPP_
