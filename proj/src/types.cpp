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

#include "perfseg/types.hpp"

#include <algorithm>
#include <numeric>

namespace perfseg
{

BinaryMask::BinaryMask(std::size_t width, std::size_t height, bool fill)
: width_{width}, height_{height}, bits_(width * height, fill ? 1 : 0)
{
  detail::check_dims(width_, height_, bits_.size());
}

BinaryMask::BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
: width_{width}, height_{height}, bits_(std::move(bits))
{
  detail::check_dims(width_, height_, bits_.size());
  if (std::any_of(bits_.begin(), bits_.end(), [](std::uint8_t b) {return b > 1;})) {
    throw InvalidArgument("binary mask elements must be 0 or 1");
  }
}

BinaryMask mask_and(const BinaryMask & a, const BinaryMask & b)
{
  require_same_shape(a, b, "mask_and");
  BinaryMask out(a.width(), a.height());
  auto dst = out.bits_mutable();
  auto lhs = a.bits();
  auto rhs = b.bits();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = lhs[i] & rhs[i];
  }
  return out;
}

std::size_t mask_count(const BinaryMask & m)
{
  auto bits = m.bits();
  return std::accumulate(bits.begin(), bits.end(), std::size_t{0});
}

bool mask_subset(const BinaryMask & inner, const BinaryMask & outer)
{
  require_same_shape(inner, outer, "mask_subset");
  auto in = inner.bits();
  auto out = outer.bits();
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] && !out[i]) {
      return false;
    }
  }
  return true;
}

PerfusionStudy::PerfusionStudy(std::vector<SliceSeries> slices, Metadata metadata)
: slices_(std::move(slices)), metadata_(std::move(metadata))
{
  for (const auto & s : slices_) {
    const auto & first = slices_.front();
    if (s.timepoints() != first.timepoints()) {
      throw InconsistentStudy(
              "slice " + std::to_string(s.slice_index()) + " has " +
              std::to_string(s.timepoints()) + " time-points, slice " +
              std::to_string(first.slice_index()) + " has " +
              std::to_string(first.timepoints()));
    }
    if (s.width() != first.width() || s.height() != first.height()) {
      throw InconsistentStudy(
              "slice " + std::to_string(s.slice_index()) + " image size differs from slice " +
              std::to_string(first.slice_index()));
    }
  }
}

void validate_box(const CropBox & box, std::size_t width, std::size_t height)
{
  if (box.x0 > box.x1 || box.y0 > box.y1 || box.x1 >= width || box.y1 >= height ||
    box.width() < 2 || box.height() < 2)
  {
    throw InvalidArgument(
            "crop box [" + std::to_string(box.x0) + "," + std::to_string(box.x1) + "]x[" +
            std::to_string(box.y0) + "," + std::to_string(box.y1) + "] invalid for " +
            std::to_string(width) + "x" + std::to_string(height) + " image");
  }
}

}  // namespace perfseg
