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

#ifndef PERFSEG__MORPHOLOGY_HPP_
#define PERFSEG__MORPHOLOGY_HPP_

#include <cstdint>
#include <vector>

#include "perfseg/types.hpp"

namespace perfseg
{

/// Pixels connectivity type
enum class Connectivity : int
{
  /// horizontal and vertical neighbours
  Way4 = 4,
  /// horizontal, vertical and diagonal neighbours
  Way8 = 8
};

/// Which bit value forms the components being labeled.
enum class LabelTarget
{
  Foreground,
  Background
};

/// Component ids 1..count in raster-scan first-encounter order; 0 marks
/// pixels that are not part of the labeled target.
struct LabelMap
{
  std::size_t width{};
  std::size_t height{};
  std::vector<std::uint32_t> labels;
  std::uint32_t count{};

  std::uint32_t operator()(std::size_t x, std::size_t y) const {return labels[y * width + x];}
};

/**
 * @brief Two-pass connected component labeling with a union-find
 * equivalence table.
 *
 * The first pass hands out provisional labels in raster order and records
 * equivalences, always keeping the smaller label as set root. The smallest
 * provisional label of a set therefore belongs to the component's first
 * raster pixel, and the second pass renumbers roots in increasing order.
 */
LabelMap label_components(const BinaryMask & m, Connectivity connectivity, LabelTarget target);

/// Turns every 4-connected background region that does not reach the image
/// border into foreground.
BinaryMask fill_holes(const BinaryMask & m);

/// Keeps only the largest 8-connected foreground component (lowest label on
/// ties). Throws EmptyForeground for an all-background mask.
BinaryMask largest_component(const BinaryMask & m);

}  // namespace perfseg

#endif  // PERFSEG__MORPHOLOGY_HPP_
