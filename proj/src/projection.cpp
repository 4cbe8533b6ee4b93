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

#include "perfseg/projection.hpp"

#include <algorithm>
#include <string>

namespace perfseg
{

ProfileDerivative first_derivative(const ProjectionProfile & p)
{
  const auto & v = p.values;
  const std::size_t n = v.size();
  if (n < 2) {
    throw ProfileTooShort("derivative needs at least 2 profile values, got " + std::to_string(n));
  }
  ProfileDerivative d{std::vector<double>(n)};
  d.values[0] = v[1] - v[0];
  d.values[n - 1] = v[n - 1] - v[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    d.values[i] = (v[i + 1] - v[i - 1]) / 2.0;
  }
  return d;
}

std::size_t argmax_first(const std::vector<double> & v)
{
  // max_element returns the first of equal maxima
  return static_cast<std::size_t>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

std::size_t argmin_first(const std::vector<double> & v)
{
  return static_cast<std::size_t>(std::distance(v.begin(), std::min_element(v.begin(), v.end())));
}

CropBox crop_box_from_derivatives(const ProfileDerivative & horizontal,
  const ProfileDerivative & vertical)
{
  CropBox box{
    argmax_first(horizontal.values), argmin_first(horizontal.values),
    argmax_first(vertical.values), argmin_first(vertical.values)};
  if (box.x0 >= box.x1 || box.y0 >= box.y1) {
    throw DegenerateBrainBox(
            "derivative extrema give x [" + std::to_string(box.x0) + "," +
            std::to_string(box.x1) + "], y [" + std::to_string(box.y0) + "," +
            std::to_string(box.y1) + "]");
  }
  return box;
}

}  // namespace perfseg
