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

#include "perfseg/morphology.hpp"

#include <algorithm>
#include <numeric>

namespace perfseg
{

namespace
{

class EquivalenceTable
{
public:
  EquivalenceTable() {parent_.push_back(0);}

  std::uint32_t make()
  {
    auto id = static_cast<std::uint32_t>(parent_.size());
    parent_.push_back(id);
    return id;
  }

  std::uint32_t find(std::uint32_t a)
  {
    std::uint32_t root = a;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[a] != root) {
      auto next = parent_[a];
      parent_[a] = root;
      a = next;
    }
    return root;
  }

  std::uint32_t unite(std::uint32_t a, std::uint32_t b)
  {
    a = find(a);
    b = find(b);
    if (a == b) {
      return a;
    }
    if (a < b) {
      parent_[b] = a;
      return a;
    }
    parent_[a] = b;
    return b;
  }

  /// Maps every provisional label onto consecutive final ids.
  std::vector<std::uint32_t> flatten(std::uint32_t & count)
  {
    std::vector<std::uint32_t> final_id(parent_.size(), 0);
    count = 0;
    for (std::uint32_t i = 1; i < parent_.size(); ++i) {
      const auto r = find(i);
      final_id[i] = (r == i) ? ++count : final_id[r];
    }
    return final_id;
  }

private:
  std::vector<std::uint32_t> parent_;
};

}  // namespace

LabelMap label_components(const BinaryMask & m, Connectivity connectivity, LabelTarget target)
{
  const std::size_t w = m.width();
  const std::size_t h = m.height();
  const std::uint8_t want = target == LabelTarget::Foreground ? 1 : 0;
  const bool diag = connectivity == Connectivity::Way8;
  const auto bits = m.bits();

  LabelMap out{w, h, std::vector<std::uint32_t>(w * h, 0), 0};
  auto & lab = out.labels;
  EquivalenceTable eq;

  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const std::size_t i = y * w + x;
      if (bits[i] != want) {
        continue;
      }
      std::uint32_t cur = 0;
      auto join = [&](std::size_t j) {
          if (lab[j] != 0) {
            cur = cur == 0 ? eq.find(lab[j]) : eq.unite(cur, lab[j]);
          }
        };
      if (x > 0) {
        join(i - 1);
      }
      if (y > 0) {
        join(i - w);
        if (diag && x > 0) {
          join(i - w - 1);
        }
        if (diag && x + 1 < w) {
          join(i - w + 1);
        }
      }
      lab[i] = cur == 0 ? eq.make() : cur;
    }
  }

  const auto final_id = eq.flatten(out.count);
  for (auto & l : lab) {
    l = final_id[l];
  }
  return out;
}

BinaryMask fill_holes(const BinaryMask & m)
{
  const std::size_t w = m.width();
  const std::size_t h = m.height();
  const auto bg = label_components(m, Connectivity::Way4, LabelTarget::Background);

  std::vector<std::uint8_t> touches(bg.count + 1, 0);
  for (std::size_t x = 0; x < w; ++x) {
    touches[bg(x, 0)] = 1;
    touches[bg(x, h - 1)] = 1;
  }
  for (std::size_t y = 0; y < h; ++y) {
    touches[bg(0, y)] = 1;
    touches[bg(w - 1, y)] = 1;
  }

  BinaryMask out = m;
  auto dst = out.bits_mutable();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    const auto l = bg.labels[i];
    if (l != 0 && !touches[l]) {
      dst[i] = 1;
    }
  }
  return out;
}

BinaryMask largest_component(const BinaryMask & m)
{
  const auto fg = label_components(m, Connectivity::Way8, LabelTarget::Foreground);
  if (fg.count == 0) {
    throw EmptyForeground("largest_component: mask has no foreground pixels");
  }
  std::vector<std::size_t> size(fg.count + 1, 0);
  for (auto l : fg.labels) {
    ++size[l];
  }
  size[0] = 0;
  // max_element keeps the first (lowest label) of equal sizes
  const auto keep = static_cast<std::uint32_t>(
    std::distance(size.begin(), std::max_element(size.begin() + 1, size.end())));

  BinaryMask out(m.width(), m.height());
  auto dst = out.bits_mutable();
  for (std::size_t i = 0; i < dst.size(); ++i) {
    dst[i] = fg.labels[i] == keep ? 1 : 0;
  }
  return out;
}

}  // namespace perfseg
