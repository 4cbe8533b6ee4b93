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

#include "perfseg/phantom.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "perfseg/io.hpp"

namespace perfseg
{

double BolusSpec::factor(double t) const
{
  if (width_tp <= 0.0 || t < start_tp || t > start_tp + width_tp) {
    return 1.0;
  }
  const double half = width_tp / 2.0;
  const double g = 1.0 - std::abs(t - (start_tp + half)) / half;
  return 1.0 - depth_fraction * std::max(0.0, g);
}

PhantomSpec PhantomSpec::defaults(std::size_t width, std::size_t height)
{
  PhantomSpec s;
  s.width = width;
  s.height = height;
  const double w = static_cast<double>(width);
  const double h = static_cast<double>(height);
  const double cx = w / 2.0 - 0.5;
  const double cy = h / 2.0 - 0.5;
  s.head = Ellipse{cx, cy, 0.37 * w, 0.45 * h};
  s.ventricle = Ellipse{cx, cy - 0.04 * h, 0.08 * w, 0.12 * h};
  return s;
}

PhantomPreset parse_preset(const std::string & name)
{
  if (name == "default") {
    return PhantomPreset::Default;
  }
  if (name == "lesion") {
    return PhantomPreset::Lesion;
  }
  if (name == "noiseless") {
    return PhantomPreset::Noiseless;
  }
  throw InvalidSpec("unknown phantom preset \"" + name + "\"");
}

PhantomSpec make_preset(PhantomPreset preset, std::size_t width, std::size_t height,
  std::size_t timepoints, std::uint64_t seed)
{
  auto s = PhantomSpec::defaults(width, height);
  s.timepoints = timepoints;
  s.seed = seed;
  switch (preset) {
    case PhantomPreset::Default:
      break;
    case PhantomPreset::Lesion: {
        const double w = static_cast<double>(width);
        const double h = static_cast<double>(height);
        s.lesion = LesionSpec{
          Ellipse{s.head.cx + 0.18 * w, s.head.cy + 0.12 * h, 0.06 * w, 0.06 * h}, -300.0};
        break;
      }
    case PhantomPreset::Noiseless:
      s.noise_std = 0.0;
      break;
  }
  return s;
}

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k)
{
  std::uint64_t z = seed + (k + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace
{

enum class Tissue : std::uint8_t {Air, Skull, Brain, Lesion, Csf};

struct SliceGeometry
{
  Ellipse head;
  Ellipse inner;
  Ellipse ventricle;
  std::optional<Ellipse> lesion;
};

Ellipse scaled(const Ellipse & e, double cx, double cy, double k)
{
  return Ellipse{cx + (e.cx - cx) * k, cy + (e.cy - cy) * k, e.ax * k, e.ay * k};
}

SliceGeometry slice_geometry(const PhantomSpec & spec, std::size_t s)
{
  const double mid = (static_cast<double>(spec.slices) - 1.0) / 2.0;
  const double k = 1.0 - 0.06 * std::abs(static_cast<double>(s) - mid);
  const double cx = spec.head.cx;
  const double cy = spec.head.cy;
  SliceGeometry g;
  g.head = scaled(spec.head, cx, cy, k);
  g.inner = Ellipse{
    g.head.cx, g.head.cy, g.head.ax - spec.skull_thickness, g.head.ay - spec.skull_thickness};
  g.ventricle = scaled(spec.ventricle, cx, cy, k);
  if (spec.lesion) {
    g.lesion = scaled(spec.lesion->shape, cx, cy, k);
  }
  return g;
}

std::vector<Tissue> rasterize(const PhantomSpec & spec, const SliceGeometry & g)
{
  std::vector<Tissue> map(spec.width * spec.height, Tissue::Air);
  for (std::size_t y = 0; y < spec.height; ++y) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double fx = static_cast<double>(x);
      const double fy = static_cast<double>(y);
      Tissue t = Tissue::Air;
      if (g.ventricle.contains(fx, fy)) {
        t = Tissue::Csf;
      } else if (g.lesion && g.lesion->contains(fx, fy)) {
        t = Tissue::Lesion;
      } else if (g.inner.contains(fx, fy)) {
        t = Tissue::Brain;
      } else if (g.head.contains(fx, fy)) {
        t = Tissue::Skull;
      }
      map[y * spec.width + x] = t;
    }
  }
  return map;
}

bool inside_image_with_margin(const Ellipse & e, const PhantomSpec & spec)
{
  return e.cx - e.ax >= 1.0 && e.cy - e.ay >= 1.0 &&
         e.cx + e.ax <= static_cast<double>(spec.width) - 2.0 &&
         e.cy + e.ay <= static_cast<double>(spec.height) - 2.0;
}

// True when every pixel of `inner` and its 4-neighbours lie inside `outer`.
bool strictly_inside(const Ellipse & inner, const Ellipse & outer, const PhantomSpec & spec,
  std::size_t & count)
{
  count = 0;
  for (std::size_t y = 0; y < spec.height; ++y) {
    for (std::size_t x = 0; x < spec.width; ++x) {
      const double fx = static_cast<double>(x);
      const double fy = static_cast<double>(y);
      if (!inner.contains(fx, fy)) {
        continue;
      }
      ++count;
      if (!outer.contains(fx, fy) || !outer.contains(fx - 1, fy) ||
        !outer.contains(fx + 1, fy) || !outer.contains(fx, fy - 1) ||
        !outer.contains(fx, fy + 1))
      {
        return false;
      }
    }
  }
  return true;
}

}  // namespace

void validate(const PhantomSpec & spec)
{
  if (spec.width < 2 || spec.height < 2) {
    throw InvalidSpec("phantom size must be at least 2x2");
  }
  if (spec.timepoints < 1 || spec.slices < 1) {
    throw InvalidSpec("phantom needs at least one slice and one time-point");
  }
  const auto & in = spec.intensities;
  for (double v : {in.air_mean, in.skull_mean, in.brain_mean, in.csf_mean}) {
    if (!(v >= 0.0 && v <= 4095.0)) {
      throw InvalidSpec("class means must lie in [0, 4095]");
    }
  }
  if (!(spec.noise_std >= 0.0)) {
    throw InvalidSpec("noise_std must be non-negative");
  }
  if (!(in.brain_mean - 3.0 * spec.noise_std > in.skull_mean + 3.0 * spec.noise_std)) {
    throw InvalidSpec("brain and skull intensities are not separable at this noise level");
  }
  if (!(spec.bolus.depth_fraction >= 0.0 && spec.bolus.depth_fraction <= 1.0)) {
    throw InvalidSpec("bolus depth_fraction must be in [0, 1]");
  }
  if (!(spec.skull_thickness > 0.0)) {
    throw InvalidSpec("skull_thickness must be positive");
  }
  if (spec.lesion) {
    const double v = in.brain_mean + spec.lesion->intensity_offset;
    if (!(v >= 0.0 && v <= 4095.0)) {
      throw InvalidSpec("lesion intensity must lie in [0, 4095]");
    }
  }

  for (std::size_t s = 0; s < spec.slices; ++s) {
    const auto g = slice_geometry(spec, s);
    const std::string where = "slice " + std::to_string(s) + ": ";
    if (!(g.inner.ax >= 2.0 && g.inner.ay >= 2.0)) {
      throw InvalidSpec(where + "skull ring leaves no room for brain at this image size");
    }
    if (!inside_image_with_margin(g.head, spec)) {
      throw InvalidSpec(where + "head ellipse does not fit inside the image with an air margin");
    }
    std::size_t n = 0;
    if (!(g.ventricle.ax > 0.0 && g.ventricle.ay > 0.0) ||
      !strictly_inside(g.ventricle, g.inner, spec, n) || n == 0)
    {
      throw InvalidSpec(where + "ventricle must lie strictly inside the brain");
    }
    if (g.lesion && (!strictly_inside(*g.lesion, g.inner, spec, n) || n == 0)) {
      throw InvalidSpec(where + "lesion must lie strictly inside the brain");
    }
  }
}

Phantom generate_phantom(const PhantomSpec & spec)
{
  validate(spec);
  const std::size_t w = spec.width;
  const std::size_t h = spec.height;
  const std::size_t n = w * h;
  const auto & in = spec.intensities;
  constexpr double two_pi = 2.0 * std::numbers::pi;
  constexpr double inv53 = 1.0 / 9007199254740992.0;

  std::vector<SliceSeries> slices;
  std::vector<PhantomTruth> truth;
  for (std::size_t s = 0; s < spec.slices; ++s) {
    const auto tissue = rasterize(spec, slice_geometry(spec, s));

    PhantomTruth tr{BinaryMask(w, h), BinaryMask(w, h), BinaryMask(w, h)};
    auto roi = tr.roi_mask.bits_mutable();
    auto brain = tr.brain_mask.bits_mutable();
    auto csf = tr.csf_mask.bits_mutable();
    for (std::size_t i = 0; i < n; ++i) {
      const Tissue t = tissue[i];
      brain[i] = (t == Tissue::Brain || t == Tissue::Lesion || t == Tissue::Csf) ? 1 : 0;
      csf[i] = t == Tissue::Csf ? 1 : 0;
      roi[i] = brain[i] & (csf[i] ^ 1);
    }

    std::vector<Image2D> images;
    images.reserve(spec.timepoints);
    for (std::size_t t = 0; t < spec.timepoints; ++t) {
      const double f = spec.bolus.factor(static_cast<double>(t));
      const double lesion_mean = in.brain_mean + (spec.lesion ? spec.lesion->intensity_offset : 0.0);
      const double level[] = {in.air_mean, in.skull_mean, in.brain_mean * f, lesion_mean * f,
        in.csf_mean};
      const std::uint64_t base = (s * spec.timepoints + t) * n;

      Image2D img(w, h);
      auto px = img.pixels();
      for (std::size_t i = 0; i < n; ++i) {
        double v = level[static_cast<int>(tissue[i])];
        if (spec.noise_std > 0.0) {
          const std::uint64_t p = base + i;
          const double u1 = static_cast<double>((splitmix64_at(spec.seed, 2 * p) >> 11) + 1) *
            inv53;
          const double u2 = static_cast<double>(splitmix64_at(spec.seed, 2 * p + 1) >> 11) * inv53;
          v += spec.noise_std * std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
        }
        v = std::clamp(v, 0.0, 4095.0);
        px[i] = static_cast<std::uint16_t>(std::nearbyint(v));
      }
      images.push_back(std::move(img));
    }
    slices.emplace_back(s, std::move(images));
    truth.push_back(std::move(tr));
  }

  PerfusionStudy::Metadata md{
    {"generator", "perfseg-phantom"},
    {"seed", std::to_string(spec.seed)},
    {"noise_std", std::to_string(spec.noise_std)},
    {"lesion", spec.lesion ? "yes" : "no"}};
  return Phantom{PerfusionStudy(std::move(slices), std::move(md)), std::move(truth)};
}

void write_phantom(const Phantom & phantom, const std::filesystem::path & dir)
{
  save_study(phantom.study, dir);
  std::error_code ec;
  std::filesystem::create_directories(dir / "truth", ec);
  if (ec) {
    throw IoError("cannot create " + (dir / "truth").string() + ": " + ec.message());
  }
  for (std::size_t i = 0; i < phantom.truth.size(); ++i) {
    const auto s = std::to_string(phantom.study.slices()[i].slice_index());
    const auto & tr = phantom.truth[i];
    save_mask(tr.roi_mask, dir / "truth" / ("roi_slice" + s + ".pgm"));
    save_mask(tr.brain_mask, dir / "truth" / ("brain_slice" + s + ".pgm"));
    save_mask(tr.csf_mask, dir / "truth" / ("csf_slice" + s + ".pgm"));
  }
}

}  // namespace perfseg
