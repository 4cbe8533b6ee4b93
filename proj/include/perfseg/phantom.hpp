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

#ifndef PERFSEG__PHANTOM_HPP_
#define PERFSEG__PHANTOM_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "perfseg/types.hpp"

namespace perfseg
{

/// Axis-aligned ellipse in pixel coordinates; `ax` spans x, `ay` spans y.
struct Ellipse
{
  double cx{};
  double cy{};
  double ax{};
  double ay{};

  bool contains(double x, double y) const
  {
    const double u = (x - cx) / ax;
    const double v = (y - cy) / ay;
    return u * u + v * v <= 1.0;
  }
};

/// Class means in 12-bit units.
struct PhantomIntensities
{
  double air_mean{30.0};
  double skull_mean{80.0};
  double brain_mean{900.0};
  double csf_mean{2200.0};
};

/// Triangular signal drop of perfused tissue: zero outside
/// [start_tp, start_tp + width_tp], peak depth at the midpoint.
struct BolusSpec
{
  double start_tp{8.0};
  double depth_fraction{0.35};
  double width_tp{6.0};

  /// Multiplicative factor 1 - depth * g(t).
  double factor(double t) const;
};

struct LesionSpec
{
  Ellipse shape;
  /// Added to brain_mean inside the lesion; follows the bolus like tissue.
  double intensity_offset{};
};

/**
 * @brief Synthetic DSC head phantom parameters.
 *
 * Each slice is air, an elliptical skull ring of `skull_thickness`, brain
 * tissue inside it and a bright ventricle. Slice s scales all geometry
 * about the head centre by 1 - 0.06 |s - (slices - 1) / 2|.
 */
struct PhantomSpec
{
  std::size_t width{256};
  std::size_t height{256};
  std::size_t timepoints{40};
  std::size_t slices{3};
  std::uint64_t seed{42};
  Ellipse head;
  double skull_thickness{6.0};
  Ellipse ventricle;
  PhantomIntensities intensities;
  double noise_std{20.0};
  BolusSpec bolus;
  std::optional<LesionSpec> lesion;

  /// Geometry scaled to the requested image size.
  static PhantomSpec defaults(std::size_t width = 256, std::size_t height = 256);
};

/// Preset names accepted by make_preset.
enum class PhantomPreset
{
  Default,
  Lesion,
  Noiseless
};

/// Throws InvalidSpec for an unknown name.
PhantomPreset parse_preset(const std::string & name);
PhantomSpec make_preset(PhantomPreset preset, std::size_t width, std::size_t height,
  std::size_t timepoints, std::uint64_t seed);

struct PhantomTruth
{
  /// brain tissue without CSF
  BinaryMask roi_mask;
  /// everything inside the skull
  BinaryMask brain_mask;
  BinaryMask csf_mask;
};

struct Phantom
{
  PerfusionStudy study;
  /// One entry per slice, same order as study.slices().
  std::vector<PhantomTruth> truth;
};

/// Throws InvalidSpec when the geometry or intensities violate the phantom
/// invariants (ventricle strictly inside the brain, separable classes).
void validate(const PhantomSpec & spec);

/**
 * @brief Deterministic phantom generation.
 *
 * Noise for pixel (x, y) of time-point t on slice position s uses the two
 * SplitMix64 outputs with indices 2p and 2p + 1 of the stream seeded with
 * `seed`, p = ((s * T + t) * H + y) * W + x, fed through the Box-Muller
 * cosine branch. Values are clamped to [0, 4095] and rounded half-to-even.
 */
Phantom generate_phantom(const PhantomSpec & spec);

/// k-th output of a SplitMix64 generator seeded with `seed`.
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t k);

/// Writes manifest.json, images/slice{S}_t{T}.pgm and
/// truth/{roi,brain,csf}_slice{S}.pgm under `dir`.
void write_phantom(const Phantom & phantom, const std::filesystem::path & dir);

}  // namespace perfseg

#endif  // PERFSEG__PHANTOM_HPP_
