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

#ifndef PERFSEG__IO_HPP_
#define PERFSEG__IO_HPP_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "perfseg/types.hpp"

namespace perfseg
{

// Binary PGM (P5). Images: maxval 65535 with big-endian 16-bit samples on
// write; any maxval up to 65535 is accepted on read and samples are kept
// as stored. Masks: maxval 255, 0 = background, 255 = foreground.

std::string encode_image_pgm(const Image2D & img);
/// Throws ImageDecodeError.
Image2D decode_image_pgm(std::string_view bytes);
std::string encode_mask_pgm(const BinaryMask & m);
/// Samples above 127 become foreground. Throws ImageDecodeError.
BinaryMask decode_mask_pgm(std::string_view bytes);

Image2D load_image(const std::filesystem::path & path);
void save_image(const Image2D & img, const std::filesystem::path & path);
BinaryMask load_mask(const std::filesystem::path & path);
void save_mask(const BinaryMask & m, const std::filesystem::path & path);

/// Whole-file read / write; throw IoError.
std::string read_file(const std::filesystem::path & path);
void write_file(const std::filesystem::path & path, std::string_view bytes);

struct ManifestSlice
{
  std::size_t slice_index{};
  /// Image paths in acquisition order, relative to the manifest directory
  /// unless absolute.
  std::vector<std::string> timepoints;

  bool operator==(const ManifestSlice &) const = default;
};

/**
 * @brief JSON study description.
 *
 *     {
 *       "version": 1,
 *       "width": 256, "height": 256, "bit_depth": 12,
 *       "metadata": {"patient": "..."},
 *       "slices": [{"slice_index": 0, "timepoints": ["images/slice0_t0.pgm", ...]}]
 *     }
 *
 * "metadata" is optional.
 */
struct StudyManifest
{
  static constexpr int kVersion = 1;

  int version{kVersion};
  std::size_t width{};
  std::size_t height{};
  int bit_depth{16};
  PerfusionStudy::Metadata metadata;
  std::vector<ManifestSlice> slices;

  bool operator==(const StudyManifest &) const = default;
};

/// Throws ManifestParseError on malformed JSON or fields, InconsistentStudy
/// on ragged time-point lists.
StudyManifest parse_manifest(std::string_view json_text);
std::string render_manifest(const StudyManifest & manifest);

/// Throws ManifestParseError, ImageDecodeError, InconsistentStudy, IoError.
PerfusionStudy load_study(const std::filesystem::path & manifest_path);

/// Relative image path used by save_study for one slice / time-point.
std::string study_image_name(std::size_t slice_index, std::size_t timepoint);

/// Writes `dir`/manifest.json and `dir`/images/slice{S}_t{T}.pgm. bit_depth
/// is 12 when every sample fits, 16 otherwise. Returns the manifest path.
std::filesystem::path save_study(const PerfusionStudy & study, const std::filesystem::path & dir);

}  // namespace perfseg

#endif  // PERFSEG__IO_HPP_
