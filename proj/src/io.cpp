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

#include "perfseg/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace perfseg
{

namespace fs = std::filesystem;

namespace
{

struct PgmHeader
{
  std::size_t width{};
  std::size_t height{};
  unsigned maxval{};
  std::size_t data_offset{};
};

class HeaderReader
{
public:
  explicit HeaderReader(std::string_view bytes)
  : bytes_{bytes} {}

  void skip_space_and_comments()
  {
    while (pos_ < bytes_.size()) {
      const char c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') {
          ++pos_;
        }
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        return;
      }
    }
  }

  std::size_t number(const char * what)
  {
    skip_space_and_comments();
    std::size_t v = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) {
      v = v * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (v > 1'000'000'000) {
        throw ImageDecodeError(std::string("PGM ") + what + " too large");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0) {
      throw ImageDecodeError(std::string("PGM header: expected ") + what);
    }
    return v;
  }

  std::size_t pos() const {return pos_;}
  void advance(std::size_t n) {pos_ += n;}

private:
  std::string_view bytes_;
  std::size_t pos_{0};
};

PgmHeader parse_header(std::string_view bytes)
{
  if (bytes.size() < 2 || bytes[0] != 'P' || bytes[1] != '5') {
    throw ImageDecodeError("not a binary PGM (P5) file");
  }
  HeaderReader r(bytes);
  r.advance(2);
  PgmHeader h;
  h.width = r.number("width");
  h.height = r.number("height");
  const auto maxval = r.number("maxval");
  if (maxval == 0 || maxval > 65535) {
    throw ImageDecodeError("PGM maxval out of range: " + std::to_string(maxval));
  }
  h.maxval = static_cast<unsigned>(maxval);
  // exactly one whitespace byte separates the header from the raster
  if (r.pos() >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[r.pos()]))) {
    throw ImageDecodeError("PGM header not terminated by whitespace");
  }
  h.data_offset = r.pos() + 1;
  if (h.width < 2 || h.height < 2) {
    throw ImageDecodeError(
            "PGM dimensions " + std::to_string(h.width) + "x" + std::to_string(h.height) +
            " below the 2x2 minimum");
  }
  const std::size_t sample = h.maxval > 255 ? 2 : 1;
  const std::size_t need = h.width * h.height * sample;
  const std::size_t have = bytes.size() - h.data_offset;
  if (have < need) {
    throw ImageDecodeError(
            "PGM raster truncated: " + std::to_string(have) + " of " + std::to_string(need) +
            " bytes");
  }
  if (have > need) {
    throw ImageDecodeError("trailing data after PGM raster (multi-image files unsupported)");
  }
  return h;
}

std::string header(std::size_t w, std::size_t h, unsigned maxval)
{
  return "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n" + std::to_string(maxval) +
         "\n";
}

}  // namespace

std::string encode_image_pgm(const Image2D & img)
{
  std::string out = header(img.width(), img.height(), 65535);
  out.reserve(out.size() + img.size() * 2);
  for (std::uint16_t v : img.pixels()) {
    out.push_back(static_cast<char>(v >> 8));
    out.push_back(static_cast<char>(v & 0xff));
  }
  return out;
}

Image2D decode_image_pgm(std::string_view bytes)
{
  const auto h = parse_header(bytes);
  const auto * p = reinterpret_cast<const unsigned char *>(bytes.data() + h.data_offset);
  std::vector<std::uint16_t> px(h.width * h.height);
  if (h.maxval > 255) {
    for (std::size_t i = 0; i < px.size(); ++i) {
      px[i] = static_cast<std::uint16_t>((p[2 * i] << 8) | p[2 * i + 1]);
    }
  } else {
    std::copy(p, p + px.size(), px.begin());
  }
  for (auto v : px) {
    if (v > h.maxval) {
      throw ImageDecodeError(
              "PGM sample " + std::to_string(v) + " exceeds maxval " + std::to_string(h.maxval));
    }
  }
  return Image2D(h.width, h.height, std::move(px));
}

std::string encode_mask_pgm(const BinaryMask & m)
{
  std::string out = header(m.width(), m.height(), 255);
  out.reserve(out.size() + m.size());
  for (auto b : m.bits()) {
    out.push_back(static_cast<char>(b ? 0xff : 0x00));
  }
  return out;
}

BinaryMask decode_mask_pgm(std::string_view bytes)
{
  const auto h = parse_header(bytes);
  if (h.maxval != 255) {
    throw ImageDecodeError("mask PGM must have maxval 255, got " + std::to_string(h.maxval));
  }
  const auto * p = reinterpret_cast<const unsigned char *>(bytes.data() + h.data_offset);
  std::vector<std::uint8_t> bits(h.width * h.height);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    bits[i] = p[i] > 127 ? 1 : 0;
  }
  return BinaryMask(h.width, h.height, std::move(bits));
}

std::string read_file(const fs::path & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("cannot open " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) {
    throw IoError("read failed: " + path.string());
  }
  return ss.str();
}

void write_file(const fs::path & path, std::string_view bytes)
{
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open for writing " + path.string());
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) {
    throw IoError("write failed: " + path.string());
  }
}

namespace
{
template<class Fn>
auto decode_file(const fs::path & path, Fn decode)
{
  std::string bytes;
  try {
    bytes = read_file(path);
  } catch (const IoError & e) {
    throw ImageDecodeError(e.what());
  }
  try {
    return decode(bytes);
  } catch (const ImageDecodeError & e) {
    throw ImageDecodeError(path.string() + ": " + e.what());
  }
}
}  // namespace

Image2D load_image(const fs::path & path)
{
  return decode_file(path, [](std::string_view b) {return decode_image_pgm(b);});
}

void save_image(const Image2D & img, const fs::path & path)
{
  write_file(path, encode_image_pgm(img));
}

BinaryMask load_mask(const fs::path & path)
{
  return decode_file(path, [](std::string_view b) {return decode_mask_pgm(b);});
}

void save_mask(const BinaryMask & m, const fs::path & path)
{
  write_file(path, encode_mask_pgm(m));
}

// ---------------------------------------------------------------------------
// Manifest

namespace
{
using nlohmann::json;
using nlohmann::ordered_json;

const json & field(const json & obj, const char * key, const char * where)
{
  if (!obj.is_object() || !obj.contains(key)) {
    throw ManifestParseError(std::string(where) + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

std::size_t unsigned_field(const json & obj, const char * key, const char * where)
{
  const auto & v = field(obj, key, where);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ManifestParseError(
            std::string(where) + ": \"" + key + "\" must be a non-negative integer");
  }
  return v.get<std::size_t>();
}
}  // namespace

StudyManifest parse_manifest(std::string_view json_text)
{
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error & e) {
    throw ManifestParseError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) {
    throw ManifestParseError("manifest root must be an object");
  }

  StudyManifest m;
  m.version = static_cast<int>(unsigned_field(doc, "version", "manifest"));
  if (m.version != StudyManifest::kVersion) {
    throw ManifestParseError("unsupported manifest version " + std::to_string(m.version));
  }
  m.width = unsigned_field(doc, "width", "manifest");
  m.height = unsigned_field(doc, "height", "manifest");
  m.bit_depth = static_cast<int>(unsigned_field(doc, "bit_depth", "manifest"));
  if (m.width < 2 || m.height < 2) {
    throw ManifestParseError("manifest dimensions must be at least 2x2");
  }
  if (m.bit_depth < 1 || m.bit_depth > 16) {
    throw ManifestParseError("bit_depth must be in 1..16, got " + std::to_string(m.bit_depth));
  }

  if (doc.contains("metadata")) {
    const auto & md = doc.at("metadata");
    if (!md.is_object()) {
      throw ManifestParseError("\"metadata\" must be an object of strings");
    }
    for (const auto & [k, v] : md.items()) {
      if (!v.is_string()) {
        throw ManifestParseError("metadata value for \"" + k + "\" must be a string");
      }
      m.metadata[k] = v.get<std::string>();
    }
  }

  const auto & slices = field(doc, "slices", "manifest");
  if (!slices.is_array()) {
    throw ManifestParseError("\"slices\" must be an array");
  }
  for (const auto & s : slices) {
    ManifestSlice ms;
    ms.slice_index = unsigned_field(s, "slice_index", "slice");
    const auto & tps = field(s, "timepoints", "slice");
    if (!tps.is_array() || tps.empty()) {
      throw ManifestParseError(
              "slice " + std::to_string(ms.slice_index) +
              ": \"timepoints\" must be a non-empty array");
    }
    for (const auto & p : tps) {
      if (!p.is_string()) {
        throw ManifestParseError(
                "slice " + std::to_string(ms.slice_index) + ": time-point paths must be strings");
      }
      ms.timepoints.push_back(p.get<std::string>());
    }
    m.slices.push_back(std::move(ms));
  }

  for (const auto & s : m.slices) {
    if (s.timepoints.size() != m.slices.front().timepoints.size()) {
      throw InconsistentStudy(
              "slice " + std::to_string(s.slice_index) + " lists " +
              std::to_string(s.timepoints.size()) + " time-points, slice " +
              std::to_string(m.slices.front().slice_index) + " lists " +
              std::to_string(m.slices.front().timepoints.size()));
    }
  }
  return m;
}

std::string render_manifest(const StudyManifest & m)
{
  ordered_json doc;
  doc["version"] = m.version;
  doc["width"] = m.width;
  doc["height"] = m.height;
  doc["bit_depth"] = m.bit_depth;
  ordered_json md = ordered_json::object();
  for (const auto & [k, v] : m.metadata) {
    md[k] = v;
  }
  doc["metadata"] = std::move(md);
  ordered_json slices = ordered_json::array();
  for (const auto & s : m.slices) {
    slices.push_back(ordered_json{{"slice_index", s.slice_index}, {"timepoints", s.timepoints}});
  }
  doc["slices"] = std::move(slices);
  return doc.dump(2) + "\n";
}

PerfusionStudy load_study(const fs::path & manifest_path)
{
  const auto manifest = parse_manifest(read_file(manifest_path));
  const fs::path base = manifest_path.parent_path();
  const unsigned limit = (1u << manifest.bit_depth) - 1;

  std::vector<SliceSeries> slices;
  slices.reserve(manifest.slices.size());
  for (const auto & s : manifest.slices) {
    std::vector<Image2D> images;
    images.reserve(s.timepoints.size());
    for (const auto & rel : s.timepoints) {
      const fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
      auto img = load_image(p);
      if (img.width() != manifest.width || img.height() != manifest.height) {
        throw ImageDecodeError(
                p.string() + ": image is " + std::to_string(img.width()) + "x" +
                std::to_string(img.height()) + ", manifest declares " +
                std::to_string(manifest.width) + "x" + std::to_string(manifest.height));
      }
      const auto px = img.pixels();
      if (std::any_of(px.begin(), px.end(), [&](std::uint16_t v) {return v > limit;})) {
        throw ImageDecodeError(
                p.string() + ": sample exceeds declared bit depth " +
                std::to_string(manifest.bit_depth));
      }
      images.push_back(std::move(img));
    }
    slices.emplace_back(s.slice_index, std::move(images));
  }
  return PerfusionStudy(std::move(slices), manifest.metadata);
}

std::string study_image_name(std::size_t slice_index, std::size_t timepoint)
{
  return "images/slice" + std::to_string(slice_index) + "_t" + std::to_string(timepoint) + ".pgm";
}

fs::path save_study(const PerfusionStudy & study, const fs::path & dir)
{
  std::error_code ec;
  fs::create_directories(dir / "images", ec);
  if (ec) {
    throw IoError("cannot create " + (dir / "images").string() + ": " + ec.message());
  }

  StudyManifest m;
  m.metadata = study.metadata();
  std::uint16_t max_px = 0;
  for (const auto & s : study.slices()) {
    m.width = s.width();
    m.height = s.height();
    ManifestSlice ms{s.slice_index(), {}};
    for (std::size_t t = 0; t < s.timepoints(); ++t) {
      const auto & img = s[t];
      const auto px = img.pixels();
      max_px = std::max(max_px, *std::max_element(px.begin(), px.end()));
      auto name = study_image_name(s.slice_index(), t);
      save_image(img, dir / name);
      ms.timepoints.push_back(std::move(name));
    }
    m.slices.push_back(std::move(ms));
  }
  m.bit_depth = max_px <= 4095 ? 12 : 16;
  if (study.empty()) {
    // an empty study still needs declared dimensions to form a valid manifest
    m.width = 2;
    m.height = 2;
  }
  const auto manifest_path = dir / "manifest.json";
  write_file(manifest_path, render_manifest(m));
  return manifest_path;
}

}  // namespace perfseg
