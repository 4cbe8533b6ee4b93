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

#include <doctest.h>

#include <filesystem>
#include <random>

#include "oracles.hpp"
#include "perfseg/io.hpp"
#include "perfseg/phantom.hpp"
#include "temp_dir.hpp"

using namespace perfseg;
namespace fs = std::filesystem;

TEST_CASE("mask PGM bytes") {
  CHECK(encode_mask_pgm(BinaryMask(2, 2, true)) == std::string("P5\n2 2\n255\n\xff\xff\xff\xff"));
  CHECK(encode_mask_pgm(BinaryMask(2, 2, false)) ==
    std::string("P5\n2 2\n255\n\0\0\0\0", 15));
  CHECK(decode_mask_pgm(std::string("P5\n2 2\n255\n\xff\xff\xff\xff")) == BinaryMask(2, 2, true));
  CHECK(decode_mask_pgm(std::string("P5\n2 2\n255\n\x7f\x80\x00\xff", 15)) ==
    BinaryMask(2, 2, {0, 1, 0, 1}));
}

TEST_CASE("image PGM bytes") {
  const Image2D img(2, 2, std::vector<std::uint16_t>{0, 1, 2, 3});
  const std::string expected("P5\n2 2\n65535\n\x00\x00\x00\x01\x00\x02\x00\x03", 21);
  CHECK(encode_image_pgm(img) == expected);
  CHECK(decode_image_pgm(expected) == img);
}

TEST_CASE("8-bit PGM is widened as-is") {
  const std::string bytes("P5\n# comment\n3 2\n255\n\x00\x07\xff\x10\x20\x30", 27);
  const auto img = decode_image_pgm(bytes);
  CHECK(img.width() == 3);
  CHECK(img.height() == 2);
  CHECK(img == Image2D(3, 2, std::vector<std::uint16_t>{0, 7, 255, 16, 32, 48}));
}

TEST_CASE("PGM decode errors") {
  CHECK_THROWS_AS(decode_image_pgm("P2\n2 2\n255\n0 0 0 0"), ImageDecodeError);
  CHECK_THROWS_AS(decode_image_pgm(std::string("P5\n2 2\n255\n\0\0\0", 14)), ImageDecodeError);
  CHECK_THROWS_AS(decode_image_pgm(std::string("P5\n2 2\n255\n\0\0\0\0\0", 16)),
    ImageDecodeError);
  CHECK_THROWS_AS(decode_image_pgm("P5\n1 2\n255\n\0\0"), ImageDecodeError);
  CHECK_THROWS_AS(decode_image_pgm("P5\n2 2\n0\n"), ImageDecodeError);
  CHECK_THROWS_AS(decode_image_pgm(std::string("P5\n2 2\n100\n\0\0\0\xff", 15)), ImageDecodeError);
  // masks require maxval 255
  CHECK_THROWS_AS(decode_mask_pgm(std::string("P5\n2 2\n1\n\0\1\0\1", 13)), ImageDecodeError);
  CHECK_THROWS_AS(load_image("/nonexistent/x.pgm"), ImageDecodeError);
}

TEST_CASE("PGM round trips on random data") {
  std::mt19937_64 rng(17);
  for (int iter = 0; iter < 50; ++iter) {
    const auto img = oracle::random_image(rng, 2 + iter % 13, 2 + iter % 7, 65535);
    CHECK(decode_image_pgm(encode_image_pgm(img)) == img);
    const auto m = oracle::random_mask(rng, 20);
    CHECK(decode_mask_pgm(encode_mask_pgm(m)) == m);
  }
}

TEST_CASE("file round trip") {
  testing::TempDir dir;
  const Image2D img(3, 2, std::vector<std::uint16_t>{0, 4095, 65535, 1, 2, 3});
  save_image(img, dir.path() / "a.pgm");
  CHECK(load_image(dir.path() / "a.pgm") == img);
  const BinaryMask m(3, 2, {1, 0, 1, 0, 1, 1});
  save_mask(m, dir.path() / "m.pgm");
  CHECK(load_mask(dir.path() / "m.pgm") == m);
  CHECK_THROWS_AS(save_mask(m, dir.path() / "missing" / "m.pgm"), IoError);
}

TEST_CASE("manifest parsing") {
  const auto m = parse_manifest(R"({
    "version": 1, "width": 4, "height": 4, "bit_depth": 12,
    "metadata": {"patient": "anon"},
    "slices": [{"slice_index": 2, "timepoints": ["a.pgm", "b.pgm"]}]})");
  CHECK(m.width == 4);
  CHECK(m.bit_depth == 12);
  CHECK(m.metadata.at("patient") == "anon");
  CHECK(m.slices.at(0).slice_index == 2);
  CHECK(m.slices.at(0).timepoints == std::vector<std::string>{"a.pgm", "b.pgm"});
  CHECK(parse_manifest(render_manifest(m)) == m);

  CHECK_THROWS_AS(parse_manifest("{not json"), ManifestParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"version": 1})"), ManifestParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"version": 2, "width": 4, "height": 4, "bit_depth": 12,
    "slices": []})"), ManifestParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"version": 1, "width": 4, "height": 4, "bit_depth": 17,
    "slices": []})"), ManifestParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"version": 1, "width": 4, "height": 4, "bit_depth": 12,
    "slices": [{"slice_index": 0, "timepoints": []}]})"), ManifestParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"version": 1, "width": -4, "height": 4, "bit_depth": 12,
    "slices": []})"), ManifestParseError);
  CHECK_THROWS_AS(parse_manifest(R"({"version": 1, "width": 4, "height": 4, "bit_depth": 12,
    "slices": [{"slice_index": 0, "timepoints": ["a", "b", "c"]},
               {"slice_index": 1, "timepoints": ["a", "b", "c", "d"]}]})"), InconsistentStudy);
}

TEST_CASE("load_study minimal and error cases") {
  testing::TempDir dir;
  save_image(Image2D(4, 4, std::uint16_t{9}), dir.path() / "only.pgm");
  write_file(dir.path() / "manifest.json", R"({"version": 1, "width": 4, "height": 4,
    "bit_depth": 12, "slices": [{"slice_index": 0, "timepoints": ["only.pgm"]}]})");
  const auto study = load_study(dir.path() / "manifest.json");
  REQUIRE(study.slices().size() == 1);
  CHECK(study.slices()[0].timepoints() == 1);
  CHECK(study.slices()[0][0] == Image2D(4, 4, std::uint16_t{9}));

  write_file(dir.path() / "wrong_dims.json", R"({"version": 1, "width": 5, "height": 4,
    "bit_depth": 12, "slices": [{"slice_index": 0, "timepoints": ["only.pgm"]}]})");
  CHECK_THROWS_AS(load_study(dir.path() / "wrong_dims.json"), ImageDecodeError);

  write_file(dir.path() / "missing.json", R"({"version": 1, "width": 4, "height": 4,
    "bit_depth": 12, "slices": [{"slice_index": 0, "timepoints": ["nope.pgm"]}]})");
  CHECK_THROWS_AS(load_study(dir.path() / "missing.json"), ImageDecodeError);

  save_image(Image2D(4, 4, std::uint16_t{5000}), dir.path() / "deep.pgm");
  write_file(dir.path() / "depth.json", R"({"version": 1, "width": 4, "height": 4,
    "bit_depth": 12, "slices": [{"slice_index": 0, "timepoints": ["deep.pgm"]}]})");
  CHECK_THROWS_AS(load_study(dir.path() / "depth.json"), ImageDecodeError);

  CHECK_THROWS_AS(load_study(dir.path() / "absent.json"), IoError);
}

TEST_CASE("study round trip is bit exact") {
  testing::TempDir dir;
  auto spec = PhantomSpec::defaults(48, 40);
  spec.timepoints = 5;
  spec.slices = 2;
  const auto study = generate_phantom(spec).study;
  const auto manifest = save_study(study, dir.path() / "a");
  const auto loaded = load_study(manifest);
  CHECK(loaded == study);

  save_study(loaded, dir.path() / "b");
  CHECK(read_file(dir.path() / "a" / "manifest.json") ==
    read_file(dir.path() / "b" / "manifest.json"));
  for (std::size_t t = 0; t < 5; ++t) {
    const auto name = study_image_name(1, t);
    CHECK(read_file(dir.path() / "a" / name) == read_file(dir.path() / "b" / name));
  }
}
