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

#include "perfseg/io.hpp"
#include "perfseg/phantom.hpp"
#include "perfseg/pipeline.hpp"
#include "temp_dir.hpp"

using namespace perfseg;

namespace
{
PhantomSpec small(double noise = 20.0)
{
  auto s = PhantomSpec::defaults(80, 72);
  s.timepoints = 16;
  s.noise_std = noise;
  return s;
}
}  // namespace

TEST_CASE("splitmix64 reference outputs") {
  // first outputs of the reference generator seeded with 0
  CHECK(splitmix64_at(0, 0) == 0xe220a8397b1dcdafULL);
  CHECK(splitmix64_at(0, 1) == 0x6e789e6aa1b965f4ULL);
  CHECK(splitmix64_at(0, 2) == 0x06c45d188009454fULL);
}

TEST_CASE("bolus factor is a triangular dip") {
  const BolusSpec b;
  CHECK(b.factor(0.0) == 1.0);
  CHECK(b.factor(8.0) == 1.0);
  CHECK(b.factor(11.0) == doctest::Approx(0.65));
  CHECK(b.factor(9.5) == doctest::Approx(1.0 - 0.35 * 0.5));
  CHECK(b.factor(14.0) == 1.0);
  CHECK(b.factor(39.0) == 1.0);
}

TEST_CASE("generation is deterministic and seed dependent") {
  const auto a = generate_phantom(small());
  const auto b = generate_phantom(small());
  CHECK(a.study == b.study);
  auto other = small();
  other.seed = 43;
  CHECK_FALSE(generate_phantom(other).study == a.study);
}

TEST_CASE("truth masks are consistent") {
  auto spec = small();
  spec.lesion = make_preset(PhantomPreset::Lesion, 80, 72, 16, 42).lesion;
  const auto ph = generate_phantom(spec);
  REQUIRE(ph.truth.size() == spec.slices);
  for (const auto & t : ph.truth) {
    for (std::size_t i = 0; i < t.roi_mask.size(); ++i) {
      CHECK(t.roi_mask.bits()[i] == (t.brain_mask.bits()[i] & (t.csf_mask.bits()[i] ^ 1)));
    }
    CHECK(mask_count(t.csf_mask) > 0);
    CHECK(mask_subset(t.csf_mask, t.brain_mask));
  }
}

TEST_CASE("noiseless phantom is piecewise constant") {
  const auto ph = generate_phantom(small(0.0));
  for (std::size_t s = 0; s < ph.truth.size(); ++s) {
    const auto & series = ph.study.slices()[s];
    for (std::size_t t = 0; t < 8; ++t) {
      const auto st = stats_in_mask(series[t], ph.truth[s].roi_mask);
      CHECK(st.mean == 900.0);
      CHECK(st.std == 0.0);
      CHECK(stats_in_mask(series[t], ph.truth[s].csf_mask).std == 0.0);
    }
    // bolus peak
    CHECK(stats_in_mask(series[11], ph.truth[s].roi_mask).mean == 585.0);
  }
}

TEST_CASE("noise has the configured spread") {
  auto spec = PhantomSpec::defaults();
  spec.timepoints = 1;
  spec.slices = 1;
  const auto ph = generate_phantom(spec);
  const auto st = stats_in_mask(ph.study.slices()[0][0], ph.truth[0].roi_mask);
  CHECK(st.mean == doctest::Approx(900.0).epsilon(0.01));
  CHECK(st.std == doctest::Approx(20.0).epsilon(0.05));
}

TEST_CASE("noiseless thresholds separate the tissue classes") {
  const auto spec = PhantomSpec::defaults();
  auto noiseless = spec;
  noiseless.noise_std = 0.0;
  const auto ph = generate_phantom(noiseless);
  const auto & in = spec.intensities;
  for (const auto & series : ph.study.slices()) {
    const auto r = segment_slice(series, PipelineConfig{});
    CHECK(in.skull_mean < r.t_low);
    CHECK(r.t_low < in.brain_mean * (1.0 - spec.bolus.depth_fraction));
    CHECK(in.brain_mean < r.t_high);
    CHECK(r.t_high < in.csf_mean);
  }
}

TEST_CASE("invalid specs are rejected") {
  CHECK_THROWS_AS(generate_phantom(PhantomSpec::defaults(8, 8)), InvalidSpec);

  auto s = small();
  s.ventricle.ax = 40.0;
  CHECK_THROWS_AS(validate(s), InvalidSpec);

  s = small();
  s.intensities.csf_mean = 5000.0;
  CHECK_THROWS_AS(validate(s), InvalidSpec);

  s = small();
  s.noise_std = 200.0;
  CHECK_THROWS_AS(validate(s), InvalidSpec);

  s = small();
  s.timepoints = 0;
  CHECK_THROWS_AS(validate(s), InvalidSpec);

  s = small();
  s.head.ax = 60.0;
  CHECK_THROWS_AS(validate(s), InvalidSpec);

  CHECK_THROWS_AS(parse_preset("fancy"), InvalidSpec);
  CHECK_NOTHROW(validate(small()));
}

TEST_CASE("write_phantom layout round trips") {
  testing::TempDir dir;
  auto spec = small();
  spec.timepoints = 3;
  spec.slices = 2;
  const auto ph = generate_phantom(spec);
  write_phantom(ph, dir.path());

  namespace fs = std::filesystem;
  CHECK(fs::exists(dir.path() / "manifest.json"));
  CHECK(fs::exists(dir.path() / "images" / "slice1_t2.pgm"));
  CHECK(load_study(dir.path() / "manifest.json") == ph.study);
  for (std::size_t s = 0; s < 2; ++s) {
    const auto n = std::to_string(s);
    CHECK(load_mask(dir.path() / "truth" / ("roi_slice" + n + ".pgm")) == ph.truth[s].roi_mask);
    CHECK(load_mask(dir.path() / "truth" / ("brain_slice" + n + ".pgm")) ==
      ph.truth[s].brain_mask);
    CHECK(load_mask(dir.path() / "truth" / ("csf_slice" + n + ".pgm")) == ph.truth[s].csf_mask);
  }
}
