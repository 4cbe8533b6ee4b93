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

#include <random>

#include "oracles.hpp"
#include "perfseg/phantom.hpp"
#include "perfseg/projection.hpp"

using namespace perfseg;

namespace
{
Image2D transpose(const Image2D & img)
{
  Image2D out(img.height(), img.width());
  for (std::size_t y = 0; y < img.height(); ++y) {
    for (std::size_t x = 0; x < img.width(); ++x) {
      out(y, x) = img(x, y);
    }
  }
  return out;
}

Image2D centered_rectangle()
{
  Image2D img(32, 32, std::uint16_t{0});
  for (std::size_t y = 10; y <= 21; ++y) {
    for (std::size_t x = 8; x <= 23; ++x) {
      img(x, y) = 1000;
    }
  }
  return img;
}
}  // namespace

TEST_CASE("std_projection of a constant image is zero") {
  const Image2D img(4, 4, std::uint16_t{7});
  for (auto axis : {Axis::Horizontal, Axis::Vertical}) {
    const auto p = std_projection(img, axis);
    REQUIRE(p.values.size() == 4);
    for (double v : p.values) {
      CHECK(v == 0.0);
    }
  }
}

TEST_CASE("std_projection 2x2 worked example") {
  const Image2D img(2, 2, std::vector<std::uint16_t>{1, 3, 5, 7});
  const auto h = std_projection(img, Axis::Horizontal);
  CHECK(h.values[0] == doctest::Approx(2.8284271247461903).epsilon(1e-12));
  CHECK(h.values[1] == doctest::Approx(2.8284271247461903).epsilon(1e-12));
  const auto v = std_projection(img, Axis::Vertical);
  CHECK(v.values[0] == doctest::Approx(1.4142135623730951).epsilon(1e-12));
  CHECK(v.values[1] == doctest::Approx(1.4142135623730951).epsilon(1e-12));
}

TEST_CASE("std_projection matches exact integer oracle") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> side(2, 40);
  for (int iter = 0; iter < 100; ++iter) {
    const auto img = oracle::random_image(rng, side(rng), side(rng));
    const auto h = std_projection(img, Axis::Horizontal);
    for (std::size_t x = 0; x < img.width(); ++x) {
      std::vector<std::uint16_t> col;
      for (std::size_t y = 0; y < img.height(); ++y) {
        col.push_back(img(x, y));
      }
      CHECK(oracle::rel_close(h.values[x], oracle::exact_std(col), 1e-9));
    }
    const auto v = std_projection(img, Axis::Vertical);
    for (std::size_t y = 0; y < img.height(); ++y) {
      std::vector<std::uint16_t> row;
      for (std::size_t x = 0; x < img.width(); ++x) {
        row.push_back(img(x, y));
      }
      CHECK(oracle::rel_close(v.values[y], oracle::exact_std(row), 1e-9));
    }
  }
}

TEST_CASE("std_projection shift and scale behaviour") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> a_dist(-5.0, 5.0);
  std::uniform_real_distribution<double> b_dist(-1000.0, 1000.0);
  for (int iter = 0; iter < 50; ++iter) {
    const auto img = image_cast<double>(oracle::random_image(rng, 17, 13));
    const double a = a_dist(rng);
    const double b = b_dist(rng);
    RealImage shifted = img;
    RealImage affine = img;
    for (std::size_t i = 0; i < img.size(); ++i) {
      shifted.pixels()[i] += b;
      affine.pixels()[i] = a * affine.pixels()[i] + b;
    }
    for (auto axis : {Axis::Horizontal, Axis::Vertical}) {
      const auto p0 = std_projection(img, axis);
      const auto p1 = std_projection(shifted, axis);
      const auto p2 = std_projection(affine, axis);
      for (std::size_t i = 0; i < p0.values.size(); ++i) {
        CHECK(oracle::rel_close(p1.values[i], p0.values[i], 1e-9));
        CHECK(oracle::rel_close(p2.values[i], std::abs(a) * p0.values[i], 1e-9));
      }
    }
  }
}

TEST_CASE("first_derivative stencil") {
  auto d = first_derivative({Axis::Horizontal, {0, 0, 4, 4}});
  CHECK(d.values == std::vector<double>{0, 2, 2, 0});
  d = first_derivative({Axis::Horizontal, {3, 3, 3}});
  CHECK(d.values == std::vector<double>{0, 0, 0});
  d = first_derivative({Axis::Horizontal, {0, 1, 2, 3}});
  CHECK(d.values == std::vector<double>{1, 1, 1, 1});
  d = first_derivative({Axis::Horizontal, {2, 5}});
  CHECK(d.values == std::vector<double>{3, 3});
  CHECK_THROWS_AS(first_derivative({Axis::Horizontal, {1}}), ProfileTooShort);
}

TEST_CASE("first_derivative telescopes under trapezoid weights") {
  // end weights 1/2: the weighted sum collapses to p[last] - p[0], so it
  // vanishes on equal-ended profiles
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> v(0.0, 1000.0);
  for (int iter = 0; iter < 100; ++iter) {
    std::vector<double> p(2 + iter % 30);
    for (auto & x : p) {
      x = v(rng);
    }
    if (iter % 2 == 0) {
      p.back() = p.front();
    }
    const auto d = first_derivative({Axis::Vertical, p}).values;
    double sum = 0.5 * (d.front() + d.back());
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < d.size(); ++i) {
      sum += d[i];
    }
    for (double x : d) {
      scale += std::abs(x);
    }
    CHECK(std::abs(sum - (p.back() - p.front())) <= 1e-9 * std::max(scale, 1.0));
  }
}

TEST_CASE("brain_crop_box finds a centred rectangle") {
  const auto box = brain_crop_box(centered_rectangle());
  CHECK(std::abs(static_cast<int>(box.x0) - 8) <= 1);
  CHECK(std::abs(static_cast<int>(box.x1) - 23) <= 1);
  CHECK(std::abs(static_cast<int>(box.y0) - 10) <= 1);
  CHECK(std::abs(static_cast<int>(box.y1) - 21) <= 1);
}

TEST_CASE("brain_crop_box on a constant image is degenerate") {
  CHECK_THROWS_AS(brain_crop_box(Image2D(8, 8, std::uint16_t{5})), DegenerateBrainBox);
}

TEST_CASE("brain_crop_box contains the phantom brain") {
  auto spec = PhantomSpec::defaults();
  spec.timepoints = 4;
  const auto ph = generate_phantom(spec);
  for (std::size_t s = 0; s < ph.study.slices().size(); ++s) {
    const auto box = brain_crop_box(ph.study.slices()[s][3]);
    const auto & brain = ph.truth[s].brain_mask;
    for (std::size_t y = 0; y < brain.height(); ++y) {
      for (std::size_t x = 0; x < brain.width(); ++x) {
        if (brain(x, y)) {
          REQUIRE((x >= box.x0 && x <= box.x1 && y >= box.y0 && y <= box.y1));
        }
      }
    }
  }
}

TEST_CASE("brain_crop_box is invariant under positive affine transforms") {
  auto spec = PhantomSpec::defaults(96, 96);
  spec.timepoints = 1;
  spec.slices = 1;
  const auto img = image_cast<double>(generate_phantom(spec).study.slices()[0][0]);
  const auto box = brain_crop_box(img);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> a_dist(0.1, 10.0);
  std::uniform_real_distribution<double> b_dist(-500.0, 500.0);
  for (int iter = 0; iter < 30; ++iter) {
    const double a = a_dist(rng);
    const double b = b_dist(rng);
    RealImage t = img;
    for (auto & v : t.pixels()) {
      v = a * v + b;
    }
    CHECK(brain_crop_box(t) == box);
  }
}

TEST_CASE("transpose swaps profiles and box edges") {
  std::mt19937_64 rng(21);
  const auto img = oracle::random_image(rng, 9, 14);
  const auto tr = transpose(img);
  CHECK(std_projection(img, Axis::Horizontal).values ==
    std_projection(tr, Axis::Vertical).values);
  CHECK(std_projection(img, Axis::Vertical).values ==
    std_projection(tr, Axis::Horizontal).values);

  const auto rect = centered_rectangle();
  const auto a = brain_crop_box(rect);
  const auto b = brain_crop_box(transpose(rect));
  CHECK(a.x0 == b.y0);
  CHECK(a.x1 == b.y1);
  CHECK(a.y0 == b.x0);
  CHECK(a.y1 == b.x1);
}
