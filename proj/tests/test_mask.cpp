// Copyright 2026 The cabinsynth Authors
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

#include "cabinsynth/error.hpp"
#include "cabinsynth/mask.hpp"
#include "cabinsynth/png_io.hpp"
#include "support/oracles.hpp"

using namespace cabinsynth;

namespace {

IndexedMask random_ids(std::mt19937_64& gen, int w, int h, int max_id) {
  std::uniform_int_distribution<int> id(0, max_id);
  IndexedMask m(w, h);
  for (auto& v : m.pixels()) v = static_cast<InstanceId>(id(gen));
  return m;
}

}  // namespace

TEST_CASE("pixel-scan bbox examples") {
  BinaryMask full(13, 9, 1);
  CHECK(bbox_of(full) == BoundingBox{0, 0, 13, 9});
  BinaryMask one(10, 10);
  one(3, 7) = 1;
  CHECK(bbox_of(one) == BoundingBox{3, 7, 1, 1});
  CHECK_THROWS_AS(bbox_of(BinaryMask(4, 4)), EmptyRegionError);
}

TEST_CASE("bbox helpers") {
  CHECK(bbox_union({0, 0, 2, 2}, {5, 5, 1, 1}) == BoundingBox{0, 0, 6, 6});
  CHECK(bbox_fits({0, 0, 10, 10}, 10, 10));
  CHECK_FALSE(bbox_fits({1, 0, 10, 10}, 10, 10));
  CHECK_FALSE(bbox_fits({0, 0, 0, 1}, 10, 10));
}

TEST_CASE("instance extraction and id listing") {
  IndexedMask m(4, 2);
  m(0, 0) = 3;
  m(3, 1) = 1;
  m(2, 1) = 3;
  CHECK(instance_ids(m) == std::vector<InstanceId>{1, 3});
  const auto b = extract_instance(m, 3);
  CHECK(b(0, 0) == 1);
  CHECK(b(2, 1) == 1);
  CHECK(b(3, 1) == 0);
}

TEST_CASE("default palette has eight distinct non-background colors") {
  const auto& p = default_palette();
  REQUIRE(p.size() == 8);
  CHECK(p[0] == Rgb{255, 0, 0});
  CHECK(p[7] == Rgb{0, 128, 0});
  CHECK_NOTHROW(check_palette(p));
}

TEST_CASE("bad palettes are configuration errors") {
  Palette dup{{1, 2, 3}, {1, 2, 3}};
  CHECK_THROWS_AS(check_palette(dup), ConfigError);
  CHECK_THROWS_AS(palette_split(RgbImage(2, 2), dup), ConfigError);
  Palette black{{0, 0, 0}};
  CHECK_THROWS_AS(check_palette(black), ConfigError);
}

TEST_CASE("palette split examples") {
  const auto& p = default_palette();
  RgbImage all_first(5, 4, p[0]);
  auto s = palette_split(all_first, p);
  for (auto v : s.mask.pixels()) CHECK(v == 1);
  CHECK(s.unknown_pixels == 0);

  s = palette_split(RgbImage(5, 4, kBackgroundColor), p);
  for (auto v : s.mask.pixels()) CHECK(v == 0);

  RgbImage odd(3, 1, kBackgroundColor);
  odd(1, 0) = {10, 20, 30};
  s = palette_split(odd, p);
  CHECK(s.unknown_pixels == 1);
  CHECK(s.mask(1, 0) == 0);
}

TEST_CASE("palette render then split is the identity") {
  std::mt19937_64 gen(1);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_ids(gen, 31, 17, 8);
    const auto back = palette_split(palette_render(m, default_palette()), default_palette());
    CHECK(back.mask == m);
    CHECK(back.unknown_pixels == 0);
  }
  IndexedMask bad(1, 1, 9);
  CHECK_THROWS_AS(palette_render(bad, default_palette()), RangeError);
}

TEST_CASE("png files round-trip both mask encodings") {
  oracle::TempDir dir("png");
  std::mt19937_64 gen(2);
  const auto m = random_ids(gen, 40, 30, 8);

  write_png(dir.path() / "gray.png", m);
  auto gray = read_mask_png(dir.path() / "gray.png", default_palette());
  CHECK(gray.mask == m);
  CHECK(gray.unknown_pixels == 0);

  const auto rgb = palette_render(m, default_palette());
  write_png(dir.path() / "rgb.png", rgb);
  CHECK(read_png_rgb(dir.path() / "rgb.png") == rgb);
  auto colour = read_mask_png(dir.path() / "rgb.png", default_palette());
  CHECK(colour.mask == m);

  CHECK_THROWS_AS(read_png_rgb(dir.path() / "missing.png"), IoError);
}
