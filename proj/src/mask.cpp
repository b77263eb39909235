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

#include "cabinsynth/mask.hpp"

#include <algorithm>
#include <array>
#include <string>

namespace cabinsynth {

BoundingBox bbox_union(const BoundingBox& a, const BoundingBox& b) noexcept {
  const int x0 = std::min(a.x, b.x);
  const int y0 = std::min(a.y, b.y);
  const int x1 = std::max(a.x + a.w, b.x + b.w);
  const int y1 = std::max(a.y + a.h, b.y + b.h);
  return {x0, y0, x1 - x0, y1 - y0};
}

bool bbox_fits(const BoundingBox& box, int width, int height) noexcept {
  return box.x >= 0 && box.y >= 0 && box.w > 0 && box.h > 0 && box.x + box.w <= width &&
         box.y + box.h <= height;
}

BoundingBox bbox_of(const BinaryMask& mask) {
  int x0 = mask.width(), y0 = mask.height(), x1 = -1, y1 = -1;
  for (int y = 0; y < mask.height(); ++y) {
    const auto* row = mask.row(y);
    for (int x = 0; x < mask.width(); ++x) {
      if (!row[x]) continue;
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (x1 < 0) throw EmptyRegionError("bbox_of: mask has no foreground pixel");
  return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

BinaryMask extract_instance(const IndexedMask& mask, InstanceId id) {
  BinaryMask out(mask.width(), mask.height());
  auto src = mask.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] == id ? 1 : 0;
  return out;
}

std::vector<InstanceId> instance_ids(const IndexedMask& mask) {
  std::array<bool, 256> seen{};
  for (auto id : mask.pixels()) seen[id] = true;
  std::vector<InstanceId> ids;
  for (int id = 1; id < 256; ++id)
    if (seen[id]) ids.push_back(static_cast<InstanceId>(id));
  return ids;
}

const Palette& default_palette() {
  static const Palette palette{{255, 0, 0},   {0, 255, 0},   {0, 0, 255}, {255, 255, 0},
                               {255, 0, 255}, {0, 255, 255}, {128, 0, 0}, {0, 128, 0}};
  return palette;
}

void check_palette(const Palette& palette) {
  if (palette.size() > 255) throw ConfigError("palette: at most 255 colors are supported");
  for (std::size_t i = 0; i < palette.size(); ++i) {
    if (palette[i] == kBackgroundColor)
      throw ConfigError("palette[" + std::to_string(i) + "]: equals the background color");
    for (std::size_t j = 0; j < i; ++j)
      if (palette[i] == palette[j])
        throw ConfigError("palette[" + std::to_string(i) + "]: duplicates palette[" +
                          std::to_string(j) + "]");
  }
}

PaletteSplit palette_split(const RgbImage& image, const Palette& palette) {
  check_palette(palette);
  PaletteSplit out{IndexedMask(image.width(), image.height()), 0};
  auto src = image.pixels();
  auto dst = out.mask.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const Rgb c = src[i];
    if (c == kBackgroundColor) continue;
    auto it = std::find(palette.begin(), palette.end(), c);
    if (it == palette.end()) {
      ++out.unknown_pixels;
      continue;
    }
    dst[i] = static_cast<InstanceId>(std::distance(palette.begin(), it) + 1);
  }
  return out;
}

RgbImage palette_render(const IndexedMask& mask, const Palette& palette) {
  RgbImage out(mask.width(), mask.height(), kBackgroundColor);
  auto src = mask.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) {
    const InstanceId id = src[i];
    if (id == 0) continue;
    if (id > palette.size())
      throw RangeError("palette_render: instance id " + std::to_string(id) +
                       " has no palette color");
    dst[i] = palette[id - 1];
  }
  return out;
}

}  // namespace cabinsynth
