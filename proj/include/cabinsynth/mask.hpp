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

// Raster types shared by the mask toolkit, the renderer and the labeller.
// All rasters are row-major with the origin at the top-left pixel.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "cabinsynth/error.hpp"

namespace cabinsynth {

/// Row-major raster of T.
template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height), data_(checked_area(width, height), fill) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  bool contains(int x, int y) const noexcept {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  T* row(int y) noexcept { return data_.data() + index(0, y); }
  const T* row(int y) const noexcept { return data_.data() + index(0, y); }

  std::span<T> pixels() noexcept { return data_; }
  std::span<const T> pixels() const noexcept { return data_; }

  friend bool operator==(const Raster&, const Raster&) = default;

 private:
  static std::size_t checked_area(int width, int height) {
    if (width < 0 || height < 0) throw DomainError("raster dimensions must be non-negative");
    return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

/// Foreground = 1, background = 0.
using BinaryMask = Raster<std::uint8_t>;

using InstanceId = std::uint8_t;

/// Per-pixel instance ids; 0 is background.
using IndexedMask = Raster<InstanceId>;

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

using RgbImage = Raster<Rgb>;

struct PixelCoord {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(const PixelCoord&, const PixelCoord&) = default;
};

/// Integer rectangle; w and h count pixels, so a single pixel has w = h = 1.
struct BoundingBox {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  friend constexpr bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// Smallest box holding both.
BoundingBox bbox_union(const BoundingBox& a, const BoundingBox& b) noexcept;

/// True when the box satisfies the label invariants inside a width x height frame.
bool bbox_fits(const BoundingBox& box, int width, int height) noexcept;

/// Pixel-scan bounding box of the foreground. Throws EmptyRegionError when the
/// mask has no foreground pixel.
BoundingBox bbox_of(const BinaryMask& mask);

/// Binary mask of pixels equal to `id`.
BinaryMask extract_instance(const IndexedMask& mask, InstanceId id);

/// Sorted list of non-zero ids present in the mask.
std::vector<InstanceId> instance_ids(const IndexedMask& mask);

// -- palette ------------------------------------------------------------------

using Palette = std::vector<Rgb>;

inline constexpr Rgb kBackgroundColor{0, 0, 0};

/// Colors for ids 1..8; background is black.
const Palette& default_palette();

/// Throws ConfigError when colors repeat or collide with the background.
void check_palette(const Palette& palette);

struct PaletteSplit {
  IndexedMask mask;
  /// Pixels whose color is neither background nor in the palette.
  std::size_t unknown_pixels = 0;
};

/// Maps palette[i] to id i + 1 and everything else to 0.
PaletteSplit palette_split(const RgbImage& image, const Palette& palette);

/// Inverse of palette_split. Throws RangeError for ids beyond the palette.
RgbImage palette_render(const IndexedMask& mask, const Palette& palette);

}  // namespace cabinsynth
