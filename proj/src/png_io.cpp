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

#include "cabinsynth/png_io.hpp"

#include <png.h>

#include <cstring>
#include <string>
#include <vector>

namespace cabinsynth {

namespace {

struct ImageGuard {
  png_image image;
  ImageGuard() {
    std::memset(&image, 0, sizeof image);
    image.version = PNG_IMAGE_VERSION;
  }
  ~ImageGuard() { png_image_free(&image); }
  ImageGuard(const ImageGuard&) = delete;
  ImageGuard& operator=(const ImageGuard&) = delete;
};

void write_raw(const std::filesystem::path& path, int width, int height, png_uint_32 format,
               const void* data, int stride) {
  ImageGuard g;
  g.image.width = static_cast<png_uint_32>(width);
  g.image.height = static_cast<png_uint_32>(height);
  g.image.format = format;
  if (!png_image_write_to_file(&g.image, path.c_str(), 0, data, stride, nullptr))
    throw IoError("cannot write PNG '" + path.string() + "': " + g.image.message);
}

}  // namespace

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  static_assert(sizeof(Rgb) == 3);
  write_raw(path, image.width(), image.height(), PNG_FORMAT_RGB, image.pixels().data(),
            image.width() * 3);
}

void write_png(const std::filesystem::path& path, const IndexedMask& mask) {
  write_raw(path, mask.width(), mask.height(), PNG_FORMAT_GRAY, mask.pixels().data(), mask.width());
}

namespace {

// Reads the file header and returns whether the stored image is grayscale.
bool open_png(ImageGuard& g, const std::filesystem::path& path) {
  if (!png_image_begin_read_from_file(&g.image, path.c_str()))
    throw IoError("cannot read PNG '" + path.string() + "': " + g.image.message);
  return (g.image.format & PNG_FORMAT_FLAG_COLOR) == 0 &&
         (g.image.format & PNG_FORMAT_FLAG_COLORMAP) == 0;
}

template <typename Image>
Image finish_read(ImageGuard& g, const std::filesystem::path& path, png_uint_32 format) {
  g.image.format = format;
  Image out(static_cast<int>(g.image.width), static_cast<int>(g.image.height));
  if (!png_image_finish_read(&g.image, nullptr, out.pixels().data(), 0, nullptr))
    throw IoError("cannot decode PNG '" + path.string() + "': " + g.image.message);
  return out;
}

}  // namespace

RgbImage read_png_rgb(const std::filesystem::path& path) {
  ImageGuard g;
  open_png(g, path);
  return finish_read<RgbImage>(g, path, PNG_FORMAT_RGB);
}

PaletteSplit read_mask_png(const std::filesystem::path& path, const Palette& palette) {
  ImageGuard g;
  if (open_png(g, path)) {
    if (g.image.format & PNG_FORMAT_FLAG_LINEAR)
      throw IoError("mask PNG '" + path.string() + "' must be 8-bit");
    return {finish_read<IndexedMask>(g, path, PNG_FORMAT_GRAY), 0};
  }
  return palette_split(finish_read<RgbImage>(g, path, PNG_FORMAT_RGB), palette);
}

}  // namespace cabinsynth
