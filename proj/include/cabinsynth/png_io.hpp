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

// 8-bit PNG reading and writing (libpng simplified API).
//
// Two mask encodings are understood:
//   - RGB, one palette color per instance (what render backends write);
//   - single channel, pixel value = instance id (the canonical form).

#pragma once

#include <filesystem>

#include "cabinsynth/mask.hpp"

namespace cabinsynth {

void write_png(const std::filesystem::path& path, const RgbImage& image);
void write_png(const std::filesystem::path& path, const IndexedMask& mask);

/// Reads any PNG as 8-bit RGB. Throws IoError.
RgbImage read_png_rgb(const std::filesystem::path& path);

/// Decodes a mask file in either encoding. Unknown colors of RGB masks are
/// counted and mapped to background.
PaletteSplit read_mask_png(const std::filesystem::path& path, const Palette& palette);

}  // namespace cabinsynth
