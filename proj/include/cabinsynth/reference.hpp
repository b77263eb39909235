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

// Serial, straight-from-the-definition versions of the parallel kernels.
// Slow on purpose; kept for tests and for the benchmark baseline.

#pragma once

#include <vector>

#include "cabinsynth/camera.hpp"
#include "cabinsynth/mask.hpp"
#include "cabinsynth/morphology.hpp"
#include "cabinsynth/oracle_renderer.hpp"

namespace cabinsynth::reference {

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se,
                  BorderMode border = BorderMode::kBackground);
BinaryMask erode(const BinaryMask& mask, const StructuringElement& se,
                 BorderMode border = BorderMode::kBackground);

/// Closing evaluated pointwise on the unbounded plane: p is kept iff every
/// q in p + SE has some foreground pixel in q + SE. O(k^4) per pixel.
BinaryMask close(const BinaryMask& mask, const StructuringElement& se);

/// Single-threaded rasterizer, one ray per pixel center, no early outs.
IndexedMask rasterize(const std::vector<ProxyBody>& bodies, const CameraSpec& camera);

}  // namespace cabinsynth::reference
