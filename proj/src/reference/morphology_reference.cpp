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

#include "cabinsynth/reference.hpp"

namespace cabinsynth::reference {

namespace {

bool sample(const BinaryMask& m, int x, int y, BorderMode border) {
  if (!m.contains(x, y)) return border == BorderMode::kForeground;
  return m(x, y) != 0;
}

}  // namespace

BinaryMask dilate(const BinaryMask& mask, const StructuringElement& se, BorderMode border) {
  const int r = se.radius();
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      bool any = false;
      for (int dy = -r; dy <= r && !any; ++dy)
        for (int dx = -r; dx <= r && !any; ++dx) any = sample(mask, x + dx, y + dy, border);
      out(x, y) = any ? 1 : 0;
    }
  return out;
}

BinaryMask erode(const BinaryMask& mask, const StructuringElement& se, BorderMode border) {
  const int r = se.radius();
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      bool all = true;
      for (int dy = -r; dy <= r && all; ++dy)
        for (int dx = -r; dx <= r && all; ++dx) all = sample(mask, x + dx, y + dy, border);
      out(x, y) = all ? 1 : 0;
    }
  return out;
}

BinaryMask close(const BinaryMask& mask, const StructuringElement& se) {
  const int r = se.radius();
  BinaryMask out(mask.width(), mask.height());
  for (int y = 0; y < mask.height(); ++y)
    for (int x = 0; x < mask.width(); ++x) {
      bool keep = true;
      for (int qy = y - r; qy <= y + r && keep; ++qy)
        for (int qx = x - r; qx <= x + r && keep; ++qx) {
          bool hit = false;
          for (int sy = qy - r; sy <= qy + r && !hit; ++sy)
            for (int sx = qx - r; sx <= qx + r && !hit; ++sx)
              hit = sample(mask, sx, sy, BorderMode::kBackground);
          keep = hit;
        }
      out(x, y) = keep ? 1 : 0;
    }
  return out;
}

}  // namespace cabinsynth::reference
