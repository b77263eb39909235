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

// Independent test oracles. Nothing here calls into the library under test
// beyond its plain data types, so a bug in a kernel cannot hide in its oracle.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cabinsynth/geometry.hpp"
#include "cabinsynth/mask.hpp"

namespace oracle {

using cabinsynth::BinaryMask;
using cabinsynth::BoundingBox;
using cabinsynth::IndexedMask;

// Random masks of mixed texture: salt noise, rectangles and discs, so both
// scattered pixels and large blobs touching the frame border occur.
inline BinaryMask random_mask(std::mt19937_64& gen, int w, int h) {
  BinaryMask m(w, h);
  std::uniform_int_distribution<int> style(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const int s = style(gen);
  if (s == 0) {
    const double density = 0.05 + 0.5 * unit(gen);
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) m(x, y) = unit(gen) < density;
    return m;
  }
  std::uniform_int_distribution<int> count(1, 6);
  const int shapes = count(gen);
  for (int k = 0; k < shapes; ++k) {
    const int cx = static_cast<int>(unit(gen) * w);
    const int cy = static_cast<int>(unit(gen) * h);
    const int rx = 1 + static_cast<int>(unit(gen) * w / 3);
    const int ry = 1 + static_cast<int>(unit(gen) * h / 3);
    for (int y = std::max(0, cy - ry); y < std::min(h, cy + ry); ++y)
      for (int x = std::max(0, cx - rx); x < std::min(w, cx + rx); ++x) {
        const double dx = double(x - cx) / rx, dy = double(y - cy) / ry;
        if (s == 1 || dx * dx + dy * dy <= 1.0) m(x, y) = 1;
      }
  }
  // Sprinkle a few holes and specks on top.
  for (int i = 0; i < (w * h) / 100; ++i) {
    const int x = static_cast<int>(unit(gen) * w), y = static_cast<int>(unit(gen) * h);
    m(x, y) = !m(x, y);
  }
  return m;
}

// 8-connected component count by union-find over raster neighbours.
inline int count_components_8(const BinaryMask& m) {
  const int w = m.width(), h = m.height();
  std::vector<int> parent(static_cast<std::size_t>(w) * h);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      if (!m(x, y)) continue;
      const int i = y * w + x;
      if (x > 0 && m(x - 1, y)) unite(i, i - 1);
      if (y > 0) {
        for (int dx = -1; dx <= 1; ++dx) {
          const int nx = x + dx;
          if (nx >= 0 && nx < w && m(nx, y - 1)) unite(i, (y - 1) * w + nx);
        }
      }
    }
  int roots = 0;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (m(x, y) && find(y * w + x) == y * w + x) ++roots;
  return roots;
}

// Min/max pixel scan; inclusive width and height.
template <typename Pred>
std::optional<BoundingBox> scan_bbox(int w, int h, Pred is_set) {
  int x0 = w, y0 = h, x1 = -1, y1 = -1;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x)
      if (is_set(x, y)) {
        x0 = std::min(x0, x);
        x1 = std::max(x1, x);
        y0 = std::min(y0, y);
        y1 = std::max(y1, y);
      }
  if (x1 < 0) return std::nullopt;
  return BoundingBox{x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

inline std::optional<BoundingBox> scan_bbox(const BinaryMask& m) {
  return scan_bbox(m.width(), m.height(), [&](int x, int y) { return m(x, y) != 0; });
}

inline double point_segment_distance(double px, double py, double ax, double ay, double bx, double by) {
  const double vx = bx - ax, vy = by - ay;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0 ? ((px - ax) * vx + (py - ay) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(px - (ax + t * vx), py - (ay + t * vy));
}

// Yaw/pitch/roll (degrees) of a rotation R = Ry(a) Rx(b) Rz(c), valid away
// from |pitch| = 90 degrees.
inline cabinsynth::YawPitchRoll decompose(const cabinsynth::Mat3& r) {
  const double pitch = std::asin(-r(1, 2));
  const double roll = std::atan2(r(1, 0), r(1, 1));
  const double yaw = std::atan2(r(0, 2), r(2, 2));
  return {yaw * 180.0 / M_PI, pitch * 180.0 / M_PI, roll * 180.0 / M_PI};
}

// Rodrigues rotation about a unit axis.
inline cabinsynth::Mat3 axis_angle(cabinsynth::Vec3 k, double angle) {
  const double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
  return cabinsynth::Mat3{{t * k.x * k.x + c, t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
                           t * k.x * k.y + s * k.z, t * k.y * k.y + c, t * k.y * k.z - s * k.x,
                           t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c}};
}

// Chi-square critical value for 19 degrees of freedom at alpha = 0.001.
inline constexpr double kChi2Critical19At0001 = 43.82019596451753;

// Scratch directory removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("cabinsynth_" + tag + "_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace oracle
