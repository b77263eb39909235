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

// Small fixed-size linear algebra for the camera and the proxy renderer.
//
// Frame conventions (used everywhere in the project):
//   vehicle frame: +X lateral (right when looking rearward from the mirror),
//                  +Y down, +Z rearward. Right-handed.
//   camera frame:  +Z optical axis, +X towards increasing u, +Y towards
//                  increasing v.
//   orientation:   intrinsic yaw -> pitch -> roll, R = Ry(yaw) Rx(pitch) Rz(roll).
//                  Yaw turns about the vertical axis, pitch about the lateral
//                  axis, roll about the forward axis. Identity orientation
//                  maps a body frame onto the vehicle frame.

#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace cabinsynth {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) noexcept { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) noexcept { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) noexcept { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) noexcept { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr Vec3 operator*(Vec3 a, double s) noexcept { return s * a; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) noexcept { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm(Vec3 a) noexcept { return std::sqrt(dot(a, a)); }
constexpr Vec3 hadamard_div(Vec3 a, Vec3 b) noexcept { return {a.x / b.x, a.y / b.y, a.z / b.z}; }

constexpr double deg2rad(double deg) noexcept { return deg * std::numbers::pi / 180.0; }
constexpr double rad2deg(double rad) noexcept { return rad * 180.0 / std::numbers::pi; }

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  constexpr double operator()(int r, int c) const noexcept { return m[r * 3 + c]; }
  constexpr double& operator()(int r, int c) noexcept { return m[r * 3 + c]; }

  constexpr Vec3 operator*(Vec3 v) const noexcept {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
            m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }

  constexpr Mat3 operator*(const Mat3& o) const noexcept {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r(i, j) = (*this)(i, 0) * o(0, j) + (*this)(i, 1) * o(1, j) + (*this)(i, 2) * o(2, j);
    return r;
  }

  constexpr Mat3 transposed() const noexcept {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) r(i, j) = (*this)(j, i);
    return r;
  }
};

/// Orientation in degrees, see the convention at the top of this file.
struct YawPitchRoll {
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;

  friend constexpr bool operator==(const YawPitchRoll&, const YawPitchRoll&) = default;
};

inline Mat3 rotation_y(double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  return Mat3{{c, 0, s, 0, 1, 0, -s, 0, c}};
}

inline Mat3 rotation_x(double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  return Mat3{{1, 0, 0, 0, c, -s, 0, s, c}};
}

inline Mat3 rotation_z(double rad) {
  const double c = std::cos(rad), s = std::sin(rad);
  return Mat3{{c, -s, 0, s, c, 0, 0, 0, 1}};
}

/// Body-to-parent rotation for an intrinsic yaw -> pitch -> roll sequence.
inline Mat3 rotation_from(const YawPitchRoll& o) {
  return rotation_y(deg2rad(o.yaw_deg)) * rotation_x(deg2rad(o.pitch_deg)) *
         rotation_z(deg2rad(o.roll_deg));
}

/// Rigid transform p -> R p + t.
struct RigidTransform {
  Mat3 rotation;
  Vec3 translation;

  Vec3 apply(Vec3 p) const noexcept { return rotation * p + translation; }
};

}  // namespace cabinsynth
