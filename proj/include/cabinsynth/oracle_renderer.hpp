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

// CPU ray caster that renders scenes with ellipsoid stand-ins for passengers.
//
// Each passenger is a torso and a head ellipsoid placed from its seat, height
// and width sliders, and neck rotation. One ray per pixel center goes through
// the same equisolid camera used for labelling, and the pixel takes the id of
// the nearest hit. No 3D engine or asset is involved, which makes the whole
// pipeline reproducible and testable in isolation.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cabinsynth/camera.hpp"
#include "cabinsynth/config.hpp"
#include "cabinsynth/mask.hpp"

namespace cabinsynth {

struct Ellipsoid {
  Vec3 center;
  Vec3 semi_axes;
  /// Body-to-vehicle rotation.
  Mat3 orientation;
};

/// Smallest t > 0 with origin + t * direction on the surface, if any.
std::optional<double> intersect(const Ellipsoid& e, Vec3 origin, Vec3 direction) noexcept;

/// True when p lies inside or on the ellipsoid.
bool contains(const Ellipsoid& e, Vec3 p) noexcept;

inline constexpr const char* kHeadJoint = "head";
inline constexpr const char* kTorsoJoint = "torso";

struct ProxyBody {
  InstanceId instance_id = 0;
  std::vector<Ellipsoid> ellipsoids;
  /// Named joint positions, vehicle frame.
  std::map<std::string, Vec3> joints;
  Rgb albedo{200, 160, 130};
};

/// Torso + head proxies for every placement of the scene.
std::vector<ProxyBody> proxies_of(const SceneDescription& scene);

/// Per-pixel nearest-hit instance ids (OpenMP over rows).
IndexedMask rasterize(const std::vector<ProxyBody>& bodies, const CameraSpec& camera);
IndexedMask rasterize(const SceneDescription& scene);

/// Flat-shaded preview image: background tint from the scene's HDRI or light,
/// bodies shaded by the angle between surface normal and view ray.
RgbImage render_rgb(const SceneDescription& scene);

/// Clears a seeded random subset of interior pixels (all 8 neighbours inside
/// the frame and of the same id) so that no two cleared pixels are 8-adjacent.
/// Aims at round(rate * eligible) pixels. Throws DomainError unless 0 <= rate <= 1.
IndexedMask inject_holes(const IndexedMask& mask, double rate, std::uint64_t seed);

using JointKey = std::pair<InstanceId, std::string>;
using JointMap = std::map<JointKey, Vec3>;

/// Head and torso centers of every placed instance.
JointMap joints_of(const SceneDescription& scene);
JointMap joints_of(const std::vector<ProxyBody>& bodies);

}  // namespace cabinsynth
