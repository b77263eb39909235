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

// The generation configuration (randomization space) and resolved scenes.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cabinsynth/camera.hpp"
#include "cabinsynth/geometry.hpp"
#include "cabinsynth/mask.hpp"

namespace cabinsynth {

struct SliderRange {
  double min = 0.0;
  double max = 1.0;

  friend bool operator==(const SliderRange&, const SliderRange&) = default;
};

/// One character of the human pool. Attribute sliders live in [0, 1].
struct HumanSpec {
  std::string human_id;
  std::map<std::string, double> attributes;
  std::string clothing_asset;
  std::string hair_asset;
  std::string skeleton_ref;

  friend bool operator==(const HumanSpec&, const HumanSpec&) = default;
};

/// Recipe for a randomly generated human pool (mass-production style).
struct HumanPoolSpec {
  std::map<std::string, SliderRange> ranges;
  int count = 30;
  std::uint64_t seed = 0;
  std::vector<std::string> clothing_assets;
  std::vector<std::string> hair_assets;
  std::string skeleton_ref = "cmu_mb";

  friend bool operator==(const HumanPoolSpec&, const HumanPoolSpec&) = default;
};

struct SeatSlot {
  std::string seat_id;
  /// Hip point of the occupant, meters, vehicle frame.
  Vec3 position;
  /// Seat base orientation; the seat's +Z is the occupant's forward direction
  /// and its -Y the occupant's up direction.
  YawPitchRoll orientation;

  friend bool operator==(const SeatSlot&, const SeatSlot&) = default;
};

/// vertical = nodding (pitch), horizontal = turning (yaw), roll = tilting.
enum class RotationAxis { kVertical, kHorizontal, kRoll };

const char* to_string(RotationAxis axis) noexcept;
std::optional<RotationAxis> rotation_axis_from_string(const std::string& name);

struct RotationRange {
  static constexpr const char* kUniform = "uniform";

  std::string bone_name;
  RotationAxis axis = RotationAxis::kVertical;
  double min_deg = 0.0;
  double max_deg = 0.0;
  /// Reserved for non-uniform priors; only "uniform" is accepted today.
  std::string distribution = kUniform;

  friend bool operator==(const RotationRange&, const RotationRange&) = default;
};

enum class LightKind { kHdriBackground, kPoint, kSpot, kDirectional, kArea };

const char* to_string(LightKind kind) noexcept;
std::optional<LightKind> light_kind_from_string(const std::string& name);

struct AreaSize {
  double width = 0.0;
  double height = 0.0;

  friend bool operator==(const AreaSize&, const AreaSize&) = default;
};

/// A light set-up. Which optional fields are required depends on `kind`:
/// point {position}, spot {position, direction, cone_angle_deg},
/// directional {direction}, area {position, direction, area_size},
/// hdri_background {hdri_ref}.
struct LightingPreset {
  LightKind kind = LightKind::kPoint;
  /// Intensity is drawn uniformly from [intensity_min, intensity_max].
  double intensity_min = 1.0;
  double intensity_max = 1.0;
  std::optional<Vec3> position;
  std::optional<Vec3> direction;
  std::optional<double> cone_angle_deg;
  std::optional<AreaSize> area_size;
  std::optional<std::string> hdri_ref;

  friend bool operator==(const LightingPreset&, const LightingPreset&) = default;
};

struct GenerationConfig {
  std::uint64_t master_seed = 0;
  std::uint64_t sample_count = 1;
  std::vector<HumanSpec> human_pool;
  std::vector<SeatSlot> seat_layout;
  int occupancy = 5;
  std::vector<RotationRange> pose_ranges;
  std::vector<std::string> hdri_pool;
  std::vector<LightingPreset> light_presets;
  CameraSpec camera;
  ImageSize image_size;
  /// Mask colors for instance ids 1..N.
  Palette palette = default_palette();
  /// Closing kernel used when cleaning masks.
  int structuring_element_size = 3;
  /// Douglas-Peucker tolerance (pixels) for the stored polygon outlines.
  double approx_epsilon = 1.0;

  friend bool operator==(const GenerationConfig&, const GenerationConfig&) = default;
};

struct Violation {
  /// Dotted/indexed path of the offending field, e.g. "pose_ranges[2]".
  std::string field;
  std::string message;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty iff every configuration invariant holds.
std::vector<Violation> validate_config(const GenerationConfig& config);

/// The built-in configuration: 30 generated humans, five seats, neck ranges of
/// +-15 degrees, an HDRI stack plus light presets, and a 180 degree equisolid
/// camera with a 5.3 mm sensor at the center mirror.
GenerationConfig default_config();

/// Slider ranges, asset lists and size used by default_config().
HumanPoolSpec default_human_pool_spec();

// -- resolved scene ---------------------------------------------------------

/// Sampled angle (degrees) for every configured axis of one bone.
using BoneAngles = std::map<RotationAxis, double>;
using BonePose = std::map<std::string, BoneAngles>;

struct Placement {
  /// Pass index written into the mask; 1-based, in seat_layout order.
  InstanceId instance_id = 0;
  std::string seat_id;
  std::string human_id;
  SeatSlot seat;
  HumanSpec human;
  BonePose bone_pose;

  friend bool operator==(const Placement&, const Placement&) = default;
};

/// Where a background came from: the HDRI stack or the light presets.
enum class BackgroundSource { kHdriPool, kLightPresets };

struct Background {
  BackgroundSource source = BackgroundSource::kHdriPool;
  std::size_t index = 0;
  /// The instantiated light; intensity_min == intensity_max == intensity.
  LightingPreset light;
  double intensity = 1.0;

  friend bool operator==(const Background&, const Background&) = default;
};

struct SceneDescription {
  std::uint64_t sample_id = 0;
  std::uint64_t derived_seed = 0;
  std::vector<Placement> placements;
  Background background;
  CameraSpec camera;
  ImageSize image_size;

  friend bool operator==(const SceneDescription&, const SceneDescription&) = default;
};

}  // namespace cabinsynth
