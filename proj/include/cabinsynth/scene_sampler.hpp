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

// Deterministic scene sampling.
//
// Sample i is drawn from its own generator seeded with
// derive_seed(master_seed, i), so samples can be produced in any order, on
// any number of threads, and always come out the same. Within one sample the
// draw order is fixed:
//   1. occupancy humans, partial Fisher-Yates over pool indices;
//   2. for each placement (seat_layout order), each pose range in config order;
//   3. one background over hdri_pool followed by light_presets;
//   4. the light intensity, when the background is a light preset.

#pragma once

#include <cstdint>
#include <vector>

#include "cabinsynth/config.hpp"

namespace cabinsynth {

/// Draws `spec.count` humans with every slider uniform in its range and
/// clothing/hair uniform over the asset lists. Human ids are "human_000",
/// "human_001", ...
///
/// Throws ConfigError when the clothing or hair list is empty and DomainError
/// when a range is outside [0, 1], inverted, or count < 1.
std::vector<HumanSpec> sample_human_pool(const HumanPoolSpec& spec);

/// Throws RangeError when sample_index >= config.sample_count and ConfigError
/// when the pool or the seat layout cannot hold `occupancy` passengers.
SceneDescription sample_scene(const GenerationConfig& config, std::uint64_t sample_index);

/// Head orientation carried by a placement's neck bone (missing axes are 0).
YawPitchRoll head_pose_of(const Placement& placement);

/// Name of the bone whose rotation drives the head.
inline constexpr const char* kNeckBone = "neck";

}  // namespace cabinsynth
