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

#include "cabinsynth/scene_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <string>

#include "cabinsynth/error.hpp"
#include "cabinsynth/rng.hpp"

namespace cabinsynth {

const char* to_string(RotationAxis axis) noexcept {
  switch (axis) {
    case RotationAxis::kVertical: return "vertical";
    case RotationAxis::kHorizontal: return "horizontal";
    case RotationAxis::kRoll: return "roll";
  }
  return "?";
}

std::optional<RotationAxis> rotation_axis_from_string(const std::string& name) {
  if (name == "vertical") return RotationAxis::kVertical;
  if (name == "horizontal") return RotationAxis::kHorizontal;
  if (name == "roll") return RotationAxis::kRoll;
  return std::nullopt;
}

const char* to_string(LightKind kind) noexcept {
  switch (kind) {
    case LightKind::kHdriBackground: return "hdri_background";
    case LightKind::kPoint: return "point";
    case LightKind::kSpot: return "spot";
    case LightKind::kDirectional: return "directional";
    case LightKind::kArea: return "area";
  }
  return "?";
}

std::optional<LightKind> light_kind_from_string(const std::string& name) {
  if (name == "hdri_background") return LightKind::kHdriBackground;
  if (name == "point") return LightKind::kPoint;
  if (name == "spot") return LightKind::kSpot;
  if (name == "directional") return LightKind::kDirectional;
  if (name == "area") return LightKind::kArea;
  return std::nullopt;
}

namespace {

std::string indexed(const std::string& field, std::size_t i) {
  return field + "[" + std::to_string(i) + "]";
}

void check_light(const LightingPreset& light, const std::string& path, std::vector<Violation>& out) {
  if (!(light.intensity_min >= 0.0))
    out.push_back({path + ".intensity_min", "must be non-negative"});
  if (!(light.intensity_min <= light.intensity_max))
    out.push_back({path + ".intensity_max", "must be >= intensity_min"});

  const bool needs_position = light.kind == LightKind::kPoint || light.kind == LightKind::kSpot ||
                              light.kind == LightKind::kArea;
  const bool needs_direction = light.kind == LightKind::kSpot ||
                               light.kind == LightKind::kDirectional ||
                               light.kind == LightKind::kArea;
  if (needs_position && !light.position)
    out.push_back({path + ".position", std::string("required for ") + to_string(light.kind)});
  if (needs_direction) {
    if (!light.direction)
      out.push_back({path + ".direction", std::string("required for ") + to_string(light.kind)});
    else if (!(std::abs(norm(*light.direction) - 1.0) <= 1e-9))
      out.push_back({path + ".direction", "must have unit norm (within 1e-9)"});
  }
  if (light.kind == LightKind::kSpot) {
    if (!light.cone_angle_deg)
      out.push_back({path + ".cone_angle_deg", "required for spot"});
    else if (!(*light.cone_angle_deg > 0.0 && *light.cone_angle_deg < 180.0))
      out.push_back({path + ".cone_angle_deg", "must lie in (0, 180)"});
  }
  if (light.kind == LightKind::kArea) {
    if (!light.area_size)
      out.push_back({path + ".area_size", "required for area"});
    else if (!(light.area_size->width > 0.0 && light.area_size->height > 0.0))
      out.push_back({path + ".area_size", "width and height must be positive"});
  }
  if (light.kind == LightKind::kHdriBackground && (!light.hdri_ref || light.hdri_ref->empty()))
    out.push_back({path + ".hdri_ref", "required for hdri_background"});
}

}  // namespace

std::vector<Violation> validate_config(const GenerationConfig& config) {
  std::vector<Violation> out;

  if (config.sample_count < 1) out.push_back({"sample_count", "must be positive"});

  std::set<std::string> human_ids;
  for (std::size_t i = 0; i < config.human_pool.size(); ++i) {
    const auto& h = config.human_pool[i];
    const std::string path = indexed("human_pool", i);
    if (h.human_id.empty())
      out.push_back({path + ".human_id", "must not be empty"});
    else if (!human_ids.insert(h.human_id).second)
      out.push_back({path + ".human_id", "duplicate id '" + h.human_id + "'"});
    for (const auto& [name, value] : h.attributes)
      if (!(value >= 0.0 && value <= 1.0))
        out.push_back({path + ".attributes." + name, "slider must lie in [0, 1]"});
  }

  if (config.occupancy < 0) out.push_back({"occupancy", "must be non-negative"});
  if (static_cast<std::size_t>(std::max(config.occupancy, 0)) > config.human_pool.size())
    out.push_back({"occupancy", "exceeds human_pool size (" +
                                    std::to_string(config.human_pool.size()) + ")"});
  if (static_cast<std::size_t>(std::max(config.occupancy, 0)) > config.seat_layout.size())
    out.push_back({"occupancy", "exceeds the number of seats (" +
                                    std::to_string(config.seat_layout.size()) + ")"});
  if (static_cast<std::size_t>(std::max(config.occupancy, 0)) > config.palette.size())
    out.push_back({"occupancy", "exceeds the number of palette colors (" +
                                    std::to_string(config.palette.size()) + ")"});

  std::set<std::string> seat_ids;
  for (std::size_t i = 0; i < config.seat_layout.size(); ++i) {
    const auto& s = config.seat_layout[i];
    const std::string path = indexed("seat_layout", i);
    if (s.seat_id.empty())
      out.push_back({path + ".seat_id", "must not be empty"});
    else if (!seat_ids.insert(s.seat_id).second)
      out.push_back({path + ".seat_id", "duplicate id '" + s.seat_id + "'"});
  }

  std::set<std::pair<std::string, RotationAxis>> bone_axes;
  for (std::size_t i = 0; i < config.pose_ranges.size(); ++i) {
    const auto& r = config.pose_ranges[i];
    const std::string path = indexed("pose_ranges", i);
    if (r.bone_name.empty()) out.push_back({path + ".bone_name", "must not be empty"});
    if (!(r.min_deg <= r.max_deg))
      out.push_back({path, "min_deg (" + std::to_string(r.min_deg) + ") > max_deg (" +
                               std::to_string(r.max_deg) + ")"});
    if (r.distribution != RotationRange::kUniform)
      out.push_back({path + ".distribution", "only 'uniform' is supported"});
    if (!bone_axes.insert({r.bone_name, r.axis}).second)
      out.push_back({path, "duplicate range for " + r.bone_name + "/" + to_string(r.axis)});
  }

  if (config.hdri_pool.empty() && config.light_presets.empty())
    out.push_back({"hdri_pool", "hdri_pool and light_presets are both empty"});
  for (std::size_t i = 0; i < config.hdri_pool.size(); ++i)
    if (config.hdri_pool[i].empty()) out.push_back({indexed("hdri_pool", i), "must not be empty"});
  for (std::size_t i = 0; i < config.light_presets.size(); ++i)
    check_light(config.light_presets[i], indexed("light_presets", i), out);

  for (const auto& problem : camera_violations(config.camera)) {
    const auto colon = problem.find(':');
    out.push_back({"camera." + problem.substr(0, colon), problem.substr(colon + 2)});
  }
  if (config.image_size.width <= 0 || config.image_size.height <= 0)
    out.push_back({"image_size", "width and height must be positive"});
  else if (!(config.camera.image_size == config.image_size))
    out.push_back({"camera.image_size", "must equal image_size"});

  try {
    check_palette(config.palette);
  } catch (const ConfigError& e) {
    out.push_back({"palette", e.what()});
  }
  if (config.structuring_element_size < 1 || config.structuring_element_size % 2 == 0)
    out.push_back({"structuring_element_size", "must be odd and >= 1"});
  if (!(config.approx_epsilon >= 0.0)) out.push_back({"approx_epsilon", "must be non-negative"});
  return out;
}

std::vector<HumanSpec> sample_human_pool(const HumanPoolSpec& spec) {
  if (spec.count < 1) throw DomainError("sample_human_pool: count must be >= 1");
  for (const auto& [name, r] : spec.ranges)
    if (!(0.0 <= r.min && r.min <= r.max && r.max <= 1.0))
      throw DomainError("sample_human_pool: range '" + name + "' must satisfy 0 <= min <= max <= 1");
  if (spec.clothing_assets.empty()) throw ConfigError("clothing_assets: asset list is empty");
  if (spec.hair_assets.empty()) throw ConfigError("hair_assets: asset list is empty");

  Xoshiro256StarStar rng(spec.seed);
  std::vector<HumanSpec> pool;
  pool.reserve(static_cast<std::size_t>(spec.count));
  for (int i = 0; i < spec.count; ++i) {
    HumanSpec h;
    char id[32];
    std::snprintf(id, sizeof id, "human_%03d", i);
    h.human_id = id;
    for (const auto& [name, r] : spec.ranges) h.attributes[name] = rng.uniform(r.min, r.max);
    h.clothing_asset = spec.clothing_assets[rng.below(spec.clothing_assets.size())];
    h.hair_asset = spec.hair_assets[rng.below(spec.hair_assets.size())];
    h.skeleton_ref = spec.skeleton_ref;
    pool.push_back(std::move(h));
  }
  return pool;
}

SceneDescription sample_scene(const GenerationConfig& config, std::uint64_t sample_index) {
  if (sample_index >= config.sample_count)
    throw RangeError("sample_scene: index " + std::to_string(sample_index) +
                     " >= sample_count " + std::to_string(config.sample_count));
  const auto occupancy = static_cast<std::size_t>(std::max(config.occupancy, 0));
  if (occupancy > config.human_pool.size() || occupancy > config.seat_layout.size())
    throw ConfigError("occupancy: not enough humans or seats");
  if (config.hdri_pool.empty() && config.light_presets.empty())
    throw ConfigError("hdri_pool: no background to draw from");

  SceneDescription scene;
  scene.sample_id = sample_index;
  scene.derived_seed = derive_seed(config.master_seed, sample_index);
  scene.camera = config.camera;
  scene.camera.image_size = config.image_size;
  scene.image_size = config.image_size;

  Xoshiro256StarStar rng(scene.derived_seed);

  std::vector<std::size_t> order(config.human_pool.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  for (std::size_t i = 0; i < occupancy; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(order.size() - i));
    std::swap(order[i], order[j]);
  }

  scene.placements.reserve(occupancy);
  for (std::size_t k = 0; k < occupancy; ++k) {
    Placement p;
    p.instance_id = static_cast<InstanceId>(k + 1);
    p.seat = config.seat_layout[k];
    p.seat_id = p.seat.seat_id;
    p.human = config.human_pool[order[k]];
    p.human_id = p.human.human_id;
    for (const auto& range : config.pose_ranges)
      p.bone_pose[range.bone_name][range.axis] = rng.uniform(range.min_deg, range.max_deg);
    scene.placements.push_back(std::move(p));
  }

  const std::size_t n_hdri = config.hdri_pool.size();
  const std::size_t pick = rng.below(n_hdri + config.light_presets.size());
  Background& bg = scene.background;
  if (pick < n_hdri) {
    bg.source = BackgroundSource::kHdriPool;
    bg.index = pick;
    bg.light = LightingPreset{};
    bg.light.kind = LightKind::kHdriBackground;
    bg.light.hdri_ref = config.hdri_pool[pick];
    bg.intensity = 1.0;
  } else {
    bg.source = BackgroundSource::kLightPresets;
    bg.index = pick - n_hdri;
    bg.light = config.light_presets[bg.index];
    bg.intensity = rng.uniform(bg.light.intensity_min, bg.light.intensity_max);
  }
  bg.light.intensity_min = bg.light.intensity_max = bg.intensity;
  return scene;
}

YawPitchRoll head_pose_of(const Placement& placement) {
  YawPitchRoll pose;
  auto it = placement.bone_pose.find(kNeckBone);
  if (it == placement.bone_pose.end()) return pose;
  const auto& angles = it->second;
  if (auto a = angles.find(RotationAxis::kHorizontal); a != angles.end()) pose.yaw_deg = a->second;
  if (auto a = angles.find(RotationAxis::kVertical); a != angles.end()) pose.pitch_deg = a->second;
  if (auto a = angles.find(RotationAxis::kRoll); a != angles.end()) pose.roll_deg = a->second;
  return pose;
}

HumanPoolSpec default_human_pool_spec() {
  HumanPoolSpec spec;
  spec.ranges = {{"height", {0.2, 0.9}},     {"width", {0.2, 0.8}},
                 {"proportions", {0.3, 0.7}}, {"eye_size", {0.3, 0.7}},
                 {"mouth", {0.3, 0.7}},       {"forehead", {0.3, 0.7}}};
  spec.count = 30;
  spec.seed = 2022;
  spec.clothing_assets = {"clothes/casual_01", "clothes/casual_02", "clothes/formal_01",
                          "clothes/sport_01",  "clothes/winter_01", "clothes/summer_01"};
  spec.hair_assets = {"hair/short_01", "hair/short_02", "hair/long_01", "hair/ponytail_01",
                      "hair/bald"};
  spec.skeleton_ref = "cmu_mb";
  return spec;
}

GenerationConfig default_config() {
  GenerationConfig c;
  c.master_seed = 42;
  c.sample_count = 20;
  c.human_pool = sample_human_pool(default_human_pool_spec());
  // Camera on the center mirror looking rearward; see geometry.hpp for axes.
  c.seat_layout = {
      {"front_left", {-0.38, 0.45, 0.60}, {180.0, 0.0, 0.0}},
      {"front_right", {0.38, 0.45, 0.60}, {180.0, 0.0, 0.0}},
      {"rear_left", {-0.45, 0.40, 1.45}, {180.0, 0.0, 0.0}},
      {"rear_middle", {0.0, 0.40, 1.45}, {180.0, 0.0, 0.0}},
      {"rear_right", {0.45, 0.40, 1.45}, {180.0, 0.0, 0.0}},
  };
  c.occupancy = 5;
  c.pose_ranges = {{kNeckBone, RotationAxis::kVertical, -15.0, 15.0, RotationRange::kUniform},
                   {kNeckBone, RotationAxis::kHorizontal, -15.0, 15.0, RotationRange::kUniform}};
  c.hdri_pool = {"hdri/city_street_01.hdr", "hdri/forest_clearing_01.hdr",
                 "hdri/living_room_01.hdr", "hdri/parking_garage_01.hdr"};

  LightingPreset point;
  point.kind = LightKind::kPoint;
  point.intensity_min = 50.0;
  point.intensity_max = 150.0;
  point.position = Vec3{0.0, -0.2, 1.0};

  LightingPreset spot;
  spot.kind = LightKind::kSpot;
  spot.intensity_min = 100.0;
  spot.intensity_max = 300.0;
  spot.position = Vec3{0.0, -0.3, 0.0};
  spot.direction = Vec3{0.0, 0.0, 1.0};
  spot.cone_angle_deg = 60.0;

  LightingPreset sun;
  sun.kind = LightKind::kDirectional;
  sun.intensity_min = 1.0;
  sun.intensity_max = 5.0;
  sun.direction = Vec3{0.6, 0.8, 0.0};

  LightingPreset area;
  area.kind = LightKind::kArea;
  area.intensity_min = 20.0;
  area.intensity_max = 80.0;
  area.position = Vec3{0.0, -0.4, 1.0};
  area.direction = Vec3{0.0, 1.0, 0.0};
  area.area_size = AreaSize{0.8, 0.5};

  c.light_presets = {point, spot, sun, area};

  c.image_size = {640, 480};
  c.camera.fov_deg = 180.0;
  c.camera.sensor_width_mm = 5.3;
  c.camera.image_size = c.image_size;
  c.camera.pose.position = {0.0, 0.0, 0.0};
  c.camera.pose.orientation = {0.0, -10.0, 0.0};
  return c;
}

}  // namespace cabinsynth
