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

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "cabinsynth/error.hpp"
#include "cabinsynth/json_io.hpp"
#include "cabinsynth/rng.hpp"
#include "cabinsynth/scene_sampler.hpp"
#include "support/oracles.hpp"

using namespace cabinsynth;

namespace {

HumanPoolSpec tiny_pool(int count, std::uint64_t seed) {
  HumanPoolSpec spec;
  spec.ranges = {{"height", {0.5, 0.5}}, {"width", {0.1, 0.9}}};
  spec.count = count;
  spec.seed = seed;
  spec.clothing_assets = {"c0", "c1"};
  spec.hair_assets = {"h0"};
  return spec;
}

std::size_t count_field(const std::vector<Violation>& v, const std::string& field) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [&](const Violation& x) { return x.field == field; }));
}

}  // namespace

TEST_CASE("degenerate slider range pins the value") {
  const auto pool = sample_human_pool(tiny_pool(3, 7));
  REQUIRE(pool.size() == 3);
  for (const auto& h : pool) CHECK(h.attributes.at("height") == 0.5);
}

TEST_CASE("a pool of thirty has thirty distinct ids and in-range sliders") {
  auto spec = default_human_pool_spec();
  spec.seed = 31337;
  const auto pool = sample_human_pool(spec);
  REQUIRE(pool.size() == 30);
  std::set<std::string> ids;
  for (const auto& h : pool) {
    ids.insert(h.human_id);
    for (const auto& [name, range] : spec.ranges) {
      const double v = h.attributes.at(name);
      CHECK(v >= range.min);
      CHECK(v <= range.max);
    }
    CHECK(std::find(spec.clothing_assets.begin(), spec.clothing_assets.end(), h.clothing_asset) !=
          spec.clothing_assets.end());
    CHECK(std::find(spec.hair_assets.begin(), spec.hair_assets.end(), h.hair_asset) != spec.hair_assets.end());
  }
  CHECK(ids.size() == 30);
}

TEST_CASE("pool generation is deterministic") {
  CHECK(sample_human_pool(tiny_pool(10, 5)) == sample_human_pool(tiny_pool(10, 5)));
  CHECK(sample_human_pool(tiny_pool(10, 5)) != sample_human_pool(tiny_pool(10, 6)));
}

TEST_CASE("empty asset lists are reported by name") {
  auto spec = tiny_pool(3, 1);
  spec.hair_assets.clear();
  try {
    sample_human_pool(spec);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("hair_assets") != std::string::npos);
  }
  spec = tiny_pool(3, 1);
  spec.clothing_assets.clear();
  CHECK_THROWS_AS(sample_human_pool(spec), ConfigError);
}

TEST_CASE("bad pool parameters are domain errors") {
  auto spec = tiny_pool(0, 1);
  CHECK_THROWS_AS(sample_human_pool(spec), DomainError);
  spec = tiny_pool(3, 1);
  spec.ranges["width"] = {0.8, 0.2};
  CHECK_THROWS_AS(sample_human_pool(spec), DomainError);
}

TEST_CASE("default scene places five distinct humans on distinct seats") {
  const auto config = default_config();
  for (std::uint64_t i = 0; i < config.sample_count; ++i) {
    const auto scene = sample_scene(config, i);
    REQUIRE(scene.placements.size() == 5);
    std::set<std::string> humans, seats;
    std::set<int> ids;
    for (const auto& p : scene.placements) {
      humans.insert(p.human_id);
      seats.insert(p.seat_id);
      ids.insert(p.instance_id);
    }
    CHECK(humans.size() == 5);
    CHECK(seats.size() == 5);
    CHECK(ids == std::set<int>{1, 2, 3, 4, 5});
    CHECK(scene.derived_seed == derive_seed(config.master_seed, i));
  }
}

TEST_CASE("seats are filled in seat_layout order") {
  const auto config = default_config();
  const auto scene = sample_scene(config, 3);
  for (std::size_t k = 0; k < scene.placements.size(); ++k)
    CHECK(scene.placements[k].seat_id == config.seat_layout[k].seat_id);
}

TEST_CASE("a pool equal to occupancy is placed as a permutation") {
  auto config = default_config();
  config.human_pool.resize(5);
  config.sample_count = 50;
  std::set<std::vector<std::string>> orders;
  for (std::uint64_t i = 0; i < config.sample_count; ++i) {
    const auto scene = sample_scene(config, i);
    std::vector<std::string> got;
    for (const auto& p : scene.placements) got.push_back(p.human_id);
    std::vector<std::string> sorted = got;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> pool;
    for (const auto& h : config.human_pool) pool.push_back(h.human_id);
    CHECK(sorted == pool);
    orders.insert(got);
  }
  CHECK(orders.size() > 1);
}

TEST_CASE("sample_scene is referentially transparent and order independent") {
  const auto config = default_config();
  std::vector<std::string> forward, backward(config.sample_count);
  for (std::uint64_t i = 0; i < config.sample_count; ++i) forward.push_back(scene_to_json(sample_scene(config, i)).dump());
  for (std::uint64_t i = config.sample_count; i-- > 0;) backward[i] = scene_to_json(sample_scene(config, i)).dump();
  CHECK(forward == backward);
}

TEST_CASE("changing one sample's seed source leaves others untouched") {
  auto a = default_config();
  auto b = a;
  b.sample_count = 1000;
  for (std::uint64_t i = 0; i < a.sample_count; ++i) CHECK(sample_scene(a, i) == sample_scene(b, i));
  b.master_seed = 43;
  CHECK(sample_scene(a, 0) != sample_scene(b, 0));
}

TEST_CASE("index past sample_count is a range error") {
  const auto config = default_config();
  CHECK_THROWS_AS(sample_scene(config, config.sample_count), RangeError);
}

TEST_CASE("selection frequency and angle ranges over 10k scenes") {
  auto config = default_config();
  config.sample_count = 10000;
  std::map<std::string, int> counts;
  std::vector<int> bins(20, 0);
  int angles = 0;
  for (std::uint64_t i = 0; i < config.sample_count; ++i) {
    const auto scene = sample_scene(config, i);
    for (const auto& p : scene.placements) {
      ++counts[p.human_id];
      for (const auto& [bone, axes] : p.bone_pose)
        for (const auto& [axis, deg] : axes) {
          REQUIRE(deg >= -15.0);
          REQUIRE(deg <= 15.0);
          if (axis == RotationAxis::kVertical) {
            ++bins[std::min(19, static_cast<int>((deg + 15.0) / 30.0 * 20))];
            ++angles;
          }
        }
    }
  }
  const double n = 10000, p = 5.0 / 30.0;
  const double expected = n * p, sigma = std::sqrt(n * p * (1 - p));
  REQUIRE(counts.size() == 30);
  for (const auto& [id, c] : counts) CHECK(std::abs(c - expected) <= 4 * sigma);
  double chi2 = 0;
  const double e = angles / 20.0;
  for (int b : bins) chi2 += (b - e) * (b - e) / e;
  CHECK(chi2 < oracle::kChi2Critical19At0001);
}

TEST_CASE("validate_config examples") {
  CHECK(validate_config(default_config()).empty());

  auto c = default_config();
  c.occupancy = 6;
  auto v = validate_config(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "occupancy");

  c = default_config();
  c.pose_ranges[0].min_deg = 10;
  c.pose_ranges[0].max_deg = -10;
  v = validate_config(c);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "pose_ranges[0]");
}

TEST_CASE("validate_config flags lighting and camera problems") {
  auto c = default_config();
  for (auto& l : c.light_presets)
    if (l.kind == LightKind::kDirectional) l.direction = Vec3{1.0, 1.0, 0.0};
  CHECK(count_field(validate_config(c), "light_presets[2].direction") == 1);

  c = default_config();
  c.light_presets[1].cone_angle_deg = 180.0;
  CHECK(count_field(validate_config(c), "light_presets[1].cone_angle_deg") == 1);

  c = default_config();
  c.camera.fov_deg = 0.0;
  CHECK(!validate_config(c).empty());

  c = default_config();
  c.structuring_element_size = 4;
  CHECK(count_field(validate_config(c), "structuring_element_size") == 1);

  c = default_config();
  c.hdri_pool.clear();
  c.light_presets.clear();
  CHECK(count_field(validate_config(c), "hdri_pool") == 1);
}

TEST_CASE("head pose mirrors the sampled neck angles") {
  const auto scene = sample_scene(default_config(), 0);
  for (const auto& p : scene.placements) {
    const auto pose = head_pose_of(p);
    CHECK(pose.pitch_deg == p.bone_pose.at("neck").at(RotationAxis::kVertical));
    CHECK(pose.yaw_deg == p.bone_pose.at("neck").at(RotationAxis::kHorizontal));
    CHECK(pose.roll_deg == 0.0);
  }
}
