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

#include <cmath>

#include "cabinsynth/contours.hpp"
#include "cabinsynth/error.hpp"
#include "cabinsynth/oracle_renderer.hpp"
#include "cabinsynth/reference.hpp"
#include "cabinsynth/scene_sampler.hpp"
#include "support/oracles.hpp"

using namespace cabinsynth;

namespace {

ProxyBody sphere(InstanceId id, Vec3 center, double radius) {
  ProxyBody b;
  b.instance_id = id;
  b.ellipsoids = {Ellipsoid{center, {radius, radius, radius}, Mat3{}}};
  b.joints[kHeadJoint] = center;
  return b;
}

// Silhouette radius of a sphere seen head-on through the equisolid mapping.
double disc_radius_px(const CameraSpec& cam, double radius, double distance) {
  const double f_mm = (cam.sensor_width_mm / 2) / (2 * std::sin(cam.fov_deg * M_PI / 720.0));
  const double f_px = f_mm * cam.image_size.width / cam.sensor_width_mm;
  return 2.0 * f_px * std::sin(std::asin(radius / distance) / 2.0);
}

SceneDescription single_passenger_scene() {
  auto config = default_config();
  auto scene = sample_scene(config, 0);
  scene.placements.resize(1);
  return scene;
}

}  // namespace

TEST_CASE("no passengers renders an empty mask") {
  CHECK(rasterize(std::vector<ProxyBody>{}, CameraSpec{}) == IndexedMask(640, 480));
  auto scene = single_passenger_scene();
  scene.placements.clear();
  CHECK(instance_ids(rasterize(scene)).empty());
  CHECK(joints_of(scene).empty());
}

TEST_CASE("an on-axis sphere renders as a centred disc of the analytic radius") {
  CameraSpec cam;
  for (double d : {0.8, 1.5, 3.0}) {
    const double radius = 0.2;
    const auto mask = rasterize({sphere(1, {0, 0, d}, radius)}, cam);
    const double r = disc_radius_px(cam, radius, d);
    for (int y = 0; y < 480; ++y)
      for (int x = 0; x < 640; ++x) {
        const double dist = std::hypot(x + 0.5 - 320.0, y + 0.5 - 240.0);
        if (dist < r - 1.0) REQUIRE(mask(x, y) == 1);
        if (dist > r + 1.0) REQUIRE(mask(x, y) == 0);
      }
    const auto box = oracle::scan_bbox(extract_instance(mask, 1));
    REQUIRE(box);
    CHECK(std::abs(box->x + box->w / 2.0 - 320.0) <= 1.0);
    CHECK(std::abs(box->y + box->h / 2.0 - 240.0) <= 1.0);
    CHECK(std::abs(box->w / 2.0 - r) <= 1.0);
  }
}

TEST_CASE("nearer proxies win shared pixels and ties go to the lower id") {
  CameraSpec cam;
  const auto both = rasterize({sphere(1, {0, 0, 3.0}, 0.6), sphere(2, {0, 0, 1.0}, 0.1)}, cam);
  const double near_r = disc_radius_px(cam, 0.1, 1.0);
  for (int y = 0; y < 480; ++y)
    for (int x = 0; x < 640; ++x)
      if (std::hypot(x + 0.5 - 320.0, y + 0.5 - 240.0) < near_r - 1.0) REQUIRE(both(x, y) == 2);

  const auto tie = rasterize({sphere(3, {0, 0, 2.0}, 0.3), sphere(1, {0, 0, 2.0}, 0.3)}, cam);
  CHECK(instance_ids(tie) == std::vector<InstanceId>{1});
}

TEST_CASE("moving a proxy closer never removes it from a pixel") {
  CameraSpec cam;
  const auto far = rasterize({sphere(1, {0.3, 0.0, 2.0}, 0.25), sphere(2, {0.0, 0.0, 1.6}, 0.3)}, cam);
  const auto near = rasterize({sphere(1, {0.24, 0.0, 1.6}, 0.25 * 0.8), sphere(2, {0.0, 0.0, 1.6}, 0.3)}, cam);
  // Same angular size, smaller depth: every pixel of id 1 before is id 1 after.
  for (int y = 0; y < 480; ++y)
    for (int x = 0; x < 640; ++x)
      if (far(x, y) == 1) CHECK(near(x, y) == 1);
}

TEST_CASE("parallel rasterizer matches the serial reference") {
  auto config = default_config();
  config.image_size = {160, 120};
  config.camera.image_size = config.image_size;
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto scene = sample_scene(config, i);
    CHECK(rasterize(scene) == reference::rasterize(proxies_of(scene), scene.camera));
  }
  CameraSpec wide;
  wide.fov_deg = 220.0;
  wide.image_size = {96, 64};
  const std::vector<ProxyBody> bodies{sphere(1, {0.5, 0, -0.2}, 0.3), sphere(2, {0, 0, 1.0}, 0.2)};
  CHECK(rasterize(bodies, wide) == reference::rasterize(bodies, wide));
}

TEST_CASE("rasterization is deterministic") {
  const auto scene = sample_scene(default_config(), 4);
  CHECK(rasterize(scene) == rasterize(scene));
  CHECK(render_rgb(scene) == render_rgb(scene));
}

TEST_CASE("joints sit inside their proxies") {
  const auto scene = sample_scene(default_config(), 2);
  const auto bodies = proxies_of(scene);
  for (const auto& b : bodies) {
    CHECK(contains(b.ellipsoids[1], b.joints.at(kHeadJoint)));
    CHECK(contains(b.ellipsoids[0], b.joints.at(kTorsoJoint)));
  }
  CHECK(joints_of(scene).size() == 2 * scene.placements.size());
}

TEST_CASE("a lone front passenger's head projects onto its own mask") {
  const auto scene = single_passenger_scene();
  const auto mask = rasterize(scene);
  const auto joints = joints_of(scene);
  const auto p = project(joints.at({1, kHeadJoint}), scene.camera);
  REQUIRE(p.valid);
  CHECK(mask(static_cast<int>(p.u), static_cast<int>(p.v)) == 1);
}

TEST_CASE("hole injection at rate zero is the identity") {
  const auto mask = rasterize(sample_scene(default_config(), 0));
  CHECK(inject_holes(mask, 0.0, 1) == mask);
  CHECK_THROWS_AS(inject_holes(mask, 1.5, 1), DomainError);
  CHECK_THROWS_AS(inject_holes(mask, -0.1, 1), DomainError);
}

TEST_CASE("injected holes are isolated interior pixels") {
  const auto mask = rasterize({sphere(1, {0, 0, 1.0}, 0.4)}, CameraSpec{});
  const auto noisy = inject_holes(mask, 0.01, 77);
  CHECK(noisy == inject_holes(mask, 0.01, 77));
  int eligible = 0, cleared = 0;
  for (int y = 1; y < 479; ++y)
    for (int x = 1; x < 639; ++x) {
      bool interior = mask(x, y) != 0;
      for (int dy = -1; dy <= 1 && interior; ++dy)
        for (int dx = -1; dx <= 1 && interior; ++dx) interior = mask(x + dx, y + dy) == mask(x, y);
      eligible += interior;
      if (noisy(x, y) == mask(x, y)) continue;
      ++cleared;
      CHECK(interior);
      CHECK(noisy(x, y) == 0);
      for (int dy = -1; dy <= 1; ++dy)
        for (int dx = -1; dx <= 1; ++dx)
          if (dx || dy) CHECK(noisy(x + dx, y + dy) == mask(x, y));
    }
  CHECK(cleared == static_cast<int>(std::llround(0.01 * eligible)));
}

TEST_CASE("closing repairs injected holes on oracle masks") {
  const StructuringElement se(3);
  for (std::uint64_t i = 0; i < 5; ++i) {
    const auto mask = rasterize(sample_scene(default_config(), i));
    const auto noisy = inject_holes(mask, 0.01, 1000 + i);
    for (auto id : instance_ids(mask)) CHECK(cleaned_instance(noisy, id, se) == cleaned_instance(mask, id, se));
  }
}
