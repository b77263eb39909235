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
#include <random>

#include "cabinsynth/camera.hpp"
#include "cabinsynth/error.hpp"
#include "support/oracles.hpp"

using namespace cabinsynth;

namespace {

// Closed-form equisolid projection for a camera at the origin with identity
// orientation, written out independently of the library.
struct Expected {
  double u, v;
};

Expected equisolid_oracle(Vec3 p, double fov_deg, double sensor_mm, int w, int h) {
  const double f = (sensor_mm / 2.0) / (2.0 * std::sin(fov_deg * M_PI / 180.0 / 4.0));
  const double rho = std::hypot(p.x, p.y);
  const double theta = std::atan2(rho, p.z);
  const double r_px = 2.0 * f * std::sin(theta / 2.0) * (w / sensor_mm);
  if (rho == 0.0) return {w / 2.0, h / 2.0};
  return {w / 2.0 + r_px * p.x / rho, h / 2.0 + r_px * p.y / rho};
}

}  // namespace

TEST_CASE("focal length from field of view") {
  CHECK(focal_from_fov(180.0, 5.3) == doctest::Approx(2.65 / (2.0 * std::sin(M_PI / 4))).epsilon(1e-12));
  CHECK(std::abs(focal_from_fov(180.0, 5.3) - 1.873833) < 1e-6);
  CHECK(std::abs(focal_from_fov(180.0, 4.0) - 4.0 / (2.0 * std::sqrt(2.0))) < 1e-12);
  CHECK_THROWS_AS(focal_from_fov(0.0, 5.3), DomainError);
  CHECK_THROWS_AS(focal_from_fov(-10.0, 5.3), DomainError);
}

TEST_CASE("half-FOV ray lands on the sensor half-width") {
  for (double fov : {60.0, 120.0, 180.0, 250.0, 360.0}) {
    const double f = focal_from_fov(fov, 5.3);
    const double r = equisolid_radius_mm(fov * M_PI / 360.0, f);
    CHECK(std::abs(r - 2.65) / 2.65 < 1e-12);
  }
}

TEST_CASE("optical axis maps to the principal point") {
  CameraSpec cam;
  const auto p = project(Vec3{0, 0, 2.0}, cam);
  CHECK(p.valid);
  CHECK(p.u == doctest::Approx(320.0));
  CHECK(p.v == doctest::Approx(240.0));
  const Vec3 ray = unproject(PixelPoint{320.0, 240.0, true}, cam);
  CHECK(ray.x == doctest::Approx(0.0));
  CHECK(ray.y == doctest::Approx(0.0));
  CHECK(ray.z == doctest::Approx(1.0));
}

TEST_CASE("ninety degree ray lands half a frame width from the center") {
  CameraSpec cam;
  for (int w : {640, 1280, 333}) {
    cam.image_size = {w, 480};
    const auto p = EquisolidCamera(cam).project_camera(Vec3{1.0, 0.0, 0.0});
    CHECK(std::abs((p.u - w / 2.0) - w / 2.0) <= 1e-12 * w);
    CHECK(p.v == doctest::Approx(240.0));
  }
}

TEST_CASE("ray at 135 degrees is outside a 180 degree camera") {
  CameraSpec cam;
  const double t = 135.0 * M_PI / 180.0;
  CHECK_FALSE(project(Vec3{std::sin(t), 0.0, std::cos(t)}, cam).valid);
  CHECK_FALSE(project(Vec3{0.0, 0.0, -1.0}, cam).valid);
}

TEST_CASE("projection matches the closed-form oracle") {
  CameraSpec cam;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 p{d(gen), d(gen), d(gen) + 0.2};
    const auto got = project(p, cam);
    const auto want = equisolid_oracle(p, 180.0, 5.3, 640, 480);
    CHECK(got.u == doctest::Approx(want.u).epsilon(1e-12));
    CHECK(got.v == doctest::Approx(want.v).epsilon(1e-12));
  }
}

TEST_CASE("project and unproject round-trip over 1000 in-FOV pixels") {
  CameraSpec cam;
  cam.pose.position = {0.1, -0.2, 0.05};
  cam.pose.orientation = {20.0, -10.0, 5.0};
  const EquisolidCamera model(cam);
  const double limit = 2.0 * model.focal_px() * std::sin((90.0 - 0.5) * M_PI / 360.0);
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ux(0.0, 640.0), vy(0.0, 480.0), depth(0.3, 4.0);
  double worst = 0.0;
  int done = 0;
  while (done < 1000) {
    const double u = ux(gen), v = vy(gen);
    if (std::hypot(u - 320.0, v - 240.0) > limit) continue;
    const Vec3 ray = unproject(PixelPoint{u, v, true}, cam);
    CHECK(norm(ray) == doctest::Approx(1.0).epsilon(1e-12));
    const Vec3 world = cam.pose.position + depth(gen) * model.camera_to_world_direction(ray);
    const auto back = project(world, cam);
    REQUIRE(back.valid);
    worst = std::max(worst, std::hypot(back.u - u, back.v - v));
    ++done;
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("pixels beyond the image circle cannot be unprojected") {
  CameraSpec cam;
  CHECK_THROWS_AS(unproject(PixelPoint{0.5, 0.5, true}, cam), OutOfFovError);
  CHECK_THROWS_AS(unproject(PixelPoint{639.9, 479.9, true}, cam), OutOfFovError);
  CHECK_THROWS_AS(unproject(PixelPoint{-1.0, 240.0, true}, cam), OutOfFovError);
  CHECK_NOTHROW(unproject(PixelPoint{320.0 + 319.0, 240.0, true}, cam));
}

TEST_CASE("radius grows strictly with incidence angle") {
  const EquisolidCamera cam{CameraSpec{}};
  for (double az : {0.0, 0.7, 2.0, 4.0}) {
    double prev = -1.0;
    for (int k = 0; k <= 900; ++k) {
      const double t = k * 0.1 * M_PI / 180.0;
      const Vec3 dir{std::sin(t) * std::cos(az), std::sin(t) * std::sin(az), std::cos(t)};
      const auto p = cam.project_camera(dir);
      const double r = std::hypot(p.u - cam.cx(), p.v - cam.cy());
      CHECK(r > prev);
      prev = r;
    }
  }
}

TEST_CASE("projection is invariant under a shared rigid transform") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> d(-1.0, 1.0), ang(-0.6, 0.6);
  for (int trial = 0; trial < 200; ++trial) {
    CameraSpec cam;
    cam.pose.position = {d(gen), d(gen), d(gen)};
    cam.pose.orientation = {ang(gen) * 90, ang(gen) * 60, ang(gen) * 90};
    Vec3 axis{d(gen), d(gen), d(gen)};
    axis = (1.0 / norm(axis)) * axis;
    const RigidTransform t{oracle::axis_angle(axis, ang(gen)), {d(gen), d(gen), d(gen)}};

    CameraSpec moved = cam;
    moved.pose.position = t.apply(cam.pose.position);
    const Mat3 r = t.rotation * rotation_from(cam.pose.orientation);
    moved.pose.orientation = oracle::decompose(r);
    if (std::abs(moved.pose.orientation.pitch_deg) > 80) continue;

    const Vec3 p = cam.pose.position + EquisolidCamera(cam).camera_to_world_direction(Vec3{d(gen) * 0.5, d(gen) * 0.5, 1.0});
    const auto a = project(p, cam);
    const auto b = project(t.apply(p), moved);
    CHECK(b.u == doctest::Approx(a.u).epsilon(1e-9));
    CHECK(b.v == doctest::Approx(a.v).epsilon(1e-9));
    CHECK(distance_to_camera(t.apply(p), moved) == doctest::Approx(distance_to_camera(p, cam)).epsilon(1e-12));
  }
}

TEST_CASE("distance to camera is Euclidean") {
  CameraSpec cam;
  CHECK(distance_to_camera(Vec3{3, 4, 0}, cam) == 5.0);
  cam.pose.position = {1, 2, 3};
  CHECK(distance_to_camera(Vec3{1, 2, 3}, cam) == 0.0);
}

TEST_CASE("a point at the camera center is degenerate") {
  CameraSpec cam;
  cam.pose.position = {0.5, 0.5, 0.5};
  CHECK_THROWS_AS(project(cam.pose.position, cam), DegenerateInputError);
}

TEST_CASE("explicit focal length overrides the derived one") {
  CameraSpec cam;
  cam.focal_length_mm = 2.5;
  CHECK(EquisolidCamera(cam).focal_mm() == 2.5);
  cam.focal_length_mm = -1.0;
  CHECK_FALSE(camera_violations(cam).empty());
  CHECK_THROWS_AS(EquisolidCamera{cam}, DomainError);
}

TEST_CASE("camera violations name their field") {
  CameraSpec cam;
  CHECK(camera_violations(cam).empty());
  cam.sensor_width_mm = 0.0;
  cam.image_size.width = 0;
  const auto v = camera_violations(cam);
  REQUIRE(v.size() == 2);
  CHECK(v[0].rfind("sensor_width_mm", 0) == 0);
  CHECK(v[1].rfind("image_size", 0) == 0);
}
