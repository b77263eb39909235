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

#include "cabinsynth/oracle_renderer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cabinsynth/error.hpp"
#include "cabinsynth/rng.hpp"
#include "cabinsynth/scene_sampler.hpp"

namespace cabinsynth {

namespace {

// Rays starting this close to a surface do not count as hits.
constexpr double kMinHitDistance = 1e-9;

double slider(const HumanSpec& h, const char* name) {
  auto it = h.attributes.find(name);
  return it == h.attributes.end() ? 0.5 : it->second;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rgb tint_of(const std::string& key) {
  const std::uint64_t h = splitmix64_mix(fnv1a(key));
  return {static_cast<std::uint8_t>(64 + (h & 0x7F)), static_cast<std::uint8_t>(64 + ((h >> 8) & 0x7F)),
          static_cast<std::uint8_t>(64 + ((h >> 16) & 0x7F))};
}

struct Hit {
  InstanceId id = 0;
  double t = 0.0;
  std::size_t body = 0;
  std::size_t ellipsoid = 0;
};

// Ties go to the lower instance id, so body order never matters.
Hit nearest_hit(const std::vector<ProxyBody>& bodies, Vec3 origin, Vec3 dir) {
  Hit best;
  for (std::size_t b = 0; b < bodies.size(); ++b)
    for (std::size_t e = 0; e < bodies[b].ellipsoids.size(); ++e) {
      auto t = intersect(bodies[b].ellipsoids[e], origin, dir);
      if (t && (best.id == 0 || *t < best.t || (*t == best.t && bodies[b].instance_id < best.id)))
        best = {bodies[b].instance_id, *t, b, e};
    }
  return best;
}

Rgb scale(Rgb c, double s) {
  auto ch = [s](std::uint8_t v) {
    return static_cast<std::uint8_t>(std::clamp(std::lround(v * s), 0L, 255L));
  };
  return {ch(c.r), ch(c.g), ch(c.b)};
}

}  // namespace

std::optional<double> intersect(const Ellipsoid& e, Vec3 origin, Vec3 direction) noexcept {
  const Mat3 to_local = e.orientation.transposed();
  const Vec3 o = hadamard_div(to_local * (origin - e.center), e.semi_axes);
  const Vec3 d = hadamard_div(to_local * direction, e.semi_axes);
  const double a = dot(d, d);
  const double b = dot(o, d);
  const double c = dot(o, o) - 1.0;
  const double disc = b * b - a * c;
  if (a == 0.0 || disc < 0.0) return std::nullopt;
  const double root = std::sqrt(disc);
  const double t0 = (-b - root) / a;
  if (t0 > kMinHitDistance) return t0;
  const double t1 = (-b + root) / a;
  if (t1 > kMinHitDistance) return t1;
  return std::nullopt;
}

bool contains(const Ellipsoid& e, Vec3 p) noexcept {
  const Vec3 q = hadamard_div(e.orientation.transposed() * (p - e.center), e.semi_axes);
  return dot(q, q) <= 1.0;
}

std::vector<ProxyBody> proxies_of(const SceneDescription& scene) {
  std::vector<ProxyBody> bodies;
  bodies.reserve(scene.placements.size());
  for (const auto& p : scene.placements) {
    const double size = 0.85 + 0.3 * slider(p.human, "height");
    const double girth = 0.85 + 0.3 * slider(p.human, "width");
    const Mat3 seat = rotation_from(p.seat.orientation);
    const Vec3 up = seat * Vec3{0.0, -1.0, 0.0};

    ProxyBody body;
    body.instance_id = p.instance_id;

    Ellipsoid torso{p.seat.position + (0.30 * size) * up, {0.19 * girth, 0.30 * size, 0.12 * girth}, seat};

    const Mat3 head_rot = seat * rotation_from(head_pose_of(p));
    const Vec3 neck = p.seat.position + (0.62 * size) * up;
    Ellipsoid head{neck + head_rot * Vec3{0.0, -0.11 * size, 0.02 * size},
                   {0.08 * size, 0.11 * size, 0.095 * size}, head_rot};

    body.joints[kTorsoJoint] = torso.center;
    body.joints[kHeadJoint] = head.center;
    body.ellipsoids = {torso, head};
    body.albedo = tint_of(p.human.clothing_asset + "/" + p.human_id);
    bodies.push_back(std::move(body));
  }
  return bodies;
}

IndexedMask rasterize(const std::vector<ProxyBody>& bodies, const CameraSpec& camera) {
  const EquisolidCamera cam(camera);
  const int w = camera.image_size.width;
  const int h = camera.image_size.height;
  IndexedMask mask(w, h);
  if (bodies.empty()) return mask;
  const Vec3 origin = cam.position();
  const double r_max = cam.fov_radius_px() + 1e-9;
#pragma omp parallel for schedule(dynamic, 8)
  for (int y = 0; y < h; ++y) {
    InstanceId* row = mask.row(y);
    const double v = y + 0.5;
    for (int x = 0; x < w; ++x) {
      const double u = x + 0.5;
      if (std::hypot(u - cam.cx(), v - cam.cy()) > r_max) continue;
      const Vec3 dir = cam.camera_to_world_direction(cam.unproject_unchecked(u, v));
      row[x] = nearest_hit(bodies, origin, dir).id;
    }
  }
  return mask;
}

IndexedMask rasterize(const SceneDescription& scene) {
  return rasterize(proxies_of(scene), scene.camera);
}

RgbImage render_rgb(const SceneDescription& scene) {
  const auto bodies = proxies_of(scene);
  const EquisolidCamera cam(scene.camera);
  const int w = scene.camera.image_size.width;
  const int h = scene.camera.image_size.height;

  const auto& light = scene.background.light;
  const Rgb bg_tint = tint_of(light.hdri_ref ? *light.hdri_ref : to_string(light.kind));
  const double bg_gain =
      light.kind == LightKind::kHdriBackground ? 1.0 : 0.6 + 0.4 * std::tanh(scene.background.intensity / 100.0);
  const Rgb background = scale(bg_tint, bg_gain);

  RgbImage image(w, h);
  const Vec3 origin = cam.position();
  const double r_max = cam.fov_radius_px() + 1e-9;
#pragma omp parallel for schedule(dynamic, 8)
  for (int y = 0; y < h; ++y) {
    Rgb* row = image.row(y);
    const double v = y + 0.5;
    for (int x = 0; x < w; ++x) {
      const double u = x + 0.5;
      if (std::hypot(u - cam.cx(), v - cam.cy()) > r_max) continue;
      const Vec3 dir = cam.camera_to_world_direction(cam.unproject_unchecked(u, v));
      const Hit hit = nearest_hit(bodies, origin, dir);
      if (hit.id == 0) {
        row[x] = background;
        continue;
      }
      const auto& body = bodies[hit.body];
      const auto& e = body.ellipsoids[hit.ellipsoid];
      const Vec3 p = origin + hit.t * dir;
      const Vec3 local = e.orientation.transposed() * (p - e.center);
      const Vec3 grad = e.orientation * Vec3{local.x / (e.semi_axes.x * e.semi_axes.x),
                                             local.y / (e.semi_axes.y * e.semi_axes.y),
                                             local.z / (e.semi_axes.z * e.semi_axes.z)};
      const double shade = 0.25 + 0.75 * std::abs(dot(grad, dir)) / norm(grad);
      const Rgb base = hit.ellipsoid == 1 ? Rgb{224, 172, 140} : body.albedo;
      row[x] = scale(base, shade * bg_gain);
    }
  }
  return image;
}

IndexedMask inject_holes(const IndexedMask& mask, double rate, std::uint64_t seed) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw DomainError("inject_holes: rate must lie in [0, 1]");
  const int w = mask.width();
  const int h = mask.height();
  std::vector<PixelCoord> eligible;
  for (int y = 1; y + 1 < h; ++y)
    for (int x = 1; x + 1 < w; ++x) {
      const InstanceId id = mask(x, y);
      if (id == 0) continue;
      bool interior = true;
      for (int dy = -1; dy <= 1 && interior; ++dy)
        for (int dx = -1; dx <= 1 && interior; ++dx) interior = mask(x + dx, y + dy) == id;
      if (interior) eligible.push_back({x, y});
    }

  IndexedMask out = mask;
  const auto target = static_cast<std::size_t>(std::llround(rate * static_cast<double>(eligible.size())));
  if (target == 0) return out;

  Xoshiro256StarStar rng(seed);
  for (std::size_t i = eligible.size(); i > 1; --i)
    std::swap(eligible[i - 1], eligible[static_cast<std::size_t>(rng.below(i))]);

  Raster<std::uint8_t> cleared(w, h);
  std::size_t count = 0;
  for (const auto& p : eligible) {
    if (count == target) break;
    bool isolated = true;
    for (int dy = -1; dy <= 1 && isolated; ++dy)
      for (int dx = -1; dx <= 1 && isolated; ++dx) isolated = !cleared(p.x + dx, p.y + dy);
    if (!isolated) continue;
    cleared(p.x, p.y) = 1;
    out(p.x, p.y) = 0;
    ++count;
  }
  return out;
}

JointMap joints_of(const std::vector<ProxyBody>& bodies) {
  JointMap joints;
  for (const auto& b : bodies)
    for (const auto& [name, pos] : b.joints) joints[{b.instance_id, name}] = pos;
  return joints;
}

JointMap joints_of(const SceneDescription& scene) { return joints_of(proxies_of(scene)); }

}  // namespace cabinsynth
