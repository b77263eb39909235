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

#include "cabinsynth/camera.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cabinsynth/error.hpp"

namespace cabinsynth {

namespace {

// Closed FOV: rays at exactly fov/2 are inside. The slack only absorbs the
// rounding of deg -> rad conversions.
constexpr double kFovSlackRad = 1e-12;
constexpr double kFovSlackPx = 1e-9;

std::string join(const std::vector<std::string>& items) {
  std::ostringstream os;
  for (std::size_t i = 0; i < items.size(); ++i) os << (i ? "; " : "") << items[i];
  return os.str();
}

}  // namespace

double focal_from_fov(double fov_deg, double sensor_width_mm) {
  if (!(fov_deg > 0.0) || !(fov_deg <= 360.0))
    throw DomainError("focal_from_fov: fov_deg must lie in (0, 360], got " + std::to_string(fov_deg));
  if (!(sensor_width_mm > 0.0))
    throw DomainError("focal_from_fov: sensor_width_mm must be positive");
  return (0.5 * sensor_width_mm) / (2.0 * std::sin(deg2rad(fov_deg) / 4.0));
}

double equisolid_radius_mm(double theta_rad, double focal_mm) noexcept {
  return 2.0 * focal_mm * std::sin(0.5 * theta_rad);
}

std::vector<std::string> camera_violations(const CameraSpec& camera) {
  std::vector<std::string> out;
  if (!(camera.fov_deg > 0.0 && camera.fov_deg <= 360.0))
    out.emplace_back("fov_deg: must lie in (0, 360]");
  if (!(camera.sensor_width_mm > 0.0)) out.emplace_back("sensor_width_mm: must be positive");
  if (camera.focal_length_mm && !(*camera.focal_length_mm > 0.0))
    out.emplace_back("focal_length_mm: must be positive");
  if (camera.image_size.width <= 0 || camera.image_size.height <= 0)
    out.emplace_back("image_size: width and height must be positive");
  const auto& o = camera.pose.orientation;
  const auto& p = camera.pose.position;
  if (!std::isfinite(o.yaw_deg) || !std::isfinite(o.pitch_deg) || !std::isfinite(o.roll_deg) ||
      !std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    out.emplace_back("pose: position and orientation must be finite");
  return out;
}

EquisolidCamera::EquisolidCamera(const CameraSpec& spec) : spec_(spec) {
  if (auto v = camera_violations(spec); !v.empty())
    throw DomainError("invalid camera: " + join(v));
  focal_mm_ = spec.focal_length_mm ? *spec.focal_length_mm
                                   : focal_from_fov(spec.fov_deg, spec.sensor_width_mm);
  px_per_mm_ = spec.image_size.width / spec.sensor_width_mm;
  focal_px_ = focal_mm_ * px_per_mm_;
  half_fov_rad_ = deg2rad(0.5 * spec.fov_deg);
  fov_radius_px_ = equisolid_radius_mm(half_fov_rad_, focal_mm_) * px_per_mm_;
  world_from_camera_ = rotation_from(spec.pose.orientation);
  camera_from_world_ = world_from_camera_.transposed();
}

Vec3 EquisolidCamera::world_to_camera(Vec3 p_world) const noexcept {
  return camera_from_world_ * (p_world - spec_.pose.position);
}

Vec3 EquisolidCamera::camera_to_world_direction(Vec3 d_cam) const noexcept {
  return world_from_camera_ * d_cam;
}

PixelPoint EquisolidCamera::project(Vec3 p_world) const {
  return project_camera(world_to_camera(p_world));
}

PixelPoint EquisolidCamera::project_camera(Vec3 p) const {
  const double rho = std::hypot(p.x, p.y);
  if (rho == 0.0 && p.z == 0.0)
    throw DegenerateInputError("project: point coincides with the camera center");
  const double theta = std::atan2(rho, p.z);
  const double r_px = 2.0 * focal_px_ * std::sin(0.5 * theta);
  PixelPoint out;
  if (rho == 0.0) {
    out.u = cx();
    out.v = cy();
  } else {
    out.u = cx() + r_px * (p.x / rho);
    out.v = cy() + r_px * (p.y / rho);
  }
  out.valid = theta <= half_fov_rad_ + kFovSlackRad && out.u >= 0.0 &&
              out.u < spec_.image_size.width && out.v >= 0.0 && out.v < spec_.image_size.height;
  return out;
}

Vec3 EquisolidCamera::unproject(double u, double v) const {
  if (!(u >= 0.0 && u < spec_.image_size.width && v >= 0.0 && v < spec_.image_size.height))
    throw OutOfFovError("unproject: pixel lies outside the frame");
  const double r_px = std::hypot(u - cx(), v - cy());
  if (r_px > fov_radius_px_ + kFovSlackPx || r_px > 2.0 * focal_px_)
    throw OutOfFovError("unproject: pixel lies outside the image circle");
  return unproject_unchecked(u, v);
}

Vec3 EquisolidCamera::unproject_unchecked(double u, double v) const noexcept {
  const double dx = u - cx();
  const double dy = v - cy();
  const double r_px = std::hypot(dx, dy);
  if (r_px == 0.0) return {0.0, 0.0, 1.0};
  const double s = std::min(1.0, r_px / (2.0 * focal_px_));
  const double theta = 2.0 * std::asin(s);
  const double st = std::sin(theta);
  return {st * dx / r_px, st * dy / r_px, std::cos(theta)};
}

PixelPoint project(Vec3 point_world, const CameraSpec& camera) {
  return EquisolidCamera(camera).project(point_world);
}

Vec3 unproject(const PixelPoint& pixel, const CameraSpec& camera) {
  return EquisolidCamera(camera).unproject(pixel.u, pixel.v);
}

double distance_to_camera(Vec3 point_world, const CameraSpec& camera) noexcept {
  return norm(point_world - camera.pose.position);
}

}  // namespace cabinsynth
