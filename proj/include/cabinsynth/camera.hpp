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

// Equisolid fisheye camera: r = 2 f sin(theta / 2).
//
// Pixel coordinates are continuous with the origin at the top-left corner of
// the image; pixel (i, j) covers [i, i+1) x [j, j+1) and its center is at
// (i + 0.5, j + 0.5). The principal point is the image center and pixels are
// square, with a pitch of sensor_width_mm / image width.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cabinsynth/geometry.hpp"

namespace cabinsynth {

struct ImageSize {
  int width = 640;
  int height = 480;

  friend constexpr bool operator==(const ImageSize&, const ImageSize&) = default;
};

struct Pose {
  Vec3 position;
  YawPitchRoll orientation;

  friend constexpr bool operator==(const Pose&, const Pose&) = default;
};

struct CameraSpec {
  static constexpr const char* kModel = "equisolid_fisheye";

  double fov_deg = 180.0;
  double sensor_width_mm = 5.3;
  /// Unset means "derive from fov_deg and sensor_width_mm".
  std::optional<double> focal_length_mm;
  ImageSize image_size;
  Pose pose;

  friend bool operator==(const CameraSpec&, const CameraSpec&) = default;
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
  bool valid = false;
};

/// Focal length placing a ray at half the field of view on the sensor edge.
/// Throws DomainError unless 0 < fov_deg <= 360 and sensor_width_mm > 0.
double focal_from_fov(double fov_deg, double sensor_width_mm);

/// Sensor radius (mm) of a ray at incidence angle theta (radians).
double equisolid_radius_mm(double theta_rad, double focal_mm) noexcept;

/// Precomputed intrinsics and extrinsics for repeated projection.
class EquisolidCamera {
 public:
  /// Throws DomainError on an invalid spec (see camera_violations).
  explicit EquisolidCamera(const CameraSpec& spec);

  const CameraSpec& spec() const noexcept { return spec_; }
  double focal_mm() const noexcept { return focal_mm_; }
  /// Focal length expressed in pixels.
  double focal_px() const noexcept { return focal_px_; }
  double pixels_per_mm() const noexcept { return px_per_mm_; }
  double half_fov_rad() const noexcept { return half_fov_rad_; }
  /// Radius in pixels of the image circle (rays at exactly fov / 2).
  double fov_radius_px() const noexcept { return fov_radius_px_; }
  double cx() const noexcept { return 0.5 * spec_.image_size.width; }
  double cy() const noexcept { return 0.5 * spec_.image_size.height; }

  Vec3 world_to_camera(Vec3 p_world) const noexcept;
  Vec3 camera_to_world_direction(Vec3 d_cam) const noexcept;
  Vec3 position() const noexcept { return spec_.pose.position; }

  /// Throws DegenerateInputError when the point coincides with the camera center.
  PixelPoint project(Vec3 p_world) const;
  /// Same as project() for a point already in camera coordinates.
  PixelPoint project_camera(Vec3 p_cam) const;

  /// Unit ray in the camera frame. Throws OutOfFovError when the pixel lies
  /// outside the frame or beyond the image circle.
  Vec3 unproject(double u, double v) const;

  /// Unchecked inverse mapping for callers that already know the pixel is in
  /// the FOV disc (used by the rasterizer's inner loop).
  Vec3 unproject_unchecked(double u, double v) const noexcept;

 private:
  CameraSpec spec_;
  double focal_mm_;
  double px_per_mm_;
  double focal_px_;
  double half_fov_rad_;
  double fov_radius_px_;
  Mat3 world_from_camera_;
  Mat3 camera_from_world_;
};

PixelPoint project(Vec3 point_world, const CameraSpec& camera);
Vec3 unproject(const PixelPoint& pixel, const CameraSpec& camera);

/// Euclidean (radial) distance between a point and the camera center, meters.
double distance_to_camera(Vec3 point_world, const CameraSpec& camera) noexcept;

/// Human-readable problems with a camera spec, empty when valid. Each entry is
/// "<field>: <message>".
std::vector<std::string> camera_violations(const CameraSpec& camera);

}  // namespace cabinsynth
