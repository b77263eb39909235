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

// Per-sample annotations and their on-disk formats.
//
// Bounding-box text file (labels_<id>.txt), exact grammar:
//
//   # sample <sample_id>\n
//   <instance_id> <x> <y> <w> <h>\n      (one line per instance, ascending id)
//
// Single ASCII spaces, unsigned base-10 integers without sign or leading
// zeros, LF line endings, a trailing LF, nothing else.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "cabinsynth/camera.hpp"
#include "cabinsynth/config.hpp"
#include "cabinsynth/contours.hpp"
#include "cabinsynth/json_io.hpp"
#include "cabinsynth/mask.hpp"
#include "cabinsynth/oracle_renderer.hpp"

namespace cabinsynth {

enum class Visibility { kVisible, kOccluded, kOutsideFrame };

const char* to_string(Visibility v) noexcept;

struct Keypoint2D {
  std::string name;
  /// Meaningless (NaN) when outside_frame.
  double u = 0.0;
  double v = 0.0;
  Visibility visibility = Visibility::kOutsideFrame;
};

struct InstanceAnnotation {
  InstanceId instance_id = 0;
  std::string human_id;
  std::string seat_id;
  BoundingBox bbox;
  std::vector<Keypoint2D> keypoints;
  /// Radial distance from the camera center to the head joint, meters.
  double distance_to_camera = 0.0;
  YawPitchRoll head_pose;
  /// Head-forward unit ray in the vehicle frame, used as the gaze label.
  Vec3 gaze_direction;
};

struct SampleAnnotation {
  std::uint64_t sample_id = 0;
  std::uint64_t derived_seed = 0;
  std::string image_ref;
  std::string mask_ref;
  std::string labels_ref;
  /// Ascending instance id.
  std::vector<InstanceAnnotation> instances;
  /// Placed instances without any mask pixel (fully occluded or out of view).
  std::vector<InstanceId> dropped_instances;
};

/// Joints every placed instance must provide.
const std::vector<std::string>& labelled_joints();

/// Boxes come from instance_bboxes(mask, se); keypoints are projected through
/// the camera and checked against the raw mask at the pixel that contains the
/// projection.
///
/// Throws IncompleteSceneError listing missing joints, DomainError when the
/// mask size differs from the camera image or when the mask holds an id that
/// no placement owns.
SampleAnnotation build_annotations(const SceneDescription& scene, const IndexedMask& mask,
                                   const CameraSpec& camera, const JointMap& joints,
                                   const StructuringElement& se = StructuringElement(3));

struct BboxRecord {
  InstanceId instance_id = 0;
  BoundingBox bbox;

  friend bool operator==(const BboxRecord&, const BboxRecord&) = default;
};

struct BboxFile {
  std::uint64_t sample_id = 0;
  std::vector<BboxRecord> records;

  friend bool operator==(const BboxFile&, const BboxFile&) = default;
};

std::vector<BboxRecord> bbox_records(const SampleAnnotation& annotation);

std::string format_bbox_text(const SampleAnnotation& annotation);
void write_bbox_textfile(const SampleAnnotation& annotation, const std::filesystem::path& path);

/// Throws ParseError carrying the 1-based line number of the first problem.
BboxFile parse_bbox_text(const std::string& text);
BboxFile parse_bbox_textfile(const std::filesystem::path& path);

// -- manifest -----------------------------------------------------------------

inline constexpr const char* kManifestName = "manifest.json";
/// The only manifest field that differs between identical runs.
inline constexpr const char* kTimestampField = "generated_at";

Json annotation_to_json(const SampleAnnotation& annotation);
SampleAnnotation annotation_from_json(const Json& j);

/// Builds the manifest document. `generated_at` is stored verbatim.
Json manifest_to_json(const GenerationConfig& config, const std::vector<SampleAnnotation>& annotations,
                      const std::string& generated_at);

/// Writes the manifest with the current UTC time as generated_at. Throws IoError.
void write_manifest(const GenerationConfig& config, const std::vector<SampleAnnotation>& annotations,
                    const std::filesystem::path& path);

struct Manifest {
  GenerationConfig config;
  std::string config_digest;
  std::vector<SampleAnnotation> samples;
  Json document;
};

/// Throws IoError / ConfigError.
Manifest read_manifest(const std::filesystem::path& path);

}  // namespace cabinsynth
