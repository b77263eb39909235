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

#include "cabinsynth/labels.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <limits>
#include <set>
#include <sstream>

#include "cabinsynth/error.hpp"
#include "cabinsynth/scene_sampler.hpp"

namespace cabinsynth {

const char* to_string(Visibility v) noexcept {
  switch (v) {
    case Visibility::kVisible: return "visible";
    case Visibility::kOccluded: return "occluded";
    case Visibility::kOutsideFrame: return "outside_frame";
  }
  return "?";
}

const std::vector<std::string>& labelled_joints() {
  static const std::vector<std::string> joints{kHeadJoint, kTorsoJoint};
  return joints;
}

SampleAnnotation build_annotations(const SceneDescription& scene, const IndexedMask& mask,
                                   const CameraSpec& camera, const JointMap& joints,
                                   const StructuringElement& se) {
  if (mask.width() != camera.image_size.width || mask.height() != camera.image_size.height)
    throw DomainError("mask is " + std::to_string(mask.width()) + "x" + std::to_string(mask.height()) +
                      " but the camera image is " + std::to_string(camera.image_size.width) + "x" +
                      std::to_string(camera.image_size.height));

  std::vector<std::string> missing;
  for (const auto& p : scene.placements)
    for (const auto& joint : labelled_joints())
      if (!joints.contains({p.instance_id, joint}))
        missing.push_back("instance " + std::to_string(p.instance_id) + ": " + joint);
  if (!missing.empty()) {
    std::string what = "missing joints:";
    for (const auto& m : missing) what += " [" + m + "]";
    throw IncompleteSceneError(what, missing);
  }

  std::set<InstanceId> placed;
  for (const auto& p : scene.placements) placed.insert(p.instance_id);
  for (InstanceId id : instance_ids(mask))
    if (!placed.contains(id))
      throw DomainError("mask contains instance id " + std::to_string(id) + " that no placement owns");

  const EquisolidCamera cam(camera);
  const InstanceBoxes boxes = instance_bboxes(mask, se);

  SampleAnnotation out;
  out.sample_id = scene.sample_id;
  out.derived_seed = scene.derived_seed;

  std::vector<const Placement*> order;
  for (const auto& p : scene.placements) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const Placement* a, const Placement* b) { return a->instance_id < b->instance_id; });

  for (const Placement* p : order) {
    auto box = boxes.boxes.find(p->instance_id);
    if (box == boxes.boxes.end()) {
      out.dropped_instances.push_back(p->instance_id);
      continue;
    }
    InstanceAnnotation a;
    a.instance_id = p->instance_id;
    a.human_id = p->human_id;
    a.seat_id = p->seat_id;
    a.bbox = box->second;
    for (const auto& name : labelled_joints()) {
      const Vec3 pos = joints.at({p->instance_id, name});
      Keypoint2D kp;
      kp.name = name;
      kp.u = kp.v = std::numeric_limits<double>::quiet_NaN();
      PixelPoint px;
      try {
        px = cam.project(pos);
      } catch (const DegenerateInputError&) {
        px.valid = false;
      }
      if (px.valid) {
        kp.u = px.u;
        kp.v = px.v;
        const int ix = static_cast<int>(std::floor(px.u));
        const int iy = static_cast<int>(std::floor(px.v));
        kp.visibility = mask(ix, iy) == p->instance_id ? Visibility::kVisible : Visibility::kOccluded;
      }
      a.keypoints.push_back(kp);
    }
    a.distance_to_camera = distance_to_camera(joints.at({p->instance_id, kHeadJoint}), camera);
    a.head_pose = head_pose_of(*p);
    a.gaze_direction = rotation_from(p->seat.orientation) * rotation_from(a.head_pose) * Vec3{0, 0, 1};
    out.instances.push_back(std::move(a));
  }
  return out;
}

std::vector<BboxRecord> bbox_records(const SampleAnnotation& annotation) {
  std::vector<BboxRecord> records;
  for (const auto& a : annotation.instances) records.push_back({a.instance_id, a.bbox});
  std::sort(records.begin(), records.end(),
            [](const BboxRecord& x, const BboxRecord& y) { return x.instance_id < y.instance_id; });
  return records;
}

std::string format_bbox_text(const SampleAnnotation& annotation) {
  std::string out = "# sample " + std::to_string(annotation.sample_id) + "\n";
  for (const auto& r : bbox_records(annotation)) {
    out += std::to_string(r.instance_id) + ' ' + std::to_string(r.bbox.x) + ' ' +
           std::to_string(r.bbox.y) + ' ' + std::to_string(r.bbox.w) + ' ' +
           std::to_string(r.bbox.h) + '\n';
  }
  return out;
}

void write_bbox_textfile(const SampleAnnotation& annotation, const std::filesystem::path& path) {
  write_text_file(path, format_bbox_text(annotation));
}

namespace {

std::uint64_t parse_uint(std::string_view token, std::size_t line, const char* what) {
  if (token.empty()) throw ParseError("missing " + std::string(what), line);
  if (token.size() > 1 && token[0] == '0')
    throw ParseError(std::string(what) + " has a leading zero", line);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    throw ParseError(std::string(what) + " is not an unsigned integer: '" + std::string(token) + "'",
                     line);
  return value;
}

std::vector<std::string_view> split_spaces(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(' ', start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

}  // namespace

BboxFile parse_bbox_text(const std::string& text) {
  if (text.empty()) throw ParseError("empty file", 1);
  if (text.back() != '\n') {
    const auto lines = static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n')) + 1;
    throw ParseError("missing trailing LF", lines);
  }
  BboxFile file;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  int last_id = 0;
  while (pos < text.size()) {
    const std::size_t eol = text.find('\n', pos);
    const std::string_view line(text.data() + pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (line.find('\r') != std::string_view::npos) throw ParseError("CR in line ending", line_no);
    if (line_no == 1) {
      constexpr std::string_view kHeader = "# sample ";
      if (line.substr(0, kHeader.size()) != kHeader)
        throw ParseError("expected '# sample <id>' header", line_no);
      file.sample_id = parse_uint(line.substr(kHeader.size()), line_no, "sample id");
      continue;
    }
    const auto fields = split_spaces(line);
    if (fields.size() != 5)
      throw ParseError("expected 5 space-separated integers, got " + std::to_string(fields.size()),
                       line_no);
    const std::uint64_t id = parse_uint(fields[0], line_no, "instance id");
    const std::uint64_t x = parse_uint(fields[1], line_no, "x");
    const std::uint64_t y = parse_uint(fields[2], line_no, "y");
    const std::uint64_t w = parse_uint(fields[3], line_no, "w");
    const std::uint64_t h = parse_uint(fields[4], line_no, "h");
    if (id < 1 || id > 255) throw ParseError("instance id outside 1..255", line_no);
    if (static_cast<int>(id) <= last_id) throw ParseError("instance ids must be ascending", line_no);
    constexpr auto kMax = static_cast<std::uint64_t>(std::numeric_limits<int>::max());
    if (x > kMax || y > kMax || w > kMax || h > kMax)
      throw ParseError("coordinate out of range", line_no);
    if (w == 0 || h == 0) throw ParseError("width and height must be positive", line_no);
    last_id = static_cast<int>(id);
    file.records.push_back({static_cast<InstanceId>(id),
                            {static_cast<int>(x), static_cast<int>(y), static_cast<int>(w),
                             static_cast<int>(h)}});
  }
  return file;
}

BboxFile parse_bbox_textfile(const std::filesystem::path& path) {
  return parse_bbox_text(read_text_file(path));
}

// -- manifest -------------------------------------------------------------------

namespace {

Json number_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

double number_or_nan(const Json& j) {
  return j.is_number() ? j.get<double>() : std::numeric_limits<double>::quiet_NaN();
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

Json annotation_to_json(const SampleAnnotation& a) {
  Json instances = Json::array();
  for (const auto& inst : a.instances) {
    Json kps = Json::array();
    for (const auto& kp : inst.keypoints)
      kps.push_back(Json{{"name", kp.name},
                         {"u", number_or_null(kp.u)},
                         {"v", number_or_null(kp.v)},
                         {"visibility", to_string(kp.visibility)}});
    instances.push_back(Json{
        {"instance_id", inst.instance_id},
        {"human_id", inst.human_id},
        {"seat_id", inst.seat_id},
        {"bbox", Json{{"x", inst.bbox.x}, {"y", inst.bbox.y}, {"w", inst.bbox.w}, {"h", inst.bbox.h}}},
        {"keypoints", kps},
        {"distance_to_camera_m", inst.distance_to_camera},
        {"head_pose", Json{{"yaw_deg", inst.head_pose.yaw_deg},
                           {"pitch_deg", inst.head_pose.pitch_deg},
                           {"roll_deg", inst.head_pose.roll_deg}}},
        {"gaze_direction",
         Json::array({inst.gaze_direction.x, inst.gaze_direction.y, inst.gaze_direction.z})}});
  }
  Json dropped = Json::array();
  for (auto id : a.dropped_instances) dropped.push_back(id);
  return Json{{"sample_id", a.sample_id},
              {"derived_seed", a.derived_seed},
              {"image", a.image_ref},
              {"mask", a.mask_ref},
              {"labels", a.labels_ref},
              {"instances", instances},
              {"dropped_instances", dropped}};
}

SampleAnnotation annotation_from_json(const Json& j) {
  try {
    SampleAnnotation a;
    a.sample_id = j.at("sample_id").get<std::uint64_t>();
    a.derived_seed = j.at("derived_seed").get<std::uint64_t>();
    a.image_ref = j.at("image").get<std::string>();
    a.mask_ref = j.at("mask").get<std::string>();
    a.labels_ref = j.at("labels").get<std::string>();
    for (const auto& ij : j.at("instances")) {
      InstanceAnnotation inst;
      inst.instance_id = ij.at("instance_id").get<InstanceId>();
      inst.human_id = ij.at("human_id").get<std::string>();
      inst.seat_id = ij.at("seat_id").get<std::string>();
      const auto& b = ij.at("bbox");
      inst.bbox = {b.at("x").get<int>(), b.at("y").get<int>(), b.at("w").get<int>(), b.at("h").get<int>()};
      for (const auto& kj : ij.at("keypoints")) {
        Keypoint2D kp;
        kp.name = kj.at("name").get<std::string>();
        kp.u = number_or_nan(kj.at("u"));
        kp.v = number_or_nan(kj.at("v"));
        const auto vis = kj.at("visibility").get<std::string>();
        if (vis == "visible")
          kp.visibility = Visibility::kVisible;
        else if (vis == "occluded")
          kp.visibility = Visibility::kOccluded;
        else if (vis == "outside_frame")
          kp.visibility = Visibility::kOutsideFrame;
        else
          throw ConfigError("unknown visibility '" + vis + "'");
        inst.keypoints.push_back(kp);
      }
      inst.distance_to_camera = ij.at("distance_to_camera_m").get<double>();
      const auto& hp = ij.at("head_pose");
      inst.head_pose = {hp.at("yaw_deg").get<double>(), hp.at("pitch_deg").get<double>(),
                        hp.at("roll_deg").get<double>()};
      const auto& g = ij.at("gaze_direction");
      inst.gaze_direction = {g.at(0).get<double>(), g.at(1).get<double>(), g.at(2).get<double>()};
      a.instances.push_back(std::move(inst));
    }
    for (const auto& d : j.at("dropped_instances")) a.dropped_instances.push_back(d.get<InstanceId>());
    return a;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("manifest sample: ") + e.what());
  }
}

Json manifest_to_json(const GenerationConfig& config, const std::vector<SampleAnnotation>& annotations,
                      const std::string& generated_at) {
  Json samples = Json::array();
  for (const auto& a : annotations) samples.push_back(annotation_to_json(a));
  Json palette = Json::array();
  for (const auto& c : config.palette) palette.push_back(Json::array({c.r, c.g, c.b}));
  return Json{{"format", "cabinsynth-manifest"},
              {"version", 1},
              {kTimestampField, generated_at},
              {"master_seed", config.master_seed},
              {"sample_count", config.sample_count},
              {"config_digest", config_digest(config)},
              {"palette", palette},
              {"background_color", Json::array({kBackgroundColor.r, kBackgroundColor.g, kBackgroundColor.b})},
              {"camera", camera_to_json(config.camera)},
              {"structuring_element_size", config.structuring_element_size},
              {"config", config_to_json(config)},
              {"samples", samples}};
}

void write_manifest(const GenerationConfig& config, const std::vector<SampleAnnotation>& annotations,
                    const std::filesystem::path& path) {
  write_text_file(path, to_document(manifest_to_json(config, annotations, utc_now())));
}

Manifest read_manifest(const std::filesystem::path& path) {
  Manifest m;
  m.document = load_json(path);
  try {
    m.config = config_from_json(m.document.at("config"));
    m.config_digest = m.document.at("config_digest").get<std::string>();
    for (const auto& s : m.document.at("samples")) m.samples.push_back(annotation_from_json(s));
  } catch (const Json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return m;
}

}  // namespace cabinsynth
