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

#include "cabinsynth/json_io.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cabinsynth/error.hpp"
#include "cabinsynth/scene_sampler.hpp"

namespace cabinsynth {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message) {
  throw ConfigError(path + ": " + message);
}

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path + "." + key, "missing");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

std::uint64_t as_u64(const Json& j, const std::string& path) {
  if (j.is_number_unsigned()) return j.get<std::uint64_t>();
  if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return j.get<std::uint64_t>();
  fail(path, "expected a non-negative integer");
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  return j.get<int>();
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

double number_at(const Json& j, const char* key, const std::string& path) {
  return as_number(require(j, key, path), path + "." + key);
}

std::string string_at(const Json& j, const char* key, const std::string& path) {
  return as_string(require(j, key, path), path + "." + key);
}

std::vector<std::string> strings(const Json& j, const std::string& path) {
  std::vector<std::string> out;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(as_string(a[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Json vec_to_json(Vec3 v) { return Json::array({v.x, v.y, v.z}); }

Vec3 vec_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 3) fail(path, "expected [x, y, z]");
  return {as_number(j[0], path + "[0]"), as_number(j[1], path + "[1]"),
          as_number(j[2], path + "[2]")};
}

Json orientation_to_json(const YawPitchRoll& o) {
  return Json{{"yaw_deg", o.yaw_deg}, {"pitch_deg", o.pitch_deg}, {"roll_deg", o.roll_deg}};
}

YawPitchRoll orientation_from_json(const Json& j, const std::string& path) {
  return {number_at(j, "yaw_deg", path), number_at(j, "pitch_deg", path),
          number_at(j, "roll_deg", path)};
}

Json size_to_json(const ImageSize& s) { return Json{{"width", s.width}, {"height", s.height}}; }

ImageSize size_from_json(const Json& j, const std::string& path) {
  return {as_int(require(j, "width", path), path + ".width"),
          as_int(require(j, "height", path), path + ".height")};
}

Json human_to_json(const HumanSpec& h) {
  Json attrs = Json::object();
  for (const auto& [k, v] : h.attributes) attrs[k] = v;
  return Json{{"human_id", h.human_id},
              {"attributes", attrs},
              {"clothing_asset", h.clothing_asset},
              {"hair_asset", h.hair_asset},
              {"skeleton_ref", h.skeleton_ref}};
}

HumanSpec human_from_json(const Json& j, const std::string& path) {
  HumanSpec h;
  h.human_id = string_at(j, "human_id", path);
  const auto& attrs = require(j, "attributes", path);
  if (!attrs.is_object()) fail(path + ".attributes", "expected an object");
  for (auto it = attrs.begin(); it != attrs.end(); ++it)
    h.attributes[it.key()] = as_number(it.value(), path + ".attributes." + it.key());
  h.clothing_asset = string_at(j, "clothing_asset", path);
  h.hair_asset = string_at(j, "hair_asset", path);
  h.skeleton_ref = string_at(j, "skeleton_ref", path);
  return h;
}

HumanPoolSpec pool_spec_from_json(const Json& j, const std::string& path) {
  HumanPoolSpec spec;
  const auto& ranges = require(j, "ranges", path);
  if (!ranges.is_object()) fail(path + ".ranges", "expected an object");
  for (auto it = ranges.begin(); it != ranges.end(); ++it) {
    const std::string p = path + ".ranges." + it.key();
    if (!it->is_array() || it->size() != 2) fail(p, "expected [min, max]");
    spec.ranges[it.key()] = {as_number((*it)[0], p + "[0]"), as_number((*it)[1], p + "[1]")};
  }
  spec.count = as_int(require(j, "count", path), path + ".count");
  spec.seed = as_u64(require(j, "seed", path), path + ".seed");
  spec.clothing_assets = strings(require(j, "clothing_assets", path), path + ".clothing_assets");
  spec.hair_assets = strings(require(j, "hair_assets", path), path + ".hair_assets");
  if (j.contains("skeleton_ref")) spec.skeleton_ref = string_at(j, "skeleton_ref", path);
  return spec;
}

Json seat_to_json(const SeatSlot& s) {
  return Json{{"seat_id", s.seat_id},
              {"position", vec_to_json(s.position)},
              {"orientation", orientation_to_json(s.orientation)}};
}

SeatSlot seat_from_json(const Json& j, const std::string& path) {
  return {string_at(j, "seat_id", path), vec_from_json(require(j, "position", path), path + ".position"),
          orientation_from_json(require(j, "orientation", path), path + ".orientation")};
}

Json range_to_json(const RotationRange& r) {
  return Json{{"bone_name", r.bone_name},
              {"axis", to_string(r.axis)},
              {"min_deg", r.min_deg},
              {"max_deg", r.max_deg},
              {"distribution", r.distribution}};
}

RotationRange range_from_json(const Json& j, const std::string& path) {
  RotationRange r;
  r.bone_name = string_at(j, "bone_name", path);
  const std::string axis = string_at(j, "axis", path);
  auto parsed = rotation_axis_from_string(axis);
  if (!parsed) fail(path + ".axis", "unknown axis '" + axis + "'");
  r.axis = *parsed;
  r.min_deg = number_at(j, "min_deg", path);
  r.max_deg = number_at(j, "max_deg", path);
  if (j.contains("distribution")) r.distribution = string_at(j, "distribution", path);
  return r;
}

Json light_to_json(const LightingPreset& l) {
  Json j{{"kind", to_string(l.kind)}};
  if (l.intensity_min == l.intensity_max)
    j["intensity"] = l.intensity_min;
  else
    j["intensity"] = Json::array({l.intensity_min, l.intensity_max});
  if (l.position) j["position"] = vec_to_json(*l.position);
  if (l.direction) j["direction"] = vec_to_json(*l.direction);
  if (l.cone_angle_deg) j["cone_angle_deg"] = *l.cone_angle_deg;
  if (l.area_size) j["area_size"] = Json{{"width", l.area_size->width}, {"height", l.area_size->height}};
  if (l.hdri_ref) j["hdri_ref"] = *l.hdri_ref;
  return j;
}

LightingPreset light_from_json(const Json& j, const std::string& path) {
  LightingPreset l;
  const std::string kind = string_at(j, "kind", path);
  auto parsed = light_kind_from_string(kind);
  if (!parsed) fail(path + ".kind", "unknown light kind '" + kind + "'");
  l.kind = *parsed;
  if (j.contains("intensity")) {
    const auto& in = j.at("intensity");
    if (in.is_array()) {
      if (in.size() != 2) fail(path + ".intensity", "expected a number or [min, max]");
      l.intensity_min = as_number(in[0], path + ".intensity[0]");
      l.intensity_max = as_number(in[1], path + ".intensity[1]");
    } else {
      l.intensity_min = l.intensity_max = as_number(in, path + ".intensity");
    }
  }
  if (j.contains("position")) l.position = vec_from_json(j.at("position"), path + ".position");
  if (j.contains("direction")) l.direction = vec_from_json(j.at("direction"), path + ".direction");
  if (j.contains("cone_angle_deg")) l.cone_angle_deg = number_at(j, "cone_angle_deg", path);
  if (j.contains("area_size")) {
    const auto& a = j.at("area_size");
    l.area_size = AreaSize{number_at(a, "width", path + ".area_size"),
                           number_at(a, "height", path + ".area_size")};
  }
  if (j.contains("hdri_ref")) l.hdri_ref = string_at(j, "hdri_ref", path);
  return l;
}

Json palette_to_json(const Palette& palette) {
  Json a = Json::array();
  for (const auto& c : palette) a.push_back(Json::array({c.r, c.g, c.b}));
  return a;
}

Palette palette_from_json(const Json& j, const std::string& path) {
  Palette p;
  const auto& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string pi = path + "[" + std::to_string(i) + "]";
    if (!a[i].is_array() || a[i].size() != 3) fail(pi, "expected [r, g, b]");
    std::uint8_t rgb[3];
    for (int k = 0; k < 3; ++k) {
      const int v = as_int(a[i][k], pi);
      if (v < 0 || v > 255) fail(pi, "channel outside 0..255");
      rgb[k] = static_cast<std::uint8_t>(v);
    }
    p.push_back({rgb[0], rgb[1], rgb[2]});
  }
  return p;
}

Json bone_pose_to_json(const BonePose& pose) {
  Json j = Json::object();
  for (const auto& [bone, angles] : pose) {
    Json a = Json::object();
    for (const auto& [axis, deg] : angles) a[to_string(axis)] = deg;
    j[bone] = a;
  }
  return j;
}

BonePose bone_pose_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
  BonePose pose;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string bp = path + "." + it.key();
    if (!it->is_object()) fail(bp, "expected an object");
    for (auto a = it->begin(); a != it->end(); ++a) {
      auto axis = rotation_axis_from_string(a.key());
      if (!axis) fail(bp + "." + a.key(), "unknown axis");
      pose[it.key()][*axis] = as_number(a.value(), bp + "." + a.key());
    }
  }
  return pose;
}

const char* to_string(BackgroundSource s) {
  return s == BackgroundSource::kHdriPool ? "hdri_pool" : "light_presets";
}

}  // namespace

Json camera_to_json(const CameraSpec& c) {
  Json j{{"model", CameraSpec::kModel},
         {"fov_deg", c.fov_deg},
         {"sensor_width_mm", c.sensor_width_mm},
         {"focal_length_mm", c.focal_length_mm ? Json(*c.focal_length_mm) : Json(nullptr)}};
  if (camera_violations(c).empty())
    j["derived_focal_length_mm"] = EquisolidCamera(c).focal_mm();
  j["image_size"] = size_to_json(c.image_size);
  j["pose"] = Json{{"position", vec_to_json(c.pose.position)},
                   {"orientation", orientation_to_json(c.pose.orientation)}};
  return j;
}

CameraSpec camera_from_json(const Json& j, const std::string& path) {
  CameraSpec c;
  if (!j.is_object()) fail(path, "expected an object");
  if (j.contains("model")) {
    const std::string model = string_at(j, "model", path);
    if (model != CameraSpec::kModel) fail(path + ".model", "only 'equisolid_fisheye' is supported");
  }
  if (j.contains("fov_deg")) c.fov_deg = number_at(j, "fov_deg", path);
  if (j.contains("sensor_width_mm")) c.sensor_width_mm = number_at(j, "sensor_width_mm", path);
  if (j.contains("focal_length_mm") && !j.at("focal_length_mm").is_null())
    c.focal_length_mm = number_at(j, "focal_length_mm", path);
  if (j.contains("image_size")) c.image_size = size_from_json(j.at("image_size"), path + ".image_size");
  if (j.contains("pose")) {
    const auto& p = j.at("pose");
    c.pose.position = vec_from_json(require(p, "position", path + ".pose"), path + ".pose.position");
    c.pose.orientation = orientation_from_json(require(p, "orientation", path + ".pose"),
                                               path + ".pose.orientation");
  }
  return c;
}

Json config_to_json(const GenerationConfig& c) {
  Json j;
  j["master_seed"] = c.master_seed;
  j["sample_count"] = c.sample_count;
  Json pool = Json::array();
  for (const auto& h : c.human_pool) pool.push_back(human_to_json(h));
  j["human_pool"] = pool;
  Json seats = Json::array();
  for (const auto& s : c.seat_layout) seats.push_back(seat_to_json(s));
  j["seat_layout"] = seats;
  j["occupancy"] = c.occupancy;
  Json ranges = Json::array();
  for (const auto& r : c.pose_ranges) ranges.push_back(range_to_json(r));
  j["pose_ranges"] = ranges;
  j["hdri_pool"] = c.hdri_pool;
  Json lights = Json::array();
  for (const auto& l : c.light_presets) lights.push_back(light_to_json(l));
  j["light_presets"] = lights;
  j["camera"] = camera_to_json(c.camera);
  j["image_size"] = size_to_json(c.image_size);
  j["palette"] = palette_to_json(c.palette);
  j["structuring_element_size"] = c.structuring_element_size;
  j["approx_epsilon"] = c.approx_epsilon;
  return j;
}

GenerationConfig config_from_json(const Json& j) {
  if (!j.is_object()) fail("<root>", "expected an object");
  GenerationConfig c;
  c.master_seed = as_u64(require(j, "master_seed", "config"), "master_seed");
  c.sample_count = as_u64(require(j, "sample_count", "config"), "sample_count");

  if (j.contains("human_pool")) {
    const auto& pool = as_array(j.at("human_pool"), "human_pool");
    for (std::size_t i = 0; i < pool.size(); ++i)
      c.human_pool.push_back(human_from_json(pool[i], "human_pool[" + std::to_string(i) + "]"));
  } else if (j.contains("human_pool_generator")) {
    const auto spec = pool_spec_from_json(j.at("human_pool_generator"), "human_pool_generator");
    try {
      c.human_pool = sample_human_pool(spec);
    } catch (const std::exception& e) {
      fail("human_pool_generator", e.what());
    }
  } else {
    fail("human_pool", "missing (give human_pool or human_pool_generator)");
  }

  const auto& seats = as_array(require(j, "seat_layout", "config"), "seat_layout");
  for (std::size_t i = 0; i < seats.size(); ++i)
    c.seat_layout.push_back(seat_from_json(seats[i], "seat_layout[" + std::to_string(i) + "]"));
  if (j.contains("occupancy")) c.occupancy = as_int(j.at("occupancy"), "occupancy");

  if (j.contains("pose_ranges")) {
    const auto& ranges = as_array(j.at("pose_ranges"), "pose_ranges");
    for (std::size_t i = 0; i < ranges.size(); ++i)
      c.pose_ranges.push_back(range_from_json(ranges[i], "pose_ranges[" + std::to_string(i) + "]"));
  }
  if (j.contains("hdri_pool")) c.hdri_pool = strings(j.at("hdri_pool"), "hdri_pool");
  if (j.contains("light_presets")) {
    const auto& lights = as_array(j.at("light_presets"), "light_presets");
    for (std::size_t i = 0; i < lights.size(); ++i)
      c.light_presets.push_back(light_from_json(lights[i], "light_presets[" + std::to_string(i) + "]"));
  }

  c.image_size = size_from_json(require(j, "image_size", "config"), "image_size");
  if (j.contains("camera")) {
    c.camera = camera_from_json(j.at("camera"), "camera");
    if (!j.at("camera").contains("image_size")) c.camera.image_size = c.image_size;
  } else {
    c.camera.image_size = c.image_size;
  }
  if (j.contains("palette")) c.palette = palette_from_json(j.at("palette"), "palette");
  if (j.contains("structuring_element_size"))
    c.structuring_element_size = as_int(j.at("structuring_element_size"), "structuring_element_size");
  if (j.contains("approx_epsilon")) c.approx_epsilon = as_number(j.at("approx_epsilon"), "approx_epsilon");
  return c;
}

Json scene_to_json(const SceneDescription& s) {
  Json j;
  j["sample_id"] = s.sample_id;
  j["derived_seed"] = s.derived_seed;
  j["image_size"] = size_to_json(s.image_size);
  j["camera"] = camera_to_json(s.camera);
  Json placements = Json::array();
  for (const auto& p : s.placements) {
    Json human = human_to_json(p.human);
    human.erase("human_id");
    placements.push_back(Json{{"instance_id", p.instance_id},
                              {"seat_id", p.seat_id},
                              {"human_id", p.human_id},
                              {"seat", Json{{"position", vec_to_json(p.seat.position)},
                                            {"orientation", orientation_to_json(p.seat.orientation)}}},
                              {"human", human},
                              {"bone_pose", bone_pose_to_json(p.bone_pose)}});
  }
  j["placements"] = placements;
  Json bg = light_to_json(s.background.light);
  bg.erase("intensity");
  Json background{{"source", to_string(s.background.source)},
                  {"index", s.background.index},
                  {"intensity", s.background.intensity}};
  background.update(bg);
  j["background"] = background;
  return j;
}

SceneDescription scene_from_json(const Json& j) {
  SceneDescription s;
  if (!j.is_object()) fail("scene", "expected an object");
  s.sample_id = as_u64(require(j, "sample_id", "scene"), "sample_id");
  s.derived_seed = as_u64(require(j, "derived_seed", "scene"), "derived_seed");
  s.image_size = size_from_json(require(j, "image_size", "scene"), "image_size");
  s.camera = camera_from_json(require(j, "camera", "scene"), "camera");
  const auto& placements = as_array(require(j, "placements", "scene"), "placements");
  for (std::size_t i = 0; i < placements.size(); ++i) {
    const std::string path = "placements[" + std::to_string(i) + "]";
    const auto& pj = placements[i];
    Placement p;
    const int id = as_int(require(pj, "instance_id", path), path + ".instance_id");
    if (id < 1 || id > 255) fail(path + ".instance_id", "must lie in 1..255");
    p.instance_id = static_cast<InstanceId>(id);
    p.seat_id = string_at(pj, "seat_id", path);
    p.human_id = string_at(pj, "human_id", path);
    const auto& seat = require(pj, "seat", path);
    p.seat.seat_id = p.seat_id;
    p.seat.position = vec_from_json(require(seat, "position", path + ".seat"), path + ".seat.position");
    p.seat.orientation = orientation_from_json(require(seat, "orientation", path + ".seat"),
                                               path + ".seat.orientation");
    Json human = require(pj, "human", path);
    human["human_id"] = p.human_id;
    p.human = human_from_json(human, path + ".human");
    p.bone_pose = bone_pose_from_json(require(pj, "bone_pose", path), path + ".bone_pose");
    s.placements.push_back(std::move(p));
  }
  const auto& bg = require(j, "background", "scene");
  const std::string source = string_at(bg, "source", "background");
  if (source == "hdri_pool")
    s.background.source = BackgroundSource::kHdriPool;
  else if (source == "light_presets")
    s.background.source = BackgroundSource::kLightPresets;
  else
    fail("background.source", "unknown source '" + source + "'");
  s.background.index = as_u64(require(bg, "index", "background"), "background.index");
  s.background.light = light_from_json(bg, "background");
  s.background.intensity = s.background.light.intensity_min;
  return s;
}

Json load_json(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(path.string() + ": invalid JSON: " + e.what());
  }
}

GenerationConfig load_config(const std::filesystem::path& path) {
  return config_from_json(load_json(path));
}

SceneDescription load_scene(const std::filesystem::path& path) {
  try {
    return scene_from_json(load_json(path));
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

std::string to_document(const Json& j) { return j.dump(2) + "\n"; }

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
  os.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!os) throw IoError("write to '" + path.string() + "' failed");
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::string numbered_name(const std::string& prefix, std::uint64_t id, const std::string& ext) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06llu", static_cast<unsigned long long>(id));
  return prefix + "_" + buf + ext;
}

std::string config_digest(const GenerationConfig& config) {
  const std::string doc = config_to_json(config).dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(doc.data(), doc.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hex[md[i] >> 4]);
    out.push_back(hex[md[i] & 15]);
  }
  return out;
}

}  // namespace cabinsynth
