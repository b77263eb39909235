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

#include "cabinsynth/pipeline.hpp"

#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <optional>
#include <regex>
#include <sstream>

#include "cabinsynth/error.hpp"
#include "cabinsynth/labels.hpp"
#include "cabinsynth/oracle_renderer.hpp"
#include "cabinsynth/png_io.hpp"
#include "cabinsynth/rng.hpp"
#include "cabinsynth/scene_sampler.hpp"

extern char** environ;

namespace cabinsynth {

namespace fs = std::filesystem;

namespace {

struct Failure {
  ExitCode code;
  std::string message;
};

using SampleFn = std::function<std::optional<Failure>(std::size_t)>;

// Runs fn over [0, n) on `jobs` threads. Failures are reported in index order
// and the first one decides the exit code, whatever the scheduling.
StageResult for_each_sample(std::size_t n, int jobs, ExitCode default_code, const SampleFn& fn) {
  std::vector<std::optional<Failure>> failures(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(jobs, 1))
  for (long i = 0; i < count; ++i) {
    try {
      failures[i] = fn(static_cast<std::size_t>(i));
    } catch (const std::exception& e) {
      failures[i] = Failure{default_code, e.what()};
    }
  }
  StageResult result;
  for (auto& f : failures) {
    if (!f) continue;
    if (result.ok()) result.code = f->code;
    result.messages.push_back(std::move(f->message));
  }
  return result;
}

StageResult config_failure(const std::vector<Violation>& violations) {
  StageResult r{ExitCode::kConfig, {}};
  for (const auto& v : violations) r.messages.push_back(v.field + ": " + v.message);
  return r;
}

std::string sample_tag(std::uint64_t id) { return "sample " + std::to_string(id); }

std::optional<std::uint64_t> scene_id_of(const fs::path& p) {
  static const std::regex pattern(R"(scene_(\d{6,})\.json)");
  std::smatch m;
  const std::string name = p.filename().string();
  if (!std::regex_match(name, m, pattern)) return std::nullopt;
  return std::stoull(m[1].str());
}

bool is_executable(const fs::path& p) {
  std::error_code ec;
  return fs::is_regular_file(p, ec) && ::access(p.c_str(), X_OK) == 0;
}

std::optional<fs::path> find_executable(const std::string& name) {
  if (name.find('/') != std::string::npos) {
    if (is_executable(name)) return fs::path(name);
    return std::nullopt;
  }
  const char* path_env = std::getenv("PATH");
  if (!path_env) return std::nullopt;
  std::stringstream ss(path_env);
  std::string dir;
  while (std::getline(ss, dir, ':')) {
    if (dir.empty()) continue;
    const fs::path candidate = fs::path(dir) / name;
    if (is_executable(candidate)) return candidate;
  }
  return std::nullopt;
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

int spawn_and_wait(const std::vector<std::string>& args) {
  std::vector<char*> argv;
  for (const auto& a : args) argv.push_back(const_cast<char*>(a.c_str()));
  argv.push_back(nullptr);
  pid_t pid = 0;
  if (posix_spawn(&pid, argv[0], nullptr, nullptr, argv.data(), environ) != 0) return -1;
  int status = 0;
  if (waitpid(pid, &status, 0) < 0) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

std::vector<fs::path> list_scene_files(const fs::path& dir) {
  std::vector<std::pair<std::uint64_t, fs::path>> found;
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) return {};
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    if (auto id = scene_id_of(entry.path())) found.emplace_back(*id, entry.path());
  }
  std::sort(found.begin(), found.end());
  std::vector<fs::path> out;
  for (auto& [id, p] : found) out.push_back(std::move(p));
  return out;
}

StageResult gen_scenes(const GenerationConfig& config, const fs::path& out_dir, int jobs) {
  if (auto v = validate_config(config); !v.empty()) return config_failure(v);
  fs::create_directories(out_dir);
  return for_each_sample(config.sample_count, jobs, ExitCode::kConfig,
                         [&](std::size_t i) -> std::optional<Failure> {
                           const SceneDescription scene = sample_scene(config, i);
                           write_text_file(out_dir / numbered_name("scene", i, ".json"),
                                           to_document(scene_to_json(scene)));
                           return std::nullopt;
                         });
}

StageResult render(const GenerationConfig& config, const fs::path& dir, Backend backend, int jobs) {
  const auto scenes = list_scene_files(dir);

  if (backend == Backend::kBlender) {
    const std::string requested = env_or(kBlenderEnv, "blender");
    const auto exe = find_executable(requested);
    if (!exe)
      return {ExitCode::kBackend,
              {"blender backend: executable '" + requested +
               "' not found; install Blender or set " + kBlenderEnv +
               " to its path (and " + kBlenderAdapterEnv + " to the adapter script)"}};
    const std::string adapter = env_or(kBlenderAdapterEnv, "adapter.py");
    const std::string assets = env_or(kAssetsEnv, "assets");
    return for_each_sample(scenes.size(), jobs, ExitCode::kBackend,
                           [&](std::size_t i) -> std::optional<Failure> {
                             const auto id = *scene_id_of(scenes[i]);
                             const fs::path rgb = dir / numbered_name("rgb", id, ".png");
                             const fs::path mask = dir / numbered_name("mask", id, ".png");
                             const int rc = spawn_and_wait({exe->string(), "--background", "--python",
                                                            adapter, "--", "--scene", scenes[i].string(),
                                                            "--assets", assets, "--rgb", rgb.string(),
                                                            "--mask", mask.string()});
                             if (rc != 0)
                               return Failure{ExitCode::kBackend, sample_tag(id) + ": renderer exited with " +
                                                                      std::to_string(rc)};
                             if (!fs::exists(rgb) || !fs::exists(mask))
                               return Failure{ExitCode::kBackend,
                                              sample_tag(id) + ": renderer produced no rgb/mask file"};
                             return std::nullopt;
                           });
  }

  try {
    check_palette(config.palette);
  } catch (const ConfigError& e) {
    return {ExitCode::kConfig, {e.what()}};
  }
  return for_each_sample(scenes.size(), jobs, ExitCode::kDataMismatch,
                         [&](std::size_t i) -> std::optional<Failure> {
                           const SceneDescription scene = load_scene(scenes[i]);
                           const auto id = *scene_id_of(scenes[i]);
                           write_png(dir / numbered_name("rgb", id, ".png"), render_rgb(scene));
                           write_png(dir / numbered_name("mask", id, ".png"),
                                     palette_render(rasterize(scene), config.palette));
                           return std::nullopt;
                         });
}

StageResult annotate(const GenerationConfig& config, const fs::path& dir, int jobs) {
  if (auto v = validate_config(config); !v.empty()) return config_failure(v);
  fs::create_directories(dir);
  const auto scenes = list_scene_files(dir);
  const StructuringElement se(config.structuring_element_size);
  std::vector<SampleAnnotation> annotations(scenes.size());

  StageResult result = for_each_sample(
      scenes.size(), jobs, ExitCode::kDataMismatch, [&](std::size_t i) -> std::optional<Failure> {
        const auto id = *scene_id_of(scenes[i]);
        const SceneDescription scene = load_scene(scenes[i]);
        const std::string mask_name = numbered_name("mask", id, ".png");
        if (!fs::exists(dir / mask_name))
          return Failure{ExitCode::kDataMismatch, sample_tag(id) + ": missing " + mask_name};
        const PaletteSplit decoded = read_mask_png(dir / mask_name, config.palette);
        if (decoded.unknown_pixels > 0)
          return Failure{ExitCode::kDataMismatch,
                         sample_tag(id) + ": " + mask_name + " has " +
                             std::to_string(decoded.unknown_pixels) + " pixels of unknown color"};
        const ImageSize expect = scene.camera.image_size;
        if (decoded.mask.width() != expect.width || decoded.mask.height() != expect.height)
          return Failure{ExitCode::kDataMismatch,
                         sample_tag(id) + ": " + mask_name + " is " + std::to_string(decoded.mask.width()) +
                             "x" + std::to_string(decoded.mask.height()) + ", camera expects " +
                             std::to_string(expect.width) + "x" + std::to_string(expect.height)};
        SampleAnnotation a = build_annotations(scene, decoded.mask, scene.camera, joints_of(scene), se);
        a.image_ref = numbered_name("rgb", id, ".png");
        a.mask_ref = mask_name;
        a.labels_ref = numbered_name("labels", id, ".txt");
        write_bbox_textfile(a, dir / a.labels_ref);
        annotations[i] = std::move(a);
        return std::nullopt;
      });
  if (!result.ok()) return result;
  write_manifest(config, annotations, dir / kManifestName);
  return result;
}

StageResult run_all(const GenerationConfig& config, const fs::path& dir, Backend backend, int jobs) {
  StageResult r = gen_scenes(config, dir, jobs);
  if (!r.ok()) return r;
  r = render(config, dir, backend, jobs);
  if (!r.ok()) return r;
  return annotate(config, dir, jobs);
}

// -- validate -------------------------------------------------------------------

namespace {

std::string format_record(const BboxRecord& r) {
  std::ostringstream os;
  os << int(r.instance_id) << ' ' << r.bbox.x << ' ' << r.bbox.y << ' ' << r.bbox.w << ' ' << r.bbox.h;
  return os.str();
}

void validate_sample(const fs::path& dir, const Manifest& m, const SampleAnnotation& s,
                     const StructuringElement& se, std::vector<std::string>& problems) {
  const std::string tag = sample_tag(s.sample_id);
  auto problem = [&](const std::string& msg) { problems.push_back(tag + ": " + msg); };

  if (s.derived_seed != derive_seed(m.config.master_seed, s.sample_id))
    problem("derived_seed does not match master_seed");

  const fs::path scene_path = dir / numbered_name("scene", s.sample_id, ".json");
  std::optional<SceneDescription> scene;
  if (!fs::exists(scene_path)) {
    problem("missing " + scene_path.filename().string());
  } else {
    try {
      scene = load_scene(scene_path);
      if (scene->sample_id != s.sample_id) problem("scene file holds sample_id " + std::to_string(scene->sample_id));
      if (scene->derived_seed != s.derived_seed) problem("scene derived_seed differs from manifest");
    } catch (const std::exception& e) {
      problem(e.what());
    }
  }

  // Label file grammar and agreement with the manifest.
  const std::string labels_name = numbered_name("labels", s.sample_id, ".txt");
  std::optional<BboxFile> labels;
  try {
    labels = parse_bbox_textfile(dir / labels_name);
  } catch (const ParseError& e) {
    problems.push_back(labels_name + ":" + std::to_string(e.line()) + ": " + e.what());
  } catch (const std::exception& e) {
    problem(e.what());
  }
  const auto expected_records = bbox_records(s);
  if (labels) {
    if (labels->sample_id != s.sample_id) problems.push_back(labels_name + ":1: header names another sample");
    const std::size_t n = std::max(labels->records.size(), expected_records.size());
    for (std::size_t i = 0; i < n; ++i) {
      const std::string where = labels_name + ":" + std::to_string(i + 2) + ": ";
      if (i >= labels->records.size()) {
        problems.push_back(where + "missing record " + format_record(expected_records[i]));
      } else if (i >= expected_records.size()) {
        problems.push_back(where + "record " + format_record(labels->records[i]) + " not in manifest");
      } else if (!(labels->records[i] == expected_records[i])) {
        problems.push_back(where + "record " + format_record(labels->records[i]) + " differs from manifest " +
                           format_record(expected_records[i]));
      }
    }
  }

  // Boxes against the mask.
  const fs::path mask_path = dir / numbered_name("mask", s.sample_id, ".png");
  if (!fs::exists(mask_path)) {
    problem("missing " + mask_path.filename().string());
    return;
  }
  PaletteSplit decoded;
  try {
    decoded = read_mask_png(mask_path, m.config.palette);
  } catch (const std::exception& e) {
    problem(e.what());
    return;
  }
  if (decoded.unknown_pixels) problem(std::to_string(decoded.unknown_pixels) + " mask pixels of unknown color");
  const InstanceBoxes boxes = instance_bboxes(decoded.mask, se);
  if (labels) {
    for (std::size_t i = 0; i < labels->records.size(); ++i) {
      const auto& rec = labels->records[i];
      const std::string where = labels_name + ":" + std::to_string(i + 2) + ": ";
      auto it = boxes.boxes.find(rec.instance_id);
      if (it == boxes.boxes.end())
        problems.push_back(where + "instance " + std::to_string(rec.instance_id) + " absent from mask");
      else if (!(it->second == rec.bbox))
        problems.push_back(where + "record " + format_record(rec) + " differs from mask-derived " +
                           format_record({rec.instance_id, it->second}));
      if (!bbox_fits(rec.bbox, decoded.mask.width(), decoded.mask.height()))
        problems.push_back(where + "box leaves the frame");
    }
    for (const auto& [id, box] : boxes.boxes) {
      const bool listed = std::any_of(labels->records.begin(), labels->records.end(),
                                      [id = id](const BboxRecord& r) { return r.instance_id == id; });
      if (!listed) problems.push_back(labels_name + ": mask instance " + std::to_string(id) + " has no record");
    }
  }

  for (const auto& inst : s.instances)
    for (const auto& kp : inst.keypoints) {
      if (kp.visibility == Visibility::kOutsideFrame) continue;
      const int x = static_cast<int>(std::floor(kp.u));
      const int y = static_cast<int>(std::floor(kp.v));
      if (!decoded.mask.contains(x, y)) {
        problem("keypoint " + kp.name + " of instance " + std::to_string(inst.instance_id) + " lies outside the frame");
        continue;
      }
      const bool on_instance = decoded.mask(x, y) == inst.instance_id;
      if ((kp.visibility == Visibility::kVisible) != on_instance)
        problem("keypoint " + kp.name + " of instance " + std::to_string(inst.instance_id) +
                " has inconsistent visibility");
    }
}

}  // namespace

StageResult validate_dataset(const fs::path& dir) {
  StageResult result;
  auto fail = [&](const std::string& msg) {
    result.code = ExitCode::kValidationFailed;
    result.messages.push_back(msg);
  };
  const fs::path manifest_path = dir / kManifestName;
  if (!fs::exists(manifest_path)) {
    fail(std::string(kManifestName) + ": missing");
    return result;
  }
  Manifest m;
  try {
    m = read_manifest(manifest_path);
  } catch (const std::exception& e) {
    fail(std::string(kManifestName) + ": " + e.what());
    return result;
  }
  if (config_digest(m.config) != m.config_digest) fail(std::string(kManifestName) + ": config_digest mismatch");
  if (m.document.value("master_seed", std::uint64_t{0}) != m.config.master_seed)
    fail(std::string(kManifestName) + ": master_seed differs from the embedded config");
  if (auto v = validate_config(m.config); !v.empty())
    for (const auto& violation : v) fail("manifest config: " + violation.field + ": " + violation.message);

  std::optional<StructuringElement> se;
  try {
    se.emplace(m.config.structuring_element_size);
  } catch (const std::exception& e) {
    fail(e.what());
    return result;
  }

  std::vector<std::vector<std::string>> per_sample(m.samples.size());
  const long n = static_cast<long>(m.samples.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < n; ++i) validate_sample(dir, m, m.samples[i], *se, per_sample[i]);
  for (const auto& problems : per_sample)
    for (const auto& p : problems) fail(p);

  std::vector<std::uint64_t> listed;
  for (const auto& s : m.samples) listed.push_back(s.sample_id);
  std::sort(listed.begin(), listed.end());
  for (const auto& scene : list_scene_files(dir)) {
    const auto id = *scene_id_of(scene);
    if (!std::binary_search(listed.begin(), listed.end(), id))
      fail(scene.filename().string() + ": not listed in the manifest");
  }
  return result;
}

// -- stats --------------------------------------------------------------------------

DatasetStats dataset_stats(const fs::path& dir) {
  const Manifest m = read_manifest(dir / kManifestName);
  DatasetStats stats;
  stats.samples = m.samples.size();
  stats.occupancy = m.config.occupancy;
  stats.pool_size = m.config.human_pool.size();
  if (stats.samples == 0) return stats;

  for (const auto& h : m.config.human_pool) stats.human_counts[h.human_id] = 0;
  for (const auto& s : m.config.seat_layout) stats.seat_counts[s.seat_id] = 0;
  std::map<std::string, std::pair<double, double>> ranges;
  for (const auto& r : m.config.pose_ranges) {
    const std::string key = r.bone_name + "." + to_string(r.axis);
    ranges[key] = {r.min_deg, r.max_deg};
    auto& hist = stats.angle_histograms[key];
    hist.lo = r.min_deg;
    hist.hi = r.max_deg;
    hist.counts.assign(kHistogramBins, 0);
  }
  if (stats.pool_size > 0) {
    const double p = static_cast<double>(stats.occupancy) / static_cast<double>(stats.pool_size);
    stats.human_expected = static_cast<double>(stats.samples) * p;
    stats.human_sigma = std::sqrt(static_cast<double>(stats.samples) * p * (1.0 - p));
  }

  for (const auto& s : m.samples) {
    const fs::path scene_path = dir / numbered_name("scene", s.sample_id, ".json");
    const SceneDescription scene =
        fs::exists(scene_path) ? load_scene(scene_path) : sample_scene(m.config, s.sample_id);
    for (const auto& p : scene.placements) {
      ++stats.human_counts[p.human_id];
      ++stats.seat_counts[p.seat_id];
      for (const auto& [bone, angles] : p.bone_pose)
        for (const auto& [axis, deg] : angles) {
          const std::string key = bone + "." + to_string(axis);
          auto it = stats.angle_histograms.find(key);
          if (it == stats.angle_histograms.end()) continue;
          auto& hist = it->second;
          int bin = 0;
          if (hist.hi > hist.lo)
            bin = static_cast<int>(std::floor((deg - hist.lo) / (hist.hi - hist.lo) * kHistogramBins));
          hist.counts[std::clamp(bin, 0, kHistogramBins - 1)] += 1;
        }
    }
  }
  for (auto& [key, hist] : stats.angle_histograms) {
    std::uint64_t total = 0;
    for (auto c : hist.counts) total += c;
    if (total == 0) continue;
    const double expected = static_cast<double>(total) / kHistogramBins;
    for (auto c : hist.counts) hist.chi_square += (c - expected) * (c - expected) / expected;
  }
  return stats;
}

std::string format_stats(const DatasetStats& stats) {
  std::ostringstream os;
  os << "samples: " << stats.samples << "\n\n";
  os << "human selection (expected " << std::fixed << std::setprecision(1) << stats.human_expected
     << ", sigma " << stats.human_sigma << ")\n";
  os << std::left << std::setw(16) << "human" << std::right << std::setw(10) << "count" << std::setw(10)
     << "z" << "\n";
  for (const auto& [id, count] : stats.human_counts) {
    const double z = stats.human_sigma > 0 ? (count - stats.human_expected) / stats.human_sigma : 0.0;
    os << std::left << std::setw(16) << id << std::right << std::setw(10) << count << std::setw(10)
       << std::setprecision(2) << z << "\n";
  }
  os << "\nseat occupancy\n";
  for (const auto& [seat, count] : stats.seat_counts)
    os << std::left << std::setw(16) << seat << std::right << std::setw(10) << count << "\n";
  for (const auto& [key, hist] : stats.angle_histograms) {
    os << "\nangle histogram " << key << " [" << std::setprecision(1) << hist.lo << ", " << hist.hi
       << "] chi2=" << std::setprecision(2) << hist.chi_square << "\n";
    const double width = (hist.hi - hist.lo) / kHistogramBins;
    for (std::size_t b = 0; b < hist.counts.size(); ++b)
      os << "  " << std::right << std::setw(8) << std::setprecision(2) << hist.lo + b * width << " "
         << std::setw(10) << hist.counts[b] << "\n";
  }
  return os.str();
}

Json stats_to_json(const DatasetStats& stats) {
  Json humans = Json::object();
  for (const auto& [id, count] : stats.human_counts) humans[id] = count;
  Json seats = Json::object();
  for (const auto& [id, count] : stats.seat_counts) seats[id] = count;
  Json hists = Json::object();
  for (const auto& [key, h] : stats.angle_histograms)
    hists[key] = Json{{"lo", h.lo}, {"hi", h.hi}, {"counts", h.counts}, {"chi_square", h.chi_square}};
  return Json{{"samples", stats.samples},
              {"occupancy", stats.occupancy},
              {"pool_size", stats.pool_size},
              {"human_expected", stats.human_expected},
              {"human_sigma", stats.human_sigma},
              {"human_counts", humans},
              {"seat_counts", seats},
              {"angle_histograms", hists}};
}

}  // namespace cabinsynth
