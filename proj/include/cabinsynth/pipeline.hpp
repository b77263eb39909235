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

// Dataset stages behind the cabinsynth command line.
//
// Every stage reads and writes one flat dataset directory:
//   scene_<id>.json   rgb_<id>.png   mask_<id>.png   labels_<id>.txt
//   manifest.json     stats.json
// Samples are processed by an OpenMP worker pool; each sample only depends on
// its own files and its own derived seed, so the thread count never changes
// the output.

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "cabinsynth/config.hpp"
#include "cabinsynth/json_io.hpp"

namespace cabinsynth {

enum class ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kConfig = 2,
  kBackend = 3,
  kDataMismatch = 4,
};

enum class Backend { kOracle, kBlender };

/// Environment variables consulted by the blender backend.
inline constexpr const char* kBlenderEnv = "CABINSYNTH_BLENDER";
inline constexpr const char* kBlenderAdapterEnv = "CABINSYNTH_BLENDER_ADAPTER";
inline constexpr const char* kAssetsEnv = "CABINSYNTH_ASSETS";

struct StageResult {
  ExitCode code = ExitCode::kOk;
  /// Human-readable diagnostics, in sample order.
  std::vector<std::string> messages;

  bool ok() const noexcept { return code == ExitCode::kOk; }
};

/// Writes scene_<id>.json for every sample index of the config.
StageResult gen_scenes(const GenerationConfig& config, const std::filesystem::path& out_dir, int jobs = 1);

/// Renders every scene_*.json found in `dir` into rgb_<id>.png / mask_<id>.png.
StageResult render(const GenerationConfig& config, const std::filesystem::path& dir, Backend backend,
                   int jobs = 1);

/// Labels every scene in `dir` from its mask, then writes manifest.json.
StageResult annotate(const GenerationConfig& config, const std::filesystem::path& dir, int jobs = 1);

/// gen_scenes, render and annotate in sequence; stops at the first failure.
StageResult run_all(const GenerationConfig& config, const std::filesystem::path& dir, Backend backend,
                    int jobs = 1);

/// Re-checks a dataset from its files: label grammar, boxes against the masks,
/// keypoint visibility, seeds and the config digest. Exit code 1 on any problem.
StageResult validate_dataset(const std::filesystem::path& dir);

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<std::uint64_t> counts;
  /// Pearson statistic against a uniform distribution over the bins.
  double chi_square = 0.0;
};

struct DatasetStats {
  std::uint64_t samples = 0;
  int occupancy = 0;
  std::size_t pool_size = 0;
  /// Times each pool member was placed (every pool member listed).
  std::map<std::string, std::uint64_t> human_counts;
  /// Expected count and binomial standard deviation for one human.
  double human_expected = 0.0;
  double human_sigma = 0.0;
  /// Keyed "<bone>.<axis>".
  std::map<std::string, Histogram> angle_histograms;
  std::map<std::string, std::uint64_t> seat_counts;
};

inline constexpr int kHistogramBins = 20;

/// Distribution report over the samples listed in the manifest. Scenes come
/// from the scene files when present, otherwise they are re-derived from the
/// manifest's config. Throws IoError / ConfigError when the manifest is missing.
DatasetStats dataset_stats(const std::filesystem::path& dir);
std::string format_stats(const DatasetStats& stats);
Json stats_to_json(const DatasetStats& stats);

/// Scene files in `dir`, sorted by sample id.
std::vector<std::filesystem::path> list_scene_files(const std::filesystem::path& dir);

}  // namespace cabinsynth
