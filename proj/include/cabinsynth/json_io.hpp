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

// JSON schemas for configs, cameras and scene descriptions. The schemas are
// documented in docs/schemas.md.

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include <json.hpp>

#include "cabinsynth/config.hpp"

namespace cabinsynth {

using Json = nlohmann::ordered_json;

Json camera_to_json(const CameraSpec& camera);
/// Throws ConfigError naming the offending field (prefixed with `path`).
CameraSpec camera_from_json(const Json& j, const std::string& path = "camera");

Json config_to_json(const GenerationConfig& config);
/// Accepts either an explicit "human_pool" list or a "human_pool_generator"
/// recipe. Throws ConfigError naming the offending field.
GenerationConfig config_from_json(const Json& j);

Json scene_to_json(const SceneDescription& scene);
SceneDescription scene_from_json(const Json& j);

/// Throws IoError when unreadable and ConfigError on schema problems.
GenerationConfig load_config(const std::filesystem::path& path);
SceneDescription load_scene(const std::filesystem::path& path);
Json load_json(const std::filesystem::path& path);

/// Two-space indented dump with a trailing LF.
std::string to_document(const Json& j);

/// Writes bytes verbatim (binary mode, so LF stays LF). Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// "<prefix>_<id zero-padded to 6><ext>", e.g. numbered_name("scene", 3, ".json").
std::string numbered_name(const std::string& prefix, std::uint64_t id, const std::string& ext);

/// Hex SHA-256 of the canonical config document.
std::string config_digest(const GenerationConfig& config);

}  // namespace cabinsynth
