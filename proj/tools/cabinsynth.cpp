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

// cabinsynth <stage> --config <path> --out <dir> [--backend oracle|blender]
//            [--jobs N] [--seed U64] [--count N]
//
// Exit codes: 0 ok, 1 validation failed, 2 bad config, 3 backend missing,
// 4 inputs inconsistent.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "cabinsynth/error.hpp"
#include "cabinsynth/labels.hpp"
#include "cabinsynth/pipeline.hpp"

namespace cs = cabinsynth;

namespace {

struct Options {
  std::string config_path;
  std::string out_dir;
  cs::Backend backend = cs::Backend::kOracle;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> count;
};

int report(const cs::StageResult& r) {
  for (const auto& m : r.messages) std::cerr << m << "\n";
  return static_cast<int>(r.code);
}

std::optional<cs::GenerationConfig> load(const Options& opt, int& exit_code) {
  if (opt.config_path.empty()) {
    std::cerr << "--config is required for this command\n";
    exit_code = static_cast<int>(cs::ExitCode::kConfig);
    return std::nullopt;
  }
  try {
    cs::GenerationConfig config = cs::load_config(opt.config_path);
    if (opt.seed) config.master_seed = *opt.seed;
    if (opt.count) config.sample_count = *opt.count;
    return config;
  } catch (const std::exception& e) {
    std::cerr << opt.config_path << ": " << e.what() << "\n";
    exit_code = static_cast<int>(cs::ExitCode::kConfig);
    return std::nullopt;
  }
}

int run_stats(const Options& opt) {
  try {
    const cs::DatasetStats stats = cs::dataset_stats(opt.out_dir);
    cs::write_text_file(std::filesystem::path(opt.out_dir) / "stats.json",
                        cs::to_document(cs::stats_to_json(stats)));
    std::cout << cs::format_stats(stats);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(cs::ExitCode::kDataMismatch);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synthetic in-cabin occupancy dataset generator"};
  app.require_subcommand(1);
  Options opt;

  const std::map<std::string, cs::Backend> backends{{"oracle", cs::Backend::kOracle},
                                                    {"blender", cs::Backend::kBlender}};
  auto add_common = [&](CLI::App* sub, bool needs_config) {
    auto* c = sub->add_option("--config", opt.config_path, "generation config (JSON)");
    if (needs_config) c->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out_dir, "dataset directory")->required();
    sub->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--seed", opt.seed, "override master_seed");
    sub->add_option("--count", opt.count, "override sample_count");
    sub->add_option("--backend", opt.backend, "oracle or blender")
        ->transform(CLI::CheckedTransformer(backends, CLI::ignore_case));
  };

  struct Command {
    const char* name;
    const char* help;
    bool needs_config;
  };
  const Command commands[] = {
      {"gen-scenes", "sample scene descriptions", true},
      {"render", "render rgb images and instance masks", true},
      {"annotate", "derive labels and write the manifest", true},
      {"run", "gen-scenes, render and annotate", true},
      {"validate", "re-check a dataset directory", false},
      {"stats", "distribution report for a dataset directory", false},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands) {
    subs[c.name] = app.add_subcommand(c.name, c.help);
    add_common(subs[c.name], c.needs_config);
  }
  auto* dump = app.add_subcommand("default-config", "print the built-in default config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11 reports usage errors with its own codes; map them onto "bad config".
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(cs::ExitCode::kConfig);
  }

  if (dump->parsed()) {
    std::cout << cs::to_document(cs::config_to_json(cs::default_config()));
    return 0;
  }
  if (subs["validate"]->parsed()) return report(cs::validate_dataset(opt.out_dir));
  if (subs["stats"]->parsed()) return run_stats(opt);

  int exit_code = 0;
  const auto config = load(opt, exit_code);
  if (!config) return exit_code;

  try {
    if (subs["gen-scenes"]->parsed()) return report(cs::gen_scenes(*config, opt.out_dir, opt.jobs));
    if (subs["render"]->parsed()) return report(cs::render(*config, opt.out_dir, opt.backend, opt.jobs));
    if (subs["annotate"]->parsed()) return report(cs::annotate(*config, opt.out_dir, opt.jobs));
    return report(cs::run_all(*config, opt.out_dir, opt.backend, opt.jobs));
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return static_cast<int>(cs::ExitCode::kDataMismatch);
  }
}
