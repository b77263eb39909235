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

// Serial reference kernels against the OpenMP ones. Set OMP_NUM_THREADS to
// pick the thread count of the parallel variants.

#include <benchmark/benchmark.h>

#include <algorithm>

#include "cabinsynth/morphology.hpp"
#include "cabinsynth/oracle_renderer.hpp"
#include "cabinsynth/reference.hpp"
#include "cabinsynth/rng.hpp"
#include "cabinsynth/scene_sampler.hpp"

namespace cs = cabinsynth;

namespace {

cs::BinaryMask noisy_blobs(int w, int h) {
  cs::Xoshiro256StarStar rng(12345);
  cs::BinaryMask m(w, h);
  for (int k = 0; k < 12; ++k) {
    const int cx = static_cast<int>(rng.below(w)), cy = static_cast<int>(rng.below(h));
    const int r = 10 + static_cast<int>(rng.below(40));
    for (int y = std::max(0, cy - r); y < std::min(h, cy + r); ++y)
      for (int x = std::max(0, cx - r); x < std::min(w, cx + r); ++x)
        if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) m(x, y) = 1;
  }
  for (auto& v : m.pixels())
    if (rng.uniform01() < 0.01) v = !v;
  return m;
}

const cs::BinaryMask& bench_mask() {
  static const cs::BinaryMask m = noisy_blobs(256, 256);
  return m;
}

template <auto Kernel>
void run_morph(benchmark::State& state) {
  const cs::StructuringElement se(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Kernel(bench_mask(), se));
  state.SetItemsProcessed(state.iterations() * static_cast<long>(bench_mask().size()));
}

cs::BinaryMask dilate_parallel(const cs::BinaryMask& m, const cs::StructuringElement& se) { return cs::dilate(m, se); }
cs::BinaryMask dilate_serial(const cs::BinaryMask& m, const cs::StructuringElement& se) {
  return cs::reference::dilate(m, se);
}
cs::BinaryMask erode_parallel(const cs::BinaryMask& m, const cs::StructuringElement& se) { return cs::erode(m, se); }
cs::BinaryMask erode_serial(const cs::BinaryMask& m, const cs::StructuringElement& se) {
  return cs::reference::erode(m, se);
}
cs::BinaryMask close_parallel(const cs::BinaryMask& m, const cs::StructuringElement& se) { return cs::close(m, se); }
cs::BinaryMask close_serial(const cs::BinaryMask& m, const cs::StructuringElement& se) {
  return cs::reference::close(m, se);
}

const cs::SceneDescription& bench_scene() {
  static const cs::SceneDescription scene = [] {
    auto config = cs::default_config();
    config.image_size = {320, 240};
    config.camera.image_size = config.image_size;
    return cs::sample_scene(config, 0);
  }();
  return scene;
}

void BM_RasterizeParallel(benchmark::State& state) {
  const auto bodies = cs::proxies_of(bench_scene());
  for (auto _ : state) benchmark::DoNotOptimize(cs::rasterize(bodies, bench_scene().camera));
}

void BM_RasterizeSerial(benchmark::State& state) {
  const auto bodies = cs::proxies_of(bench_scene());
  for (auto _ : state) benchmark::DoNotOptimize(cs::reference::rasterize(bodies, bench_scene().camera));
}

}  // namespace

BENCHMARK(run_morph<dilate_parallel>)->Name("Dilate/parallel")->Arg(3)->Arg(5)->Arg(9);
BENCHMARK(run_morph<dilate_serial>)->Name("Dilate/serial")->Arg(3)->Arg(5)->Arg(9);
BENCHMARK(run_morph<erode_parallel>)->Name("Erode/parallel")->Arg(3)->Arg(5)->Arg(9);
BENCHMARK(run_morph<erode_serial>)->Name("Erode/serial")->Arg(3)->Arg(5)->Arg(9);
BENCHMARK(run_morph<close_parallel>)->Name("Close/parallel")->Arg(3)->Arg(5);
BENCHMARK(run_morph<close_serial>)->Name("Close/serial")->Arg(3)->Arg(5);
BENCHMARK(BM_RasterizeParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RasterizeSerial)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
