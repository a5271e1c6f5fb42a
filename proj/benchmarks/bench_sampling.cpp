// Copyright 2026 The lrpsim Authors.
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


#include <benchmark/benchmark.h>

#include <cstdint>

#include "lrp/edges.hpp"
#include "lrp/model.hpp"
#include "lrp/rng.hpp"

namespace {

lrp::ModelParams line(std::int64_t N, double s) {
  lrp::ModelParams p;
  p.d = 1;
  p.N = N;
  p.s = s;
  p.seed = 7;
  return p;
}

void BM_PoissonCloud(benchmark::State& state) {
  const lrp::ModelParams p = line(state.range(0), 2.0);
  std::uint64_t trial = 0;
  for (auto _ : state) {
    const auto cloud = lrp::assemble_vertex_set(p, lrp::trial_key(p.seed, p.N, trial++));
    benchmark::DoNotOptimize(cloud.size());
  }
}
BENCHMARK(BM_PoissonCloud)->RangeMultiplier(4)->Range(256, 16384);

void BM_GridSampler(benchmark::State& state) {
  const lrp::ModelParams p = line(state.range(0), static_cast<double>(state.range(1)) / 2.0);
  const auto key = lrp::trial_key(p.seed, p.N, 0);
  const auto cloud = lrp::assemble_vertex_set(p, key);
  for (auto _ : state) {
    const auto edges = lrp::sample_edges_grid(cloud, p, key);
    benchmark::DoNotOptimize(edges.size());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(cloud.size()));
}
BENCHMARK(BM_GridSampler)
    ->ArgsProduct({{256, 1024, 4096}, {2, 3, 4, 6}})
    ->ArgNames({"N", "2s"})
    ->Unit(benchmark::kMillisecond);

// Quadratic reference; kept small.
void BM_NaiveSampler(benchmark::State& state) {
  const lrp::ModelParams p = line(state.range(0), 2.0);
  const auto key = lrp::trial_key(p.seed, p.N, 0);
  const auto cloud = lrp::assemble_vertex_set(p, key);
  for (auto _ : state) {
    const auto edges = lrp::sample_edges_naive(cloud, p, key);
    benchmark::DoNotOptimize(edges.size());
  }
}
BENCHMARK(BM_NaiveSampler)->Arg(128)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
