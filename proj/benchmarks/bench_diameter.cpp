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
#include <memory>

#include "lrp/edges.hpp"
#include "lrp/graph.hpp"
#include "lrp/model.hpp"
#include "lrp/rng.hpp"

namespace {

struct Instance {
  lrp::Graph graph;
  std::vector<lrp::VertexId> cluster;
};

Instance make_instance(std::int64_t N, double s) {
  lrp::ModelParams p;
  p.N = N;
  p.s = s;
  p.seed = 11;
  const auto key = lrp::trial_key(p.seed, p.N, 0);
  auto cloud = std::make_shared<const lrp::PointCloud>(lrp::assemble_vertex_set(p, key));
  lrp::Graph graph(cloud, lrp::sample_edges_grid(*cloud, p, key));
  auto cluster = lrp::component_of_origin(graph);
  return {std::move(graph), std::move(cluster)};
}

void BM_DiameterIfub(benchmark::State& state) {
  const Instance in = make_instance(state.range(0), static_cast<double>(state.range(1)) / 2.0);
  std::size_t bfs = 0;
  for (auto _ : state) {
    const auto r = lrp::diameter_ifub(in.graph, in.cluster);
    bfs = r.bfs_count;
    benchmark::DoNotOptimize(r.diameter);
  }
  state.counters["bfs"] = static_cast<double>(bfs);
}
BENCHMARK(BM_DiameterIfub)
    ->ArgsProduct({{512, 2048, 4096}, {2, 3, 4, 6}})
    ->ArgNames({"N", "2s"})
    ->Unit(benchmark::kMillisecond);

void BM_DiameterExact(benchmark::State& state) {
  const Instance in = make_instance(state.range(0), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(lrp::diameter_exact(in.graph, in.cluster).diameter);
}
BENCHMARK(BM_DiameterExact)->Arg(128)->Arg(512)->Unit(benchmark::kMillisecond);

void BM_Bfs(benchmark::State& state) {
  const Instance in = make_instance(state.range(0), 2.0);
  for (auto _ : state) benchmark::DoNotOptimize(lrp::bfs_distances(in.graph, 0));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(in.graph.size()));
}
BENCHMARK(BM_Bfs)->Arg(1024)->Arg(4096);

}  // namespace
