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

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "lrp/edges.hpp"
#include "lrp/graph.hpp"
#include "lrp/model.hpp"
#include "lrp/rng.hpp"

namespace lrp::test {

inline ModelParams params(int d, std::int64_t N, double s, double beta = 1.0,
                          double rho = 1.0, std::uint64_t seed = 1) {
  ModelParams p;
  p.d = d;
  p.N = N;
  p.s = s;
  p.beta = beta;
  p.rho = rho;
  p.seed = seed;
  return p;
}

inline Graph path_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Edge> edges;
  for (VertexId u = 0; u < n; ++u)
    for (VertexId v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, edges);
}

inline Graph star_graph(std::size_t leaves) {
  std::vector<Edge> edges;
  for (VertexId v = 1; v <= leaves; ++v) edges.emplace_back(0, v);
  return Graph(leaves + 1, edges);
}

enum class Sampler { kNaive, kGrid };

/// One sampled instance of the model for trial `trial`.
inline Graph sample_graph(const ModelParams& p, std::uint64_t trial,
                          Sampler sampler = Sampler::kGrid) {
  const StreamKey key = trial_key(p.seed, static_cast<std::uint64_t>(p.N), trial);
  auto cloud = std::make_shared<const PointCloud>(assemble_vertex_set(p, key));
  EdgeList edges = sampler == Sampler::kGrid ? sample_edges_grid(*cloud, p, key)
                                             : sample_edges_naive(*cloud, p, key);
  return Graph(cloud, edges);
}

/// Point cloud with the backbone of (d, N) followed by the given Poisson points.
inline std::shared_ptr<const PointCloud> cloud_with(int d, std::int64_t N,
                                                    std::vector<double> poisson) {
  return std::make_shared<const PointCloud>(
      assemble_vertex_set(params(d, N, 2.0 * d + 1.0), poisson));
}

/// Backbone path edges of `cloud` plus `extra`.
inline Graph graph_with(std::shared_ptr<const PointCloud> cloud, std::vector<Edge> extra) {
  EdgeList list;
  for (VertexId k = 0; k + 1 < cloud->backbone_count(); ++k) list.pairs.emplace_back(k, k + 1);
  list.backbone_edge_count = list.pairs.size();
  for (auto [u, v] : extra) list.pairs.emplace_back(std::min(u, v), std::max(u, v));
  return Graph(std::move(cloud), list);
}

/// All-pairs hop distances by Floyd-Warshall; kUnreachable when disconnected.
inline std::vector<std::vector<Hops>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.size();
  constexpr Hops inf = kUnreachable / 2;
  std::vector<std::vector<Hops>> dist(n, std::vector<Hops>(n, inf));
  for (VertexId v = 0; v < n; ++v) {
    dist[v][v] = 0;
    for (VertexId w : g.neighbors(v)) dist[v][w] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (dist[i][k] + dist[k][j] < dist[i][j]) dist[i][j] = dist[i][k] + dist[k][j];
  for (auto& row : dist)
    for (auto& x : row)
      if (x >= inf) x = kUnreachable;
  return dist;
}

}  // namespace lrp::test
