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
#include <limits>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "lrp/edges.hpp"
#include "lrp/model.hpp"

namespace lrp {

/// Hop count; kUnreachable marks vertices in other components.
using Hops = std::int32_t;
inline constexpr Hops kUnreachable = std::numeric_limits<Hops>::max();

/// Immutable CSR adjacency over a PointCloud. Neighbor lists are sorted.
class Graph {
 public:
  Graph(std::shared_ptr<const PointCloud> cloud, const EdgeList& edges);
  /// Bare topology without coordinates (tests, synthetic inputs).
  Graph(std::size_t n, std::span<const Edge> edges);

  std::size_t size() const noexcept { return offsets_.size() - 1; }
  std::size_t edge_count() const noexcept { return neighbors_.size() / 2; }
  std::span<const VertexId> neighbors(VertexId v) const noexcept {
    return {neighbors_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }
  std::size_t degree(VertexId v) const noexcept { return offsets_[v + 1] - offsets_[v]; }

  /// Null for topology-only graphs.
  const PointCloud* cloud() const noexcept { return cloud_.get(); }
  std::shared_ptr<const PointCloud> shared_cloud() const noexcept { return cloud_; }

  /// Each undirected edge once, (u, v) with u < v, ascending.
  std::vector<Edge> edges() const;

  /// Throws InvalidArgument unless adjacency is symmetric, sorted and free of
  /// self-loops and duplicates.
  void validate() const;

  /// Mutable access to the flattened neighbor array for fault-injection tests.
  std::vector<VertexId>& raw_neighbors_for_testing() noexcept { return neighbors_; }

 private:
  void build(std::size_t n, std::span<const Edge> edges);

  std::shared_ptr<const PointCloud> cloud_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> neighbors_;
};

/// Single-source hop distances; kUnreachable outside the source's component.
std::vector<Hops> bfs_distances(const Graph& graph, VertexId source);

/// Vertices reachable from vertex 0, ascending.
std::vector<VertexId> component_of_origin(const Graph& graph);

struct DiameterReport {
  Hops diameter = 0;
  std::pair<VertexId, VertexId> witness{0, 0};
  std::size_t cluster_size = 0;
  std::size_t outside_count = 0;     ///< graph vertices not in the subset
  Hops origin_corner_distance = 0;   ///< 0 for graphs without a backbone
  std::size_t bfs_count = 0;
};

/// BFS from every subset vertex. Witness is the lexicographically smallest
/// pair attaining the maximum. Throws NotConnectedError if the subset is not
/// connected.
DiameterReport diameter_exact(const Graph& graph, std::span<const VertexId> subset);

/// Exact diameter by double sweep plus level-by-level refutation of the
/// BFS tree from a central vertex. Same diameter as diameter_exact; the
/// witness is a pair attaining it.
DiameterReport diameter_ifub(const Graph& graph, std::span<const VertexId> subset);

/// Hop distance between the backbone endpoints 0 and (N, ..., N).
Hops origin_corner_distance(const Graph& graph);

}  // namespace lrp
