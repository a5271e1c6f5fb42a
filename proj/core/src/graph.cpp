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

#include "lrp/graph.hpp"

#include <algorithm>
#include <array>
#include <string>

#include "lrp/error.hpp"

namespace lrp {

Graph::Graph(std::shared_ptr<const PointCloud> cloud, const EdgeList& edges)
    : cloud_(std::move(cloud)) {
  if (!cloud_) throw InvalidArgument("graph requires a point cloud");
  build(cloud_->size(), edges.pairs);
}

Graph::Graph(std::size_t n, std::span<const Edge> edges) { build(n, edges); }

void Graph::build(std::size_t n, std::span<const Edge> edges) {
  offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= n || v >= n) throw InvalidArgument("edge endpoint out of range");
    if (u == v) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
    ++offsets_[u + 1];
    ++offsets_[v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  neighbors_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    neighbors_[fill[u]++] = v;
    neighbors_[fill[v]++] = u;
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto first = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]);
    auto last = neighbors_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last)
      throw InvalidArgument("duplicate edge at vertex " + std::to_string(i));
  }
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (VertexId u = 0; u < size(); ++u)
    for (VertexId v : neighbors(u))
      if (u < v) out.emplace_back(u, v);
  return out;
}

void Graph::validate() const {
  for (VertexId u = 0; u < size(); ++u) {
    const auto adj = neighbors(u);
    for (std::size_t k = 0; k < adj.size(); ++k) {
      const VertexId v = adj[k];
      if (v >= size()) throw InvalidArgument("neighbor index out of range at " + std::to_string(u));
      if (v == u) throw InvalidArgument("self-loop at vertex " + std::to_string(u));
      if (k > 0 && adj[k - 1] >= v)
        throw InvalidArgument("neighbor list of " + std::to_string(u) + " not strictly ascending");
      const auto back = neighbors(v);
      if (!std::binary_search(back.begin(), back.end(), u))
        throw InvalidArgument("asymmetric adjacency between " + std::to_string(u) +
                              " and " + std::to_string(v));
    }
  }
}

namespace {

/// Reusable BFS state restricted to a vertex mask.
class Bfs {
 public:
  Bfs(const Graph& graph, const std::vector<char>* mask)
      : graph_(graph), mask_(mask), dist_(graph.size(), kUnreachable),
        parent_(graph.size()) {
    queue_.reserve(graph.size());
  }

  /// Runs from `source`; returns number of vertices reached.
  std::size_t run(VertexId source) {
    for (VertexId v : queue_) dist_[v] = kUnreachable;
    queue_.clear();
    dist_[source] = 0;
    parent_[source] = source;
    queue_.push_back(source);
    for (std::size_t head = 0; head < queue_.size(); ++head) {
      const VertexId u = queue_[head];
      for (VertexId v : graph_.neighbors(u)) {
        if (dist_[v] != kUnreachable || (mask_ && !(*mask_)[v])) continue;
        dist_[v] = dist_[u] + 1;
        parent_[v] = u;
        queue_.push_back(v);
      }
    }
    return queue_.size();
  }

  Hops eccentricity() const { return dist_[queue_.back()]; }

  /// Smallest-index vertex at maximal distance.
  VertexId farthest() const {
    const Hops ecc = eccentricity();
    VertexId best = queue_.back();
    for (auto it = queue_.rbegin(); it != queue_.rend() && dist_[*it] == ecc; ++it)
      best = std::min(best, *it);
    return best;
  }

  const std::vector<Hops>& dist() const { return dist_; }
  const std::vector<VertexId>& order() const { return queue_; }
  VertexId parent(VertexId v) const { return parent_[v]; }

 private:
  const Graph& graph_;
  const std::vector<char>* mask_;
  std::vector<Hops> dist_;
  std::vector<VertexId> parent_;
  std::vector<VertexId> queue_;
};

std::vector<char> subset_mask(const Graph& graph, std::span<const VertexId> subset) {
  if (subset.empty()) throw InvalidArgument("diameter of an empty vertex set");
  std::vector<char> mask(graph.size(), 0);
  for (VertexId v : subset) {
    if (v >= graph.size()) throw InvalidArgument("subset vertex out of range");
    mask[v] = 1;
  }
  return mask;
}

std::size_t distinct_count(const std::vector<char>& mask) {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), 1));
}

void fill_common(const Graph& graph, const std::vector<char>& mask,
                 DiameterReport& report) {
  report.cluster_size = distinct_count(mask);
  report.outside_count = graph.size() - report.cluster_size;
  const PointCloud* cloud = graph.cloud();
  if (cloud && cloud->backbone_count() > 0) {
    const auto corner = static_cast<VertexId>(cloud->backbone_count() - 1);
    if (mask[0] && mask[corner]) {
      Bfs bfs(graph, &mask);
      bfs.run(0);
      report.origin_corner_distance = bfs.dist()[corner];
    }
  }
}

/// Eccentricities of up to 64 sources at once: one bit per source, one pass
/// over the subset's adjacency per BFS level.
void batch_eccentricities(const Graph& graph, std::span<const VertexId> members,
                          std::span<const VertexId> sources, std::vector<std::uint64_t>& seen,
                          std::vector<std::uint64_t>& frontier,
                          std::vector<std::uint64_t>& next, std::span<Hops> ecc) {
  for (VertexId v : members) seen[v] = frontier[v] = next[v] = 0;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    seen[sources[k]] |= bit;
    frontier[sources[k]] |= bit;
    ecc[k] = 0;
  }
  for (Hops round = 1;; ++round) {
    std::uint64_t reached = 0;
    for (VertexId v : members) {
      std::uint64_t acc = 0;
      for (VertexId u : graph.neighbors(v)) acc |= frontier[u];
      acc &= ~seen[v];
      next[v] = acc;
      reached |= acc;
    }
    if (reached == 0) break;
    for (std::size_t k = 0; k < sources.size(); ++k)
      if (reached >> k & 1u) ecc[k] = round;
    for (VertexId v : members) {
      seen[v] |= next[v];
      frontier[v] = next[v];
    }
  }
}

[[noreturn]] void not_connected() {
  throw NotConnectedError("vertex subset is not connected");
}

}  // namespace

std::vector<Hops> bfs_distances(const Graph& graph, VertexId source) {
  if (source >= graph.size()) throw InvalidArgument("BFS source out of range");
  Bfs bfs(graph, nullptr);
  bfs.run(source);
  return bfs.dist();
}

std::vector<VertexId> component_of_origin(const Graph& graph) {
  if (graph.size() == 0) throw InvalidArgument("graph has no origin vertex");
  Bfs bfs(graph, nullptr);
  bfs.run(0);
  std::vector<VertexId> out = bfs.order();
  std::sort(out.begin(), out.end());
  return out;
}

DiameterReport diameter_exact(const Graph& graph, std::span<const VertexId> subset) {
  const auto mask = subset_mask(graph, subset);
  const std::size_t members = distinct_count(mask);
  DiameterReport report;
  Bfs bfs(graph, &mask);
  bool have_witness = false;
  for (VertexId u = 0; u < graph.size(); ++u) {
    if (!mask[u]) continue;
    if (bfs.run(u) != members) not_connected();
    ++report.bfs_count;
    const auto& dist = bfs.dist();
    for (VertexId v = u + 1; v < graph.size(); ++v) {
      if (!mask[v]) continue;
      if (!have_witness || dist[v] > report.diameter) {
        report.diameter = dist[v];
        report.witness = {u, v};
        have_witness = true;
      }
    }
  }
  if (!have_witness) report.witness = {subset.front(), subset.front()};
  fill_common(graph, mask, report);
  return report;
}

DiameterReport diameter_ifub(const Graph& graph, std::span<const VertexId> subset) {
  const auto mask = subset_mask(graph, subset);
  const std::size_t members = distinct_count(mask);
  DiameterReport report;
  Bfs bfs(graph, &mask);
  auto sweep = [&](VertexId from) {
    if (bfs.run(from) != members) not_connected();
    ++report.bfs_count;
    return bfs.eccentricity();
  };
  auto offer = [&](VertexId from, Hops ecc) {
    if (ecc > report.diameter) {
      report.diameter = ecc;
      report.witness = std::minmax(from, bfs.farthest());
    }
  };

  VertexId start = subset.front();
  for (VertexId v : subset)
    if (graph.degree(v) > graph.degree(start) ||
        (graph.degree(v) == graph.degree(start) && v < start))
      start = v;
  report.witness = {start, start};

  // Double sweep: start -> a -> b; the midpoint of the a-b path is central.
  sweep(start);
  const VertexId a = bfs.farthest();
  const Hops ecc_a = sweep(a);
  offer(a, ecc_a);
  VertexId center = bfs.farthest();
  for (Hops step = 0; step < ecc_a - ecc_a / 2; ++step) center = bfs.parent(center);

  const Hops ecc_center = sweep(center);
  offer(center, ecc_center);
  std::vector<std::vector<VertexId>> levels(static_cast<std::size_t>(ecc_center) + 1);
  for (VertexId v : bfs.order()) levels[static_cast<std::size_t>(bfs.dist()[v])].push_back(v);

  // Vertices outside the subset keep zero bit-sets, so they never relay.
  std::vector<VertexId> subset_ids;
  subset_ids.reserve(subset.size());
  for (VertexId v = 0; v < graph.size(); ++v)
    if (mask[v]) subset_ids.push_back(v);
  std::vector<std::uint64_t> seen(graph.size(), 0), frontier(graph.size(), 0),
      next(graph.size(), 0);
  std::array<Hops, 64> batch_ecc{};
  constexpr std::size_t kMinBatch = 16;

  Hops lower = report.diameter;
  Hops upper = 2 * ecc_center;
  for (Hops level = ecc_center; upper > lower && level > 0; --level) {
    const auto& fringe = levels[static_cast<std::size_t>(level)];
    for (std::size_t first = 0; first < fringe.size(); first += 64) {
      const auto batch = std::span<const VertexId>(fringe).subspan(
          first, std::min<std::size_t>(64, fringe.size() - first));
      if (batch.size() < kMinBatch) {
        // A bit-parallel pass costs as much as one BFS per level of depth.
        for (VertexId u : batch) offer(u, sweep(u));
        if (report.diameter >= 2 * level) break;
        continue;
      }
      batch_eccentricities(graph, subset_ids, batch, seen, frontier, next, batch_ecc);
      report.bfs_count += batch.size();
      for (std::size_t k = 0; k < batch.size(); ++k) {
        if (batch_ecc[k] > report.diameter) {
          // Rerun singly to recover a farthest vertex for the witness.
          --report.bfs_count;
          offer(batch[k], sweep(batch[k]));
        }
      }
      // Nothing in this level can exceed 2 * level.
      if (report.diameter >= 2 * level) break;
    }
    lower = report.diameter;
    if (lower > 2 * (level - 1)) break;
    upper = 2 * (level - 1);
  }
  fill_common(graph, mask, report);
  return report;
}

Hops origin_corner_distance(const Graph& graph) {
  const PointCloud* cloud = graph.cloud();
  if (!cloud || cloud->backbone_count() == 0)
    throw InvalidArgument("graph has no backbone");
  return bfs_distances(graph, 0)[cloud->backbone_count() - 1];
}

}  // namespace lrp
