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
#include <utility>
#include <vector>

#include "lrp/model.hpp"
#include "lrp/rng.hpp"

namespace lrp {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

/// Undirected edge set. Pairs satisfy first < second and are sorted
/// lexicographically; every backbone path pair is present exactly once.
struct EdgeList {
  std::vector<Edge> pairs;
  std::size_t backbone_edge_count = 0;

  std::size_t size() const noexcept { return pairs.size(); }
  std::size_t random_edge_count() const noexcept {
    return pairs.size() - backbone_edge_count;
  }
};

/// Cell list over the box: cell of x is floor(x / cell_side) per axis.
class SpatialGrid {
 public:
  SpatialGrid(const PointCloud& cloud, double cell_side = 1.0);

  double cell_side() const noexcept { return cell_side_; }
  std::int64_t cells_per_axis() const noexcept { return per_axis_; }
  std::size_t cell_count() const noexcept { return offsets_.size() - 1; }

  /// Vertex indices in cell `c`, ascending.
  std::span<const VertexId> members(std::size_t c) const noexcept {
    return {members_.data() + offsets_[c], offsets_[c + 1] - offsets_[c]};
  }
  std::size_t cell_of(std::span<const double> x) const noexcept;
  /// Integer cell coordinates of linear index `c`.
  std::vector<std::int64_t> cell_coords(std::size_t c) const;

  /// Smallest 1-norm distance between the closed cells, in units of cell_side.
  std::int64_t gap_in_cells(std::size_t a, std::size_t b) const noexcept;

 private:
  int d_;
  double cell_side_;
  std::int64_t per_axis_;
  std::vector<std::size_t> offsets_;
  std::vector<VertexId> members_;
};

/// Exact O(n^2) sampler. Pair (i, j) is a random edge iff
/// keyed_uniform(key, i, j) < g(|x_i - x_j|).
EdgeList sample_edges_naive(const PointCloud& cloud, const ModelParams& params,
                            StreamKey key);

/// Cell-list sampler with geometric skipping and thinning over cell pairs at
/// positive gap; cell pairs at gap 0 use the same keyed uniforms as the naive
/// sampler. Same edge law as sample_edges_naive.
EdgeList sample_edges_grid(const PointCloud& cloud, const ModelParams& params,
                           StreamKey key, double cell_side = 1.0);

/// Monte Carlo value with its standard error.
struct Estimate {
  double value = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
};

/// Half-open band (lower, upper] of 1-norm edge lengths.
struct LengthBand {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double r) const noexcept { return r > lower && r <= upper; }
};

/// Bands (c k, k] for k = max_length, c max_length, ... down to length 1,
/// closed off by (0, k]. Exhaustive over (0, max_length].
std::vector<LengthBand> geometric_bands(double max_length, double ratio = 0.5);

/// Expected number of Poisson-Poisson edges, rho^2/2 times the double
/// integral of g over the box, estimated from `samples` uniform position
/// pairs.
Estimate expected_edge_count(const ModelParams& params,
                             std::size_t samples = 1'000'000);

/// Same integral restricted to each band, from one shared sample.
std::vector<Estimate> expected_edge_count_by_band(
    const ModelParams& params, const std::vector<LengthBand>& bands,
    std::size_t samples = 1'000'000);

}  // namespace lrp
