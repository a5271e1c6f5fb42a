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

#include "lrp/edges.hpp"

#include <algorithm>
#include <cmath>

#include "lrp/error.hpp"

namespace lrp {
namespace {

void finalize(EdgeList& edges, const PointCloud& cloud) {
  for (std::size_t k = 0; k + 1 < cloud.backbone_count(); ++k)
    edges.pairs.emplace_back(static_cast<VertexId>(k), static_cast<VertexId>(k + 1));
  std::sort(edges.pairs.begin(), edges.pairs.end());
  edges.pairs.erase(std::unique(edges.pairs.begin(), edges.pairs.end()),
                    edges.pairs.end());
  edges.backbone_edge_count = cloud.backbone_count() > 0 ? cloud.backbone_count() - 1 : 0;
}

inline void keyed_trial(const PointCloud& cloud, const ModelParams& params,
                        StreamKey key, VertexId i, VertexId j, EdgeList& out) {
  if (i > j) std::swap(i, j);
  if (cloud.is_path_pair(i, j)) return;
  const double g = connection_probability(cloud.distance(i, j), params);
  if (keyed_uniform(key, i, j) < g) out.pairs.emplace_back(i, j);
}

void check_size(const PointCloud& cloud) {
  if (cloud.size() > std::numeric_limits<VertexId>::max())
    throw InvalidArgument("vertex count exceeds 32-bit index range");
}

}  // namespace

SpatialGrid::SpatialGrid(const PointCloud& cloud, double cell_side)
    : d_(cloud.dimension()), cell_side_(cell_side) {
  if (!(cell_side > 0.0)) throw InvalidArgument("cell_side must be positive");
  per_axis_ = static_cast<std::int64_t>(
                  std::floor(static_cast<double>(cloud.box_side()) / cell_side)) + 1;
  std::size_t cells = 1;
  for (int k = 0; k < d_; ++k) cells *= static_cast<std::size_t>(per_axis_);

  std::vector<std::size_t> cell_index(cloud.size());
  offsets_.assign(cells + 1, 0);
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    cell_index[i] = cell_of(cloud.point(i));
    ++offsets_[cell_index[i] + 1];
  }
  for (std::size_t c = 0; c < cells; ++c) offsets_[c + 1] += offsets_[c];
  members_.resize(cloud.size());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < cloud.size(); ++i)
    members_[fill[cell_index[i]]++] = static_cast<VertexId>(i);
}

std::size_t SpatialGrid::cell_of(std::span<const double> x) const noexcept {
  std::size_t index = 0;
  for (int k = d_ - 1; k >= 0; --k) {
    auto c = static_cast<std::int64_t>(std::floor(x[k] / cell_side_));
    c = std::clamp<std::int64_t>(c, 0, per_axis_ - 1);
    index = index * static_cast<std::size_t>(per_axis_) + static_cast<std::size_t>(c);
  }
  return index;
}

std::vector<std::int64_t> SpatialGrid::cell_coords(std::size_t c) const {
  std::vector<std::int64_t> out(static_cast<std::size_t>(d_));
  for (int k = 0; k < d_; ++k) {
    out[k] = static_cast<std::int64_t>(c % static_cast<std::size_t>(per_axis_));
    c /= static_cast<std::size_t>(per_axis_);
  }
  return out;
}

std::int64_t SpatialGrid::gap_in_cells(std::size_t a, std::size_t b) const noexcept {
  std::int64_t gap = 0;
  const auto side = static_cast<std::size_t>(per_axis_);
  for (int k = 0; k < d_; ++k) {
    const auto ca = static_cast<std::int64_t>(a % side);
    const auto cb = static_cast<std::int64_t>(b % side);
    a /= side;
    b /= side;
    gap += std::max<std::int64_t>(0, std::abs(ca - cb) - 1);
  }
  return gap;
}

EdgeList sample_edges_naive(const PointCloud& cloud, const ModelParams& params,
                            StreamKey key) {
  check_size(cloud);
  EdgeList out;
  const auto n = static_cast<VertexId>(cloud.size());
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j) keyed_trial(cloud, params, key, i, j, out);
  finalize(out, cloud);
  return out;
}

EdgeList sample_edges_grid(const PointCloud& cloud, const ModelParams& params,
                           StreamKey key, double cell_side) {
  check_size(cloud);
  const SpatialGrid grid(cloud, cell_side);
  EdgeList out;
  const std::size_t cells = grid.cell_count();

  // The bound and its log depend only on the integer gap.
  const auto max_gap = static_cast<std::size_t>(cloud.dimension() * grid.cells_per_axis());
  std::vector<double> bound(max_gap + 1), log_miss(max_gap + 1);
  for (std::size_t g = 0; g <= max_gap; ++g) {
    bound[g] = g == 0 ? 1.0
                      : connection_probability(static_cast<double>(g) * cell_side, params);
    log_miss[g] = std::log1p(-bound[g]);
  }

  for (std::size_t a = 0; a < cells; ++a) {
    const auto in_a = grid.members(a);
    if (in_a.empty()) continue;
    for (std::size_t i = 0; i < in_a.size(); ++i)
      for (std::size_t j = i + 1; j < in_a.size(); ++j)
        keyed_trial(cloud, params, key, in_a[i], in_a[j], out);

    for (std::size_t b = a + 1; b < cells; ++b) {
      const auto in_b = grid.members(b);
      if (in_b.empty()) continue;
      const auto gap = static_cast<std::size_t>(grid.gap_in_cells(a, b));
      const double p_bar = bound[gap];
      if (p_bar <= 0.0) continue;
      if (gap == 0 || p_bar >= 1.0) {
        for (VertexId u : in_a)
          for (VertexId v : in_b) keyed_trial(cloud, params, key, u, v, out);
        continue;
      }
      // Geometric skipping over the lexicographic pair index of the block,
      // then thinning by g(r) / p_bar.
      CounterStream stream(key, StreamTag::kCellBlock, static_cast<std::uint32_t>(a),
                           static_cast<std::uint32_t>(b));
      const double total = static_cast<double>(in_a.size()) * static_cast<double>(in_b.size());
      double pos = -1.0;
      while (true) {
        pos += 1.0 + std::floor(std::log(stream.uniform_pos()) / log_miss[gap]);
        if (!(pos < total)) break;
        const auto flat = static_cast<std::size_t>(pos);
        VertexId u = in_a[flat / in_b.size()];
        VertexId v = in_b[flat % in_b.size()];
        const double accept = stream.uniform();
        if (u > v) std::swap(u, v);
        if (cloud.is_path_pair(u, v)) continue;
        if (accept * p_bar < connection_probability(cloud.distance(u, v), params))
          out.pairs.emplace_back(u, v);
      }
    }
  }
  finalize(out, cloud);
  return out;
}

std::vector<LengthBand> geometric_bands(double max_length, double ratio) {
  if (!(max_length > 0.0)) throw InvalidArgument("max_length must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw InvalidArgument("band ratio must be in (0,1)");
  std::vector<LengthBand> bands;
  double upper = max_length;
  while (upper > 1.0) {
    bands.push_back({upper * ratio, upper});
    upper *= ratio;
  }
  bands.push_back({0.0, upper});
  std::reverse(bands.begin(), bands.end());
  return bands;
}

std::vector<Estimate> expected_edge_count_by_band(const ModelParams& params,
                                                  const std::vector<LengthBand>& bands,
                                                  std::size_t samples) {
  params.validate();
  if (samples < 2) throw InvalidArgument("need at least two Monte Carlo samples");
  std::vector<double> sum(bands.size(), 0.0), sum_sq(bands.size(), 0.0);
  std::vector<Estimate> out(bands.size());
  if (params.beta == 0.0) {
    for (auto& e : out) e.samples = samples;
    return out;
  }
  CounterStream stream(StreamKey{mix64(params.seed)}, StreamTag::kMonteCarlo);
  const auto n_side = static_cast<double>(params.N);
  const auto d = static_cast<std::size_t>(params.d);
  std::vector<double> x(d), y(d);
  for (std::size_t t = 0; t < samples; ++t) {
    for (auto& c : x) c = stream.uniform() * n_side;
    for (auto& c : y) c = stream.uniform() * n_side;
    const double r = l1_distance(x, y);
    const double g = connection_probability(r, params);
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (bands[b].contains(r) || (r == 0.0 && bands[b].lower == 0.0)) {
        sum[b] += g;
        sum_sq[b] += g * g;
      }
    }
  }
  // rho^2 / 2 * |box|^2 * E[g 1_band] over uniform ordered pairs.
  const double scale = 0.5 * params.rho * params.rho * params.volume() * params.volume();
  const auto m = static_cast<double>(samples);
  for (std::size_t b = 0; b < bands.size(); ++b) {
    const double mean = sum[b] / m;
    const double var = std::max(0.0, (sum_sq[b] / m - mean * mean) * m / (m - 1.0));
    out[b] = {scale * mean, scale * std::sqrt(var / m), samples};
  }
  return out;
}

Estimate expected_edge_count(const ModelParams& params, std::size_t samples) {
  const double max_length = static_cast<double>(params.d) * static_cast<double>(params.N);
  return expected_edge_count_by_band(params, {{-1.0, max_length}}, samples).front();
}

}  // namespace lrp
