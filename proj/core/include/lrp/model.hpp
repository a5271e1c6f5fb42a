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
#include <span>
#include <vector>

#include "lrp/rng.hpp"

namespace lrp {

/// Full parameterization of the random graph on the box [0, N]^d.
struct ModelParams {
  int d = 1;                ///< dimension
  std::int64_t N = 1;       ///< box side
  double s = 2.0;           ///< decay exponent of the connection function
  double beta = 1.0;        ///< connection strength
  double rho = 1.0;         ///< Poisson intensity (points per unit volume)
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on out-of-range fields and ParityError when
  /// d >= 2 and N is odd.
  void validate() const;

  /// Number of lattice points (N + 1)^d.
  std::size_t backbone_count() const;
  /// Lebesgue volume N^d of the box.
  double volume() const;
};

/// 1 - exp(-beta r^-s); 1 at r = 0.
double connection_probability(double r, const ModelParams& params) noexcept;
double connection_probability(double r, double beta, double s) noexcept;

/// 1-norm distance between two d-dimensional points.
double l1_distance(std::span<const double> a, std::span<const double> b) noexcept;

struct VertexRole {
  enum class Kind : std::uint8_t { kBackbone, kPoisson };
  Kind kind = Kind::kPoisson;
  std::int64_t backbone_index = -1;  ///< path position when kind == kBackbone

  static VertexRole backbone(std::int64_t k) { return {Kind::kBackbone, k}; }
  static VertexRole poisson() { return {Kind::kPoisson, -1}; }
  bool is_backbone() const noexcept { return kind == Kind::kBackbone; }
  friend bool operator==(const VertexRole&, const VertexRole&) = default;
};

/// Vertex set: the backbone path (indices 0 .. Z_N - 1, in path order)
/// followed by the Poisson points.
class PointCloud {
 public:
  PointCloud(int d, std::int64_t N) : d_(d), N_(N) {}

  int dimension() const noexcept { return d_; }
  std::int64_t box_side() const noexcept { return N_; }
  std::size_t size() const noexcept { return roles_.size(); }
  std::size_t backbone_count() const noexcept { return backbone_count_; }
  std::size_t poisson_count() const noexcept { return size() - backbone_count_; }

  std::span<const double> point(std::size_t i) const noexcept {
    return {coords_.data() + i * static_cast<std::size_t>(d_),
            static_cast<std::size_t>(d_)};
  }
  const std::vector<double>& coords() const noexcept { return coords_; }
  const VertexRole& role(std::size_t i) const noexcept { return roles_[i]; }
  const std::vector<VertexRole>& roles() const noexcept { return roles_; }

  /// True iff i and j are consecutive on the backbone path.
  bool is_path_pair(std::size_t i, std::size_t j) const noexcept {
    return i < backbone_count_ && j < backbone_count_ &&
           (i + 1 == j || j + 1 == i);
  }

  double distance(std::size_t i, std::size_t j) const noexcept {
    return l1_distance(point(i), point(j));
  }

  /// Appends a backbone vertex; must precede every Poisson vertex.
  void add_backbone(std::span<const double> x);
  void add_poisson(std::span<const double> x);

  /// Throws InvalidArgument if any documented invariant fails.
  void validate() const;

 private:
  int d_;
  std::int64_t N_;
  std::size_t backbone_count_ = 0;
  std::vector<double> coords_;
  std::vector<VertexRole> roles_;
};

/// Lattice points of [0, N]^d in boustrophedon order: unit 1-norm steps from
/// the origin to (N, ..., N). Returned flat, d coordinates per point.
std::vector<std::int64_t> build_backbone(int d, std::int64_t N);

/// K ~ Poisson(rho N^d) uniform points in [0, N]^d, flat.
std::vector<double> sample_poisson_points(const ModelParams& params,
                                          StreamKey key);

/// Backbone first, then the Poisson points drawn from `key`.
PointCloud assemble_vertex_set(const ModelParams& params, StreamKey key);

/// Backbone first, then the given Poisson points (flat, d per point).
PointCloud assemble_vertex_set(const ModelParams& params,
                               std::span<const double> poisson_points);

}  // namespace lrp
