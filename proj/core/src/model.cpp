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

#include "lrp/model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "lrp/error.hpp"

namespace lrp {

void ModelParams::validate() const {
  if (d < 1) throw InvalidArgument("d must be >= 1, got " + std::to_string(d));
  if (N < 1) throw InvalidArgument("N must be >= 1, got " + std::to_string(N));
  if (!(s > 0.0) || !std::isfinite(s))
    throw InvalidArgument("s must be a positive finite real");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw InvalidArgument("beta must be a nonnegative finite real");
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw InvalidArgument("rho must be a positive finite real");
  if (d >= 2 && N % 2 != 0)
    throw ParityError("no unit-step path from 0 to (N,...,N) exists for d >= 2 "
                      "and odd N (d=" + std::to_string(d) +
                      ", N=" + std::to_string(N) + "); use an even N");
}

std::size_t ModelParams::backbone_count() const {
  std::size_t count = 1;
  for (int k = 0; k < d; ++k) count *= static_cast<std::size_t>(N + 1);
  return count;
}

double ModelParams::volume() const {
  return std::pow(static_cast<double>(N), d);
}

double connection_probability(double r, double beta, double s) noexcept {
  if (r <= 0.0) return 1.0;
  if (beta == 0.0) return 0.0;
  return -std::expm1(-beta * std::pow(r, -s));
}

double connection_probability(double r, const ModelParams& params) noexcept {
  return connection_probability(r, params.beta, params.s);
}

double l1_distance(std::span<const double> a, std::span<const double> b) noexcept {
  double sum = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += std::abs(a[k] - b[k]);
  return sum;
}

void PointCloud::add_backbone(std::span<const double> x) {
  if (backbone_count_ != roles_.size())
    throw InvalidArgument("backbone vertices must precede Poisson vertices");
  coords_.insert(coords_.end(), x.begin(), x.end());
  roles_.push_back(VertexRole::backbone(static_cast<std::int64_t>(backbone_count_)));
  ++backbone_count_;
}

void PointCloud::add_poisson(std::span<const double> x) {
  coords_.insert(coords_.end(), x.begin(), x.end());
  roles_.push_back(VertexRole::poisson());
}

void PointCloud::validate() const {
  const auto n_side = static_cast<double>(N_);
  if (coords_.size() != roles_.size() * static_cast<std::size_t>(d_))
    throw InvalidArgument("coordinate array does not match vertex count");
  for (double c : coords_) {
    if (!(c >= 0.0 && c <= n_side)) throw InvalidArgument("coordinate outside [0,N]^d");
  }
  for (std::size_t i = 0; i < roles_.size(); ++i) {
    const bool should_be_backbone = i < backbone_count_;
    if (roles_[i].is_backbone() != should_be_backbone ||
        (should_be_backbone && roles_[i].backbone_index != static_cast<std::int64_t>(i)))
      throw InvalidArgument("role labels out of path order at vertex " + std::to_string(i));
  }
  for (std::size_t i = 0; i + 1 < backbone_count_; ++i) {
    if (distance(i, i + 1) != 1.0)
      throw InvalidArgument("backbone step " + std::to_string(i) + " is not a unit step");
  }
  if (backbone_count_ > 0) {
    for (double c : point(0))
      if (c != 0.0) throw InvalidArgument("backbone does not start at the origin");
    for (double c : point(backbone_count_ - 1))
      if (c != n_side) throw InvalidArgument("backbone does not end at (N,...,N)");
  }
}

std::vector<std::int64_t> build_backbone(int d, std::int64_t N) {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  if (N < 1) throw InvalidArgument("N must be >= 1");
  if (d >= 2 && N % 2 != 0)
    throw ParityError("no unit-step Hamiltonian path from 0 to (N,...,N) exists "
                      "for d >= 2 and odd N");
  const std::int64_t side = N + 1;
  // slab[k] = side^k: number of points in a k-dimensional sub-slice.
  std::vector<std::int64_t> slab(static_cast<std::size_t>(d) + 1, 1);
  for (int k = 1; k <= d; ++k) slab[k] = slab[k - 1] * side;

  std::vector<std::int64_t> out(static_cast<std::size_t>(slab[d] * d));
  for (std::int64_t t = 0; t < slab[d]; ++t) {
    // Peel coordinates from the top: an odd top coordinate traverses the
    // lower-dimensional snake backwards.
    std::int64_t rank = t;
    for (int k = d - 1; k >= 0; --k) {
      const std::int64_t coord = rank / slab[k];
      rank %= slab[k];
      if (coord % 2 != 0) rank = slab[k] - 1 - rank;
      out[static_cast<std::size_t>(t * d + k)] = coord;
    }
  }
  return out;
}

std::vector<double> sample_poisson_points(const ModelParams& params,
                                          StreamKey key) {
  CounterStream stream(key, StreamTag::kPoissonPoints);
  std::poisson_distribution<long long> count_dist(params.rho * params.volume());
  const long long count = count_dist(stream);
  const auto n_side = static_cast<double>(params.N);
  std::vector<double> out(static_cast<std::size_t>(count) * params.d);
  for (double& c : out) c = stream.uniform() * n_side;
  return out;
}

PointCloud assemble_vertex_set(const ModelParams& params,
                               std::span<const double> poisson_points) {
  params.validate();
  PointCloud cloud(params.d, params.N);
  const auto lattice = build_backbone(params.d, params.N);
  std::vector<double> x(static_cast<std::size_t>(params.d));
  for (std::size_t i = 0; i < lattice.size(); i += x.size()) {
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = static_cast<double>(lattice[i + k]);
    cloud.add_backbone(x);
  }
  for (std::size_t i = 0; i < poisson_points.size(); i += x.size())
    cloud.add_poisson(poisson_points.subspan(i, x.size()));
  return cloud;
}

PointCloud assemble_vertex_set(const ModelParams& params, StreamKey key) {
  params.validate();
  const auto points = sample_poisson_points(params, key);
  return assemble_vertex_set(params, points);
}

}  // namespace lrp
