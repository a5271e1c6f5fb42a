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

#include "lrp/observables.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "lrp/error.hpp"

namespace lrp {
namespace {

const PointCloud& require_cloud(const Graph& graph) {
  if (!graph.cloud()) throw InvalidArgument("observable requires vertex coordinates");
  return *graph.cloud();
}

const PointCloud& require_line(const Graph& graph) {
  const PointCloud& cloud = require_cloud(graph);
  if (cloud.dimension() != 1)
    throw InvalidArgument("interval observables are defined for d = 1 only, got d = " +
                          std::to_string(cloud.dimension()));
  return cloud;
}

std::size_t interval_count(const PointCloud& cloud, std::int64_t a) {
  if (a < 1 || cloud.box_side() % a != 0)
    throw InvalidArgument("interval length " + std::to_string(a) +
                          " must be a positive divisor of N = " +
                          std::to_string(cloud.box_side()));
  return static_cast<std::size_t>(cloud.box_side() / a);
}

// Ordered endpoint coordinates (left <= right) of a 1-d edge.
std::pair<double, double> span_of(const PointCloud& cloud, const Edge& e) {
  const double x = cloud.point(e.first)[0];
  const double y = cloud.point(e.second)[0];
  return std::minmax(x, y);
}

}  // namespace

std::size_t EdgeLengthHistogram::total() const noexcept {
  std::size_t sum = 0;
  for (auto c : counts) sum += c;
  return sum;
}

EdgeLengthHistogram edge_length_histogram(const Graph& graph,
                                          const std::vector<LengthBand>& bands) {
  const PointCloud& cloud = require_cloud(graph);
  EdgeLengthHistogram hist;
  hist.bands = bands;
  hist.counts.assign(bands.size(), 0);
  hist.poisson_only_counts.assign(bands.size(), 0);
  for (const auto& e : graph.edges()) {
    if (cloud.is_path_pair(e.first, e.second)) continue;
    const double r = cloud.distance(e.first, e.second);
    for (std::size_t b = 0; b < bands.size(); ++b) {
      if (bands[b].contains(r) || (r == 0.0 && bands[b].lower == 0.0)) {
        ++hist.counts[b];
        if (!cloud.role(e.first).is_backbone() && !cloud.role(e.second).is_backbone())
          ++hist.poisson_only_counts[b];
        break;
      }
    }
  }
  return hist;
}

std::size_t count_cut_intervals(const Graph& graph, std::int64_t a) {
  const PointCloud& cloud = require_line(graph);
  const std::size_t count = interval_count(cloud, a);
  const auto len = static_cast<double>(a);
  // killed[j] accumulates, via a difference array, the edges crossing interval j.
  std::vector<long long> killed(count + 1, 0);
  for (const auto& e : graph.edges()) {
    const auto [u, v] = span_of(cloud, e);
    if (v - u <= 1.0) continue;
    // j crossed iff u <= j a and (j + 1) a <= v.
    const auto first = static_cast<long long>(std::ceil(u / len));
    const auto last = static_cast<long long>(std::floor(v / len)) - 1;
    if (first > last) continue;
    ++killed[static_cast<std::size_t>(first)];
    --killed[static_cast<std::size_t>(last) + 1];
  }
  std::size_t cut = 0;
  long long running = 0;
  for (std::size_t j = 0; j < count; ++j) {
    running += killed[j];
    if (running == 0) ++cut;
  }
  return cut;
}

std::size_t count_isolated_intervals(const Graph& graph, std::int64_t a) {
  const PointCloud& cloud = require_line(graph);
  const std::size_t count = interval_count(cloud, a);
  const auto len = static_cast<double>(a);
  auto interval_of = [&](double x) {
    return std::min(static_cast<std::size_t>(x / len), count - 1);
  };
  std::vector<char> reaches_far(count, 0);
  for (const auto& e : graph.edges()) {
    if (cloud.is_path_pair(e.first, e.second)) continue;
    const auto [u, v] = span_of(cloud, e);
    const std::size_t iu = interval_of(u);
    const std::size_t iv = interval_of(v);
    if (iv >= iu + 2) reaches_far[iu] = reaches_far[iv] = 1;
  }
  return static_cast<std::size_t>(std::count(reaches_far.begin(), reaches_far.end(), 0));
}

std::size_t count_local_cut_intervals(const Graph& graph, double lower,
                                      double upper, double a) {
  const PointCloud& cloud = require_line(graph);
  if (!(a > 0.0) || !(upper > lower))
    throw InvalidArgument("local cut intervals need a > 0 and a nonempty parent");
  const double ratio = (upper - lower) / a;
  const auto count = static_cast<std::size_t>(std::llround(ratio));
  if (count == 0 || std::abs(ratio - static_cast<double>(count)) > 1e-9 * ratio)
    throw InvalidArgument("sub-interval length must divide the parent interval");
  std::vector<long long> killed(count + 1, 0);
  for (const auto& e : graph.edges()) {
    const auto [u, v] = span_of(cloud, e);
    if (u < lower || v > upper || v - u <= 1.0) continue;
    // J_k = [lower + k a, lower + (k + 1) a] crossed iff u <= inf J_k and sup J_k <= v.
    const auto first = static_cast<long long>(std::ceil((u - lower) / a));
    const auto last = static_cast<long long>(std::floor((v - lower) / a)) - 1;
    if (first > last) continue;
    ++killed[static_cast<std::size_t>(first)];
    --killed[static_cast<std::size_t>(last) + 1];
  }
  std::size_t cut = 0;
  long long running = 0;
  for (std::size_t k = 0; k < count; ++k) {
    running += killed[k];
    if (running == 0) ++cut;
  }
  return cut;
}

IntervalReport interval_report(const Graph& graph, std::int64_t a) {
  const PointCloud& cloud = require_line(graph);
  IntervalReport report;
  report.interval_length = a;
  report.interval_count = interval_count(cloud, a);
  report.cut_count = count_cut_intervals(graph, a);
  report.isolated_count = count_isolated_intervals(graph, a);
  report.local_cut_counts.reserve(report.interval_count);
  for (std::size_t j = 0; j < report.interval_count; ++j) {
    const double lower = static_cast<double>(j) * static_cast<double>(a);
    report.local_cut_counts.push_back(
        count_local_cut_intervals(graph, lower, lower + static_cast<double>(a), 1.0));
  }
  return report;
}

bool SubBox::contains(std::span<const double> x, double box_side) const noexcept {
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] < lo[k]) return false;
    if (x[k] >= hi[k] && !(x[k] == hi[k] && hi[k] == box_side)) return false;
  }
  return true;
}

bool subcube_connection_indicator(const Graph& graph, const SubBox& first,
                                  const SubBox& second) {
  const PointCloud& cloud = require_cloud(graph);
  const auto d = static_cast<std::size_t>(cloud.dimension());
  if (first.lo.size() != d || first.hi.size() != d || second.lo.size() != d ||
      second.hi.size() != d)
    throw InvalidArgument("sub-box dimension does not match the graph");
  const auto side = static_cast<double>(cloud.box_side());
  std::vector<char> in_first(cloud.size()), in_second(cloud.size());
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    in_first[i] = first.contains(cloud.point(i), side);
    in_second[i] = second.contains(cloud.point(i), side);
  }
  for (const auto& [u, v] : graph.edges()) {
    if ((in_first[u] && in_second[v]) || (in_first[v] && in_second[u])) return true;
  }
  return false;
}

SubBox third_subcube(int d, std::int64_t N, std::span<const int> digits) {
  if (digits.size() != static_cast<std::size_t>(d))
    throw InvalidArgument("need one digit per axis");
  SubBox box;
  const double third = static_cast<double>(N) / 3.0;
  for (int digit : digits) {
    if (digit < 0 || digit > 2) throw InvalidArgument("subcube digit must be 0, 1 or 2");
    box.lo.push_back(digit * third);
    box.hi.push_back(digit == 2 ? static_cast<double>(N) : (digit + 1) * third);
  }
  return box;
}

std::vector<int> renorm_splits(std::int64_t N, double alpha, int m) {
  if (m < 1) throw InvalidArgument("renormalization depth m must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw InvalidArgument("alpha must lie in (0, 1)");
  std::vector<int> splits;
  double side = static_cast<double>(N);
  const double log_n = std::log(static_cast<double>(N));
  for (int r = 1; r <= m; ++r) {
    const double nominal = std::exp(std::pow(alpha, r) * log_n);
    const int k = std::max(2, static_cast<int>(std::ceil(side / nominal - 1e-9)));
    splits.push_back(k);
    side /= k;
  }
  return splits;
}

std::vector<bool> renorm_events(const Graph& graph, std::span<const int> splits) {
  const PointCloud& cloud = require_cloud(graph);
  const int d = cloud.dimension();
  const auto side = static_cast<double>(cloud.box_side());
  std::vector<bool> events;
  const auto edges = graph.edges();
  std::uint64_t per_axis = 1;
  for (int k : splits) {
    const std::uint64_t parent_axis = per_axis;
    per_axis *= static_cast<std::uint64_t>(k);
    const double cell = side / static_cast<double>(per_axis);
    auto linear = [&](std::span<const double> x, std::uint64_t divisor) {
      std::uint64_t index = 0;
      for (int a = d - 1; a >= 0; --a) {
        auto c = static_cast<std::uint64_t>(x[a] / cell);
        c = std::min(c, per_axis - 1) / divisor;
        index = index * (per_axis / divisor) + c;
      }
      return index;
    };
    std::uint64_t children = 1;
    for (int a = 0; a < d; ++a) children *= static_cast<std::uint64_t>(k);
    const std::uint64_t needed = children * (children - 1) / 2;

    std::unordered_set<std::uint64_t> seen;
    std::unordered_map<std::uint64_t, std::uint64_t> linked;
    const std::uint64_t cells = [&] {
      std::uint64_t c = 1;
      for (int a = 0; a < d; ++a) c *= per_axis;
      return c;
    }();
    for (const auto& [u, v] : edges) {
      if (cloud.is_path_pair(u, v)) continue;
      const auto pu = linear(cloud.point(u), static_cast<std::uint64_t>(k));
      const auto pv = linear(cloud.point(v), static_cast<std::uint64_t>(k));
      if (pu != pv) continue;
      auto cu = linear(cloud.point(u), 1);
      auto cv = linear(cloud.point(v), 1);
      if (cu == cv) continue;
      if (cu > cv) std::swap(cu, cv);
      if (seen.insert(cu * cells + cv).second) ++linked[pu];
    }
    std::uint64_t parents = 1;
    for (int a = 0; a < d; ++a) parents *= parent_axis;
    bool event = linked.size() < parents;
    for (const auto& [parent, count] : linked)
      if (count < needed) event = true;
    events.push_back(event);
  }
  return events;
}

RenormFrequencies renorm_event_frequency(const ModelParams& params, double alpha,
                                         int m, std::size_t trials) {
  params.validate();
  if (!(alpha < 1.0)) throw InvalidArgument("alpha must be < 1");
  if (!(2.0 * params.d * alpha > params.s))
    throw InvalidArgument("renormalization requires 2 d alpha > s");
  if (trials == 0) throw InvalidArgument("trials must be >= 1");
  RenormFrequencies out;
  out.splits = renorm_splits(params.N, alpha, m);
  out.per_level.assign(static_cast<std::size_t>(m), 0.0);
  out.trials = trials;
  std::size_t any = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const StreamKey key = trial_key(params.seed, static_cast<std::uint64_t>(params.N), t);
    auto cloud = std::make_shared<const PointCloud>(assemble_vertex_set(params, key));
    const Graph graph(cloud, sample_edges_grid(*cloud, params, key));
    const auto events = renorm_events(graph, out.splits);
    bool hit = false;
    for (std::size_t r = 0; r < events.size(); ++r) {
      if (events[r]) {
        out.per_level[r] += 1.0;
        hit = true;
      }
    }
    if (hit) ++any;
  }
  for (double& f : out.per_level) f /= static_cast<double>(trials);
  out.union_frequency = static_cast<double>(any) / static_cast<double>(trials);
  return out;
}

DegreeStats degree_stats(const Graph& graph) {
  DegreeStats stats;
  if (graph.size() == 0) return stats;
  const PointCloud* cloud = graph.cloud();
  std::size_t total = 0, total_random = 0, poisson_total = 0;
  for (VertexId v = 0; v < graph.size(); ++v) {
    const std::size_t deg = graph.degree(v);
    std::size_t path = 0;
    if (cloud) {
      for (VertexId w : graph.neighbors(v))
        if (cloud->is_path_pair(v, w)) ++path;
    }
    const std::size_t random = deg - path;
    total += deg;
    total_random += random;
    stats.max = std::max(stats.max, deg);
    stats.max_random = std::max(stats.max_random, random);
    if (cloud && !cloud->role(v).is_backbone()) {
      poisson_total += deg;
      ++stats.poisson_vertices;
    }
  }
  const auto n = static_cast<double>(graph.size());
  stats.mean = static_cast<double>(total) / n;
  stats.mean_random = static_cast<double>(total_random) / n;
  if (stats.poisson_vertices > 0)
    stats.poisson_mean = static_cast<double>(poisson_total) /
                         static_cast<double>(stats.poisson_vertices);
  return stats;
}

}  // namespace lrp
