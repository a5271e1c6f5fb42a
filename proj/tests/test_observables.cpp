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

#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "lrp/error.hpp"
#include "lrp/observables.hpp"
#include "support.hpp"

using namespace lrp;
using lrp::test::cloud_with;
using lrp::test::graph_with;
using lrp::test::params;
using lrp::test::sample_graph;

namespace {

std::vector<LengthBand> unit_bands(int count) {
  std::vector<LengthBand> out;
  for (int k = 0; k < count; ++k) out.push_back({static_cast<double>(k), k + 1.0});
  return out;
}

}  // namespace

TEST_CASE("histogram examples") {
  const Graph empty = sample_graph(params(1, 32, 2.0, 0.0, 2.0), 0);
  const auto h0 = edge_length_histogram(empty, geometric_bands(32.0));
  CHECK(h0.total() == 0);
  CHECK(std::all_of(h0.poisson_only_counts.begin(), h0.poisson_only_counts.end(),
                    [](std::size_t c) { return c == 0; }));

  const Graph one = graph_with(cloud_with(1, 4, {0.5, 3.0}), {{5, 6}});
  const auto h1 = edge_length_histogram(one, unit_bands(4));
  CHECK(h1.counts == std::vector<std::size_t>{0, 0, 1, 0});
  CHECK(h1.poisson_only_counts == std::vector<std::size_t>{0, 0, 1, 0});

  const Graph mixed = graph_with(cloud_with(1, 4, {0.5}), {{0, 3}, {1, 5}});
  const auto h2 = edge_length_histogram(mixed, unit_bands(4));
  CHECK(h2.counts == std::vector<std::size_t>{1, 0, 1, 0});
  CHECK(h2.poisson_only_counts == std::vector<std::size_t>{0, 0, 0, 0});
}

TEST_CASE("histogram conserves the non-path edge count") {
  for (auto [d, N, s] : {std::tuple{1, 128, 1.5}, std::tuple{2, 8, 3.0}}) {
    for (std::uint64_t t = 0; t < 5; ++t) {
      const Graph g = sample_graph(params(d, N, s, 1.0, 1.5), t);
      const auto h = edge_length_histogram(g, geometric_bands(static_cast<double>(d * N)));
      CHECK(h.total() == g.edge_count() - (g.cloud()->backbone_count() - 1));
      for (std::size_t b = 0; b < h.counts.size(); ++b)
        CHECK(h.poisson_only_counts[b] <= h.counts[b]);
    }
  }
}

TEST_CASE("band counts match the Monte Carlo integral (d=1, N=256, s=2, band (32,64])") {
  const ModelParams p = params(1, 256, 2.0, 1.0, 1.0, 8);
  const std::vector<LengthBand> bands{{32.0, 64.0}};
  const int trials = 200;
  double sum = 0.0, sum_sq = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto h = edge_length_histogram(sample_graph(p, static_cast<std::uint64_t>(t)), bands);
    const auto m = static_cast<double>(h.poisson_only_counts[0]);
    sum += m;
    sum_sq += m * m;
  }
  const double mean = sum / trials;
  const double se_emp = std::sqrt((sum_sq / trials - mean * mean) / (trials - 1));
  const Estimate mc = expected_edge_count_by_band(p, bands).front();
  CHECK(std::abs(mean - mc.value) <= 3.0 * std::hypot(se_emp, mc.stderr_));
}

TEST_CASE("band counts respect c N k^(d-s) with c fixed at the smallest N") {
  const double s = 2.0;
  auto band_means = [&](std::int64_t N, int trials) {
    const auto bands = geometric_bands(static_cast<double>(N));
    std::vector<double> sum(bands.size(), 0.0), sum_sq(bands.size(), 0.0);
    for (int t = 0; t < trials; ++t) {
      const auto h = edge_length_histogram(
          sample_graph(params(1, N, s, 1.0, 1.0, 31), static_cast<std::uint64_t>(t)), bands);
      for (std::size_t b = 0; b < bands.size(); ++b) {
        sum[b] += static_cast<double>(h.counts[b]);
        sum_sq[b] += static_cast<double>(h.counts[b] * h.counts[b]);
      }
    }
    std::vector<std::pair<double, double>> out;
    for (std::size_t b = 0; b < bands.size(); ++b) {
      const double mean = sum[b] / trials;
      out.emplace_back(mean, std::sqrt(std::max(0.0, sum_sq[b] / trials - mean * mean) / trials));
    }
    return std::pair{bands, out};
  };
  const auto [small_bands, small] = band_means(256, 50);
  // c is itself an estimate, so its standard error joins the tolerance.
  double c = 0.0, c_se = 0.0;
  for (std::size_t b = 0; b < small.size(); ++b) {
    const double scale = 256.0 * std::pow(small_bands[b].upper, 1.0 - s);
    if (small[b].first / scale > c) {
      c = small[b].first / scale;
      c_se = small[b].second / scale;
    }
  }
  const auto [large_bands, large] = band_means(1024, 50);
  for (std::size_t b = 0; b < large.size(); ++b) {
    const double scale = 1024.0 * std::pow(large_bands[b].upper, 1.0 - s);
    INFO("band (", large_bands[b].lower, ", ", large_bands[b].upper, "]");
    CHECK(large[b].first <= c * scale + 3.0 * std::hypot(large[b].second, c_se * scale));
  }
}

TEST_CASE("cut interval examples") {
  const Graph bare = sample_graph(params(1, 12, 3.0, 0.0, 2.0), 0);
  CHECK(count_cut_intervals(bare, 1) == 12);
  CHECK(count_cut_intervals(bare, 3) == 4);
  CHECK_THROWS_AS(count_cut_intervals(bare, 5), InvalidArgument);
  CHECK_THROWS_AS(count_cut_intervals(bare, 0), InvalidArgument);

  auto cloud = cloud_with(1, 12, {});
  CHECK(count_cut_intervals(graph_with(cloud, {{0, 12}}), 1) == 0);
  CHECK(count_cut_intervals(graph_with(cloud, {{0, 3}}), 1) == 9);
  CHECK(count_cut_intervals(graph_with(cloud, {{0, 3}}), 3) == 3);
  CHECK(count_cut_intervals(graph_with(cloud, {{0, 2}}), 3) == 4);

  const Graph plane = sample_graph(params(2, 4, 5.0), 0);
  CHECK_THROWS_AS(count_cut_intervals(plane, 1), InvalidArgument);
  CHECK_THROWS_AS(count_isolated_intervals(plane, 1), InvalidArgument);
  CHECK_THROWS_AS(count_local_cut_intervals(plane, 0.0, 4.0, 1.0), InvalidArgument);
}

TEST_CASE("cut interval count is antitone in beta") {
  for (std::uint64_t t = 0; t < 20; ++t) {
    ModelParams p = params(1, 64, 2.0, 0.1);
    const StreamKey key = trial_key(p.seed, 64, t);
    auto cloud = std::make_shared<const PointCloud>(assemble_vertex_set(p, key));
    std::size_t previous = count_cut_intervals(Graph(cloud, sample_edges_naive(*cloud, p, key)), 1);
    for (double beta : {0.3, 1.0, 3.0}) {
      p.beta = beta;
      const std::size_t next = count_cut_intervals(Graph(cloud, sample_edges_naive(*cloud, p, key)), 1);
      CHECK(next <= previous);
      previous = next;
    }
  }
}

TEST_CASE("isolated interval examples") {
  const Graph bare = sample_graph(params(1, 12, 3.0, 0.0, 2.0), 0);
  CHECK(count_isolated_intervals(bare, 1) == 12);
  CHECK(count_isolated_intervals(bare, 4) == 3);

  auto cloud = cloud_with(1, 6, {0.5, 1.5});
  CHECK(count_isolated_intervals(graph_with(cloud, {{0, 3}, {1, 4}, {2, 5}, {3, 6}}), 1) == 0);
  CHECK(count_isolated_intervals(graph_with(cloud, {{7, 8}}), 1) == 6);
  CHECK(count_isolated_intervals(graph_with(cloud, {{7, 3}}), 1) == 4);
}

TEST_CASE("local cut interval examples") {
  const Graph bare = sample_graph(params(1, 12, 3.0, 0.0, 2.0), 0);
  CHECK(count_local_cut_intervals(bare, 0.0, 12.0, 1.0) == 12);
  CHECK(count_local_cut_intervals(bare, 4.0, 8.0, 2.0) == 2);
  CHECK_THROWS_AS(count_local_cut_intervals(bare, 4.0, 8.0, 3.0), InvalidArgument);

  auto cloud = cloud_with(1, 12, {});
  CHECK(count_local_cut_intervals(graph_with(cloud, {{4, 8}}), 4.0, 8.0, 1.0) == 0);
  CHECK(count_local_cut_intervals(graph_with(cloud, {{3, 8}}), 4.0, 8.0, 1.0) == 4);
  CHECK(count_local_cut_intervals(graph_with(cloud, {{4, 6}}), 4.0, 8.0, 1.0) == 2);
}

TEST_CASE("local cut count over [0,N] equals the cut count") {
  for (double s : {1.5, 2.0, 3.0}) {
    for (std::uint64_t t = 0; t < 10; ++t) {
      const Graph g = sample_graph(params(1, 64, s), t);
      CHECK(count_local_cut_intervals(g, 0.0, 64.0, 1.0) == count_cut_intervals(g, 1));
    }
  }
}

TEST_CASE("interval report") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    const Graph g = sample_graph(params(1, 64, 2.0), t);
    const IntervalReport rep = interval_report(g, 4);
    CHECK(rep.interval_length == 4);
    CHECK(rep.interval_count == 16);
    CHECK(rep.isolated_count <= rep.interval_count);
    CHECK(rep.cut_count == count_cut_intervals(g, 4));
    REQUIRE(rep.local_cut_counts.size() == 16);
    for (std::size_t j = 0; j < 16; ++j) {
      CHECK(rep.local_cut_counts[j] <= 4);
      const double lo = 4.0 * static_cast<double>(j);
      CHECK(rep.local_cut_counts[j] == count_local_cut_intervals(g, lo, lo + 4.0, 1.0));
    }
  }
}

TEST_CASE("subcube connection indicator") {
  const std::vector<int> first{0}, last{2}, middle{1};
  const Graph bare = sample_graph(params(1, 9, 3.0, 0.0, 2.0), 0);
  CHECK_FALSE(subcube_connection_indicator(bare, third_subcube(1, 9, first), third_subcube(1, 9, last)));
  CHECK(subcube_connection_indicator(bare, third_subcube(1, 9, first), third_subcube(1, 9, middle)));

  auto cloud = cloud_with(1, 9, {});
  const Graph linked = graph_with(cloud, {{1, 7}});
  CHECK(subcube_connection_indicator(linked, third_subcube(1, 9, first), third_subcube(1, 9, last)));

  for (std::uint64_t t = 0; t < 20; ++t) {
    const Graph g = sample_graph(params(2, 6, 3.0), t);
    const std::vector<int> a{0, 0}, b{2, 2}, c{2, 0};
    const SubBox A = third_subcube(2, 6, a), B = third_subcube(2, 6, b), C = third_subcube(2, 6, c);
    CHECK(subcube_connection_indicator(g, A, B) == subcube_connection_indicator(g, B, A));
    CHECK(subcube_connection_indicator(g, A, C) == subcube_connection_indicator(g, C, A));
  }
}

TEST_CASE("sub-boxes are half-open except at the far face") {
  const std::vector<int> d0{0}, d1{1}, d2{2};
  const SubBox b0 = third_subcube(1, 9, d0), b1 = third_subcube(1, 9, d1), b2 = third_subcube(1, 9, d2);
  for (double x : {0.0, 2.999, 3.0, 5.5, 6.0, 8.2, 9.0}) {
    const double pt[] = {x};
    CHECK(int(b0.contains(pt, 9.0)) + int(b1.contains(pt, 9.0)) + int(b2.contains(pt, 9.0)) == 1);
  }
  const double three[] = {3.0}, nine[] = {9.0};
  CHECK(b1.contains(three, 9.0));
  CHECK(b2.contains(nine, 9.0));
  const std::vector<int> bad{3};
  CHECK_THROWS_AS(third_subcube(1, 9, bad), InvalidArgument);
}

TEST_CASE("subcube connection probability stays bounded below (d=1, s=2)") {
  const std::vector<int> first{0}, last{2};
  auto frequency = [&](std::int64_t N) {
    const int trials = 300;
    int hits = 0;
    const SubBox a = third_subcube(1, N, first), b = third_subcube(1, N, last);
    for (int t = 0; t < trials; ++t)
      hits += subcube_connection_indicator(sample_graph(params(1, N, 2.0, 1.0, 1.0, 3), t), a, b);
    return static_cast<double>(hits) / trials;
  };
  const double p243 = frequency(243), p729 = frequency(729);
  const double lower729 = p729 - 1.96 * std::sqrt(p729 * (1.0 - p729) / 300.0);
  CHECK(p243 > 0.0);
  CHECK(lower729 >= 0.5 * p243);
}

TEST_CASE("renormalization splits") {
  auto oracle = [](double N, double alpha, int m) {
    std::vector<int> out;
    double side = N;
    for (int r = 1; r <= m; ++r) {
      const int k = std::max(2, static_cast<int>(std::ceil(side / std::pow(N, std::pow(alpha, r)) - 1e-9)));
      out.push_back(k);
      side /= k;
    }
    return out;
  };
  CHECK(renorm_splits(4096, 0.9, 2) == std::vector<int>{3, 2});
  for (std::int64_t N : {64, 512, 4096})
    for (double alpha : {0.5, 0.8, 0.9})
      CHECK(renorm_splits(N, alpha, 3) == oracle(static_cast<double>(N), alpha, 3));
  CHECK_THROWS_AS(renorm_splits(64, 1.0, 2), InvalidArgument);
  CHECK_THROWS_AS(renorm_splits(64, 0.5, 0), InvalidArgument);
}

TEST_CASE("renormalization events on hand-built graphs") {
  auto cloud = cloud_with(1, 8, {});
  const std::vector<int> one{2}, two{2, 2};
  CHECK(renorm_events(graph_with(cloud, {}), one) == std::vector<bool>{true});
  CHECK(renorm_events(graph_with(cloud, {{1, 5}}), one) == std::vector<bool>{false});
  CHECK(renorm_events(graph_with(cloud, {{1, 5}}), two) == std::vector<bool>{false, true});
  CHECK(renorm_events(graph_with(cloud, {{1, 5}, {0, 3}, {4, 7}}), two) ==
        std::vector<bool>{false, false});
}

TEST_CASE("renormalization event frequency examples") {
  const auto none = renorm_event_frequency(params(1, 64, 1.5, 0.0), 0.9, 2, 20);
  CHECK(none.per_level.front() == 1.0);
  CHECK(none.union_frequency == 1.0);
  CHECK(none.trials == 20);
  const auto dense = renorm_event_frequency(params(1, 16, 1.5, 1000.0), 0.9, 2, 20);
  for (double f : dense.per_level) CHECK(f <= 0.05);
  CHECK_THROWS_AS(renorm_event_frequency(params(1, 64, 2.0), 0.9, 2, 10), InvalidArgument);
  CHECK_THROWS_AS(renorm_event_frequency(params(1, 64, 1.5), 1.0, 2, 10), InvalidArgument);
}

TEST_CASE("renormalization events become rarer with N (d=1, s=1.5)") {
  const auto small = renorm_event_frequency(params(1, 512, 1.5, 1.0, 1.0, 6), 0.9, 2, 200);
  const auto large = renorm_event_frequency(params(1, 4096, 1.5, 1.0, 1.0, 6), 0.9, 2, 200);
  CHECK(large.union_frequency <= small.union_frequency);
}

TEST_CASE("degree statistics") {
  const Graph bare = sample_graph(params(1, 32, 2.0, 0.0, 2.0), 0);
  const DegreeStats b = degree_stats(bare);
  CHECK(b.poisson_vertices > 0);
  CHECK(b.poisson_mean == 0.0);
  CHECK(b.mean_random == 0.0);
  CHECK(b.max == 2);

  const DegreeStats k = degree_stats(lrp::test::complete_graph(7));
  CHECK(k.mean == 6.0);
  CHECK(k.max == 6);
  CHECK(k.mean_random == 6.0);

  for (std::uint64_t t = 0; t < 5; ++t) {
    const Graph g = sample_graph(params(1, 64, 1.5), t);
    const DegreeStats s = degree_stats(g);
    CHECK(s.mean * static_cast<double>(g.size()) == doctest::Approx(2.0 * g.edge_count()));
    CHECK(s.mean_random <= s.mean);
    CHECK(s.max_random <= s.max);
  }
}
