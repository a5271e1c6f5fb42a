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

#include <cmath>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "lrp/edges.hpp"
#include "lrp/error.hpp"
#include "lrp/graph.hpp"
#include "lrp/model.hpp"

namespace lrp::cli {
namespace {

struct CheckFailure {
  std::string reason;
};

void expect(bool condition, const std::string& reason) {
  if (!condition) throw CheckFailure{reason};
}

void check_backbone() {
  for (int d = 1; d <= 3; ++d) {
    for (std::int64_t N : {2, 4, 6}) {
      ModelParams params;
      params.d = d;
      params.N = N;
      const PointCloud cloud = assemble_vertex_set(params, std::span<const double>{});
      try {
        cloud.validate();
      } catch (const Error& e) {
        throw CheckFailure{"d=" + std::to_string(d) + " N=" + std::to_string(N) + ": " + e.what()};
      }
      expect(cloud.backbone_count() == params.backbone_count(), "backbone length != (N+1)^d");
    }
  }
}

void check_connection_function() {
  ModelParams params;
  params.beta = 1.0;
  params.s = 2.0;
  double previous = 1.0;
  for (double r = 0.0; r < 50.0; r += 0.25) {
    const double g = connection_probability(r, params);
    expect(g >= 0.0 && g <= 1.0, "g outside [0,1]");
    expect(g <= previous, "g not monotone");
    previous = g;
  }
  const double tail = connection_probability(1e3, params) * 1e6;
  expect(std::abs(tail - 1.0) < 0.01, "g(r) r^s does not approach beta");
}

void check_sampler_marginals() {
  ModelParams params;
  params.d = 1;
  params.N = 4;
  params.rho = 1.5;
  params.s = 2.0;
  params.beta = 1.0;
  params.seed = 11;
  const PointCloud cloud = assemble_vertex_set(params, trial_key(params.seed, 4, 0));
  const std::size_t n = cloud.size();
  const int seeds = 10000;
  std::vector<double> naive(n * n, 0.0), grid(n * n, 0.0);
  for (int t = 0; t < seeds; ++t) {
    const StreamKey key = trial_key(params.seed, 4, 1000 + t);
    for (const auto& [u, v] : sample_edges_naive(cloud, params, key).pairs) naive[u * n + v] += 1;
    for (const auto& [u, v] : sample_edges_grid(cloud, params, key).pairs) grid[u * n + v] += 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double p = cloud.is_path_pair(i, j) ? 1.0 : connection_probability(cloud.distance(i, j), params);
      const double sigma = std::sqrt(p * (1.0 - p) / seeds);
      const double tol = 4.5 * sigma + 1e-12;
      expect(std::abs(naive[i * n + j] / seeds - p) <= tol,
             "naive sampler marginal off at pair " + std::to_string(i) + "," + std::to_string(j));
      expect(std::abs(grid[i * n + j] / seeds - p) <= tol,
             "grid sampler marginal off at pair " + std::to_string(i) + "," + std::to_string(j));
    }
  }
}

void check_graph_and_diameter(const std::string& fault) {
  const double exponents[] = {1.0, 1.5, 2.0, 3.0};
  for (int instance = 0; instance < 20; ++instance) {
    ModelParams params;
    params.d = instance % 2 == 0 ? 1 : 2;
    params.N = params.d == 1 ? 24 : 8;
    params.s = exponents[instance % 4] * params.d;
    params.beta = 1.0;
    params.seed = 5;
    const StreamKey key = trial_key(params.seed, static_cast<std::uint64_t>(params.N), instance);
    auto cloud = std::make_shared<const PointCloud>(assemble_vertex_set(params, key));
    Graph graph(cloud, sample_edges_grid(*cloud, params, key));
    if (instance == 0 && fault == "adjacency") {
      auto& raw = graph.raw_neighbors_for_testing();
      if (!raw.empty()) raw.front() = raw.front() == 1 ? 2 : 1;
    }
    try {
      graph.validate();
    } catch (const Error& e) {
      throw CheckFailure{std::string("graph adjacency invariant: ") + e.what()};
    }
    const auto cluster = component_of_origin(graph);
    const auto exact = diameter_exact(graph, cluster);
    const auto fast = diameter_ifub(graph, cluster);
    expect(exact.diameter == fast.diameter,
           "iFub diameter " + std::to_string(fast.diameter) + " != exact " +
               std::to_string(exact.diameter) + " on instance " + std::to_string(instance));
    expect(exact.diameter >= exact.origin_corner_distance, "diameter < origin-corner distance");
  }
}

}  // namespace

int selftest(std::ostream& out, std::ostream& err, const std::string& fault) {
  if (!fault.empty() && fault != "adjacency") {
    err << "error: invalid-argument: unknown fault '" << fault << "'\n";
    return kInvalidInput;
  }
  const std::vector<std::pair<std::string, std::function<void()>>> checks = {
      {"backbone", check_backbone},
      {"connection_function", check_connection_function},
      {"sampler_marginals", check_sampler_marginals},
      {"diameter_ifub_vs_exact", [&] { check_graph_and_diameter(fault); }},
  };
  for (const auto& [name, check] : checks) {
    try {
      check();
    } catch (const CheckFailure& failure) {
      err << "error: selftest: " << name << ": " << failure.reason << '\n';
      return kCheckFailed;
    } catch (const std::exception& e) {
      err << "error: selftest: " << name << ": " << e.what() << '\n';
      return kCheckFailed;
    }
    out << "ok " << name << '\n';
  }
  return kOk;
}

}  // namespace lrp::cli
