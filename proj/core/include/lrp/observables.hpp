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
#include <vector>

#include "lrp/edges.hpp"
#include "lrp/graph.hpp"
#include "lrp/model.hpp"

namespace lrp {

/// Counts of non-path edges per length band.
struct EdgeLengthHistogram {
  std::vector<LengthBand> bands;
  std::vector<std::size_t> counts;
  std::vector<std::size_t> poisson_only_counts;  ///< both endpoints Poisson

  std::size_t total() const noexcept;
};

/// Bands must be disjoint and cover (0, dN]; edges of length 0 go to the
/// band whose lower end is 0.
EdgeLengthHistogram edge_length_histogram(const Graph& graph,
                                          const std::vector<LengthBand>& bands);

// One-dimensional interval observables. The box [0, N] is cut into intervals
// [j a, (j + 1) a]; `a` must be a positive integer dividing N.

/// Intervals [a_j, b_j] with no edge of length > 1 joining [0, a_j] to [b_j, N].
std::size_t count_cut_intervals(const Graph& graph, std::int64_t a);

/// Intervals whose random (non-path) edges all stay within the interval or
/// its two neighbours.
std::size_t count_isolated_intervals(const Graph& graph, std::int64_t a);

/// Sub-intervals J of length a of [lower, upper] with no edge (u, v) of
/// length > 1 such that lower <= u <= inf J and sup J <= v <= upper.
std::size_t count_local_cut_intervals(const Graph& graph, double lower,
                                      double upper, double a);

struct IntervalReport {
  std::int64_t interval_length = 0;
  std::size_t interval_count = 0;
  std::size_t cut_count = 0;
  std::size_t isolated_count = 0;
  std::vector<std::size_t> local_cut_counts;  ///< per parent interval of length a
};

/// Cut and isolated counts at length `a`, plus local cut counts of unit
/// sub-intervals inside each parent interval.
IntervalReport interval_report(const Graph& graph, std::int64_t a);

/// Axis-aligned box. Membership is half-open [lo, hi) per axis, closed at
/// hi when hi equals the box side N.
struct SubBox {
  std::vector<double> lo;
  std::vector<double> hi;
  bool contains(std::span<const double> x, double box_side) const noexcept;
};

/// True iff some edge joins a vertex of `first` to a vertex of `second`.
bool subcube_connection_indicator(const Graph& graph, const SubBox& first,
                                  const SubBox& second);

/// The 3^d subcubes of side N/3 indexed by their base-3 digit vector.
SubBox third_subcube(int d, std::int64_t N, std::span<const int> digits);

struct RenormFrequencies {
  std::vector<double> per_level;   ///< frequency of E_r, r = 1..m
  double union_frequency = 0.0;    ///< frequency of E_1 or ... or E_m
  std::vector<int> splits;         ///< subcubes per axis introduced at each level
  std::size_t trials = 0;
};

/// Per-trial indicators of E_1..E_m on one graph. Level r splits each
/// level-(r-1) cube into k_r^d equal subcubes with
/// k_r = max(2, ceil(side_{r-1} / N^{alpha^r})). Only random edges count.
std::vector<bool> renorm_events(const Graph& graph, std::span<const int> splits);

/// Split counts k_1..k_m for the given N and alpha.
std::vector<int> renorm_splits(std::int64_t N, double alpha, int m);

/// Simulates `trials` graphs (trial keys from params.seed) and reports the
/// empirical frequency of each event. Requires alpha < 1, 2 d alpha > s.
RenormFrequencies renorm_event_frequency(const ModelParams& params, double alpha,
                                         int m, std::size_t trials);

struct DegreeStats {
  double mean = 0.0;               ///< all edges
  double mean_random = 0.0;        ///< excluding backbone path edges
  std::size_t max = 0;
  std::size_t max_random = 0;
  double poisson_mean = 0.0;       ///< over Poisson vertices only
  std::size_t poisson_vertices = 0;
};

DegreeStats degree_stats(const Graph& graph);

}  // namespace lrp
