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
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lrp/fit.hpp"
#include "lrp/model.hpp"
#include "lrp/observables.hpp"

namespace lrp {

enum class SamplerKind { kGrid, kNaive };

struct ObservableFlags {
  bool degree = false;
  bool histogram = false;
  bool intervals = false;   ///< d = 1 only; ignored otherwise
  bool subcube = false;     ///< corner thirds (0,...,0) vs (2,...,2)
  friend bool operator==(const ObservableFlags&, const ObservableFlags&) = default;
};

struct TrialOptions {
  SamplerKind sampler = SamplerKind::kGrid;
  std::size_t vertex_cap = 200'000;
  /// Clusters up to this size use all-sources BFS; larger ones use iFub.
  std::size_t exact_diameter_max = 1'000;
  bool record_timing = false;
  ObservableFlags observables;
  std::int64_t interval_length = 1;
  /// When set, the interval length is round(N^e) instead of interval_length.
  std::optional<double> interval_exponent;
  double band_ratio = 0.5;
};

/// Measured outputs of one simulated graph.
struct TrialRecord {
  ModelParams params;
  std::uint64_t trial_index = 0;
  bool skipped = false;           ///< vertex cap exceeded; measurements empty
  std::size_t n_vertices = 0;
  std::size_t n_edges = 0;
  std::size_t cluster_size = 0;
  std::int64_t diameter = 0;
  std::int64_t origin_corner_distance = 0;
  std::size_t isolated_vertex_count = 0;  ///< vertices of degree 0
  double wall_time_s = 0.0;

  std::optional<DegreeStats> degree;
  std::optional<EdgeLengthHistogram> histogram;
  std::optional<IntervalReport> intervals;
  std::optional<bool> subcube_connected;
};

/// Deterministic in (params, trial_index, options) apart from wall_time_s.
/// Interval length used by run_trial for box side N.
std::int64_t interval_length_for(const TrialOptions& options, std::int64_t N);

TrialRecord run_trial(const ModelParams& params, std::uint64_t trial_index,
                      const TrialOptions& options = {});

/// Monte Carlo sweep over box sides.
struct SweepConfig {
  ModelParams base;                 ///< N is taken from N_grid
  std::vector<std::int64_t> N_grid;
  std::size_t trials_per_N = 1;
  TrialOptions trial;
  std::string output_path = "results.csv";
  std::size_t workers = 0;          ///< 0 = hardware concurrency

  /// Throws InvalidArgument / ParityError.
  void validate() const;
};

/// Reads the flat key-value format (one "key = value" per line, '#' comments).
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

struct DiameterSummary {
  std::int64_t N = 0;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  double mean = 0.0, median = 0.0, q25 = 0.0, q75 = 0.0, min = 0.0, max = 0.0;
  double corner_mean = 0.0, corner_median = 0.0;
  double cluster_mean = 0.0, vertices_mean = 0.0, edges_mean = 0.0;
  double isolated_mean = 0.0;
};

/// Fitted scaling exponents for one (d, s) sweep.
struct RegimeFit {
  std::optional<Regime> regime;
  std::optional<double> psi_bound;  ///< only for s > 2d
  std::optional<ExponentFit> power;    ///< psi_hat
  std::optional<ExponentFit> polylog;  ///< delta_hat
  std::optional<LogRatioFit> logratio;
};

/// Each fit is left empty when its preconditions fail on \`points\`.
RegimeFit fit_regime(int d, double s, std::span<const ScalePoint> points);

struct SweepResult {
  std::vector<TrialRecord> records;       ///< sorted by (N, trial_index)
  std::vector<DiameterSummary> per_n;
  std::optional<RegimeFit> fit;           ///< present with >= 3 distinct N
};

/// Runs every (N, trial) pair. The CSV at config.output_path is rewritten and
/// extended after each N; the JSON summary goes to summary_path_for().
/// Throws IoError naming the failing path.
SweepResult run_sweep(const SweepConfig& config, std::ostream* log = nullptr);

/// "<stem>.summary.json" next to the CSV.
std::string summary_path_for(const std::string& csv_path);

/// CSV header of the results file (no trailing newline).
const std::string& results_csv_header();
std::string results_csv_row(const TrialRecord& record);

/// JSON text of one record and of a sweep summary.
std::string trial_record_json(const TrialRecord& record, int indent = 2);
std::string sweep_summary_json(const SweepConfig& config, const SweepResult& result);

/// (N, diameter) pairs plus d and s when present. Throws InvalidArgument on
/// missing columns or unparsable cells.
struct ResultsTable {
  std::vector<ScalePoint> points;
  std::optional<int> d;
  std::optional<double> s;
};
ResultsTable read_results_csv(std::istream& in);

/// JSON text of a regime fit of the selected model ("power", "polylog",
/// "logratio").
std::string regime_fit_json(const RegimeFit& fit, const std::string& model);

}  // namespace lrp
