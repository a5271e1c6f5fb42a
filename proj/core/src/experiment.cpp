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

#include "lrp/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <chrono>
#include <exception>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "lrp/edges.hpp"
#include "lrp/error.hpp"
#include "lrp/graph.hpp"

namespace lrp {
namespace {

using json = nlohmann::ordered_json;

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return ec == std::errc() ? std::string(buffer, ptr) : std::string("nan");
}

json degree_json(const DegreeStats& s) {
  return {{"mean", s.mean},
          {"mean_random", s.mean_random},
          {"max", s.max},
          {"max_random", s.max_random},
          {"poisson_mean", s.poisson_mean},
          {"poisson_vertices", s.poisson_vertices}};
}

json bands_json(const std::vector<LengthBand>& bands) {
  json out = json::array();
  for (const auto& b : bands) out.push_back({b.lower, b.upper});
  return out;
}

json exponent_json(const ExponentFit& f) {
  return {{"estimate", f.estimate},         {"stderr", f.stderr_},
          {"r_squared", f.r_squared},       {"rmse", f.rmse},
          {"max_abs_residual", f.max_abs_residual},
          {"samples", f.samples},           {"distinct_n", f.distinct_n}};
}

json regime_json(const RegimeFit& fit) {
  json out;
  out["regime_label"] = fit.regime ? json(std::string(regime_label(*fit.regime))) : json(nullptr);
  out["psi_bound"] = fit.psi_bound ? json(*fit.psi_bound) : json(nullptr);
  out["psi_hat"] = fit.power ? json(fit.power->estimate) : json(nullptr);
  out["psi_stderr"] = fit.power ? json(fit.power->stderr_) : json(nullptr);
  out["delta_hat"] = fit.polylog ? json(fit.polylog->estimate) : json(nullptr);
  out["delta_stderr"] = fit.polylog ? json(fit.polylog->stderr_) : json(nullptr);
  out["logratio_slope"] = fit.logratio ? json(fit.logratio->estimate) : json(nullptr);
  out["logratio_stderr"] = fit.logratio ? json(fit.logratio->stderr_) : json(nullptr);
  out["logratio_ratio"] = fit.logratio ? json(fit.logratio->ratio) : json(nullptr);
  out["power"] = fit.power ? exponent_json(*fit.power) : json(nullptr);
  out["polylog"] = fit.polylog ? exponent_json(*fit.polylog) : json(nullptr);
  out["logratio"] = fit.logratio ? exponent_json(*fit.logratio) : json(nullptr);
  return out;
}

json record_json(const TrialRecord& r) {
  json out;
  out["d"] = r.params.d;
  out["N"] = r.params.N;
  out["s"] = r.params.s;
  out["beta"] = r.params.beta;
  out["rho"] = r.params.rho;
  out["seed"] = r.params.seed;
  out["trial"] = r.trial_index;
  out["skipped"] = r.skipped;
  out["n_vertices"] = r.n_vertices;
  out["n_edges"] = r.n_edges;
  out["cluster_size"] = r.cluster_size;
  out["diameter"] = r.diameter;
  out["origin_corner_distance"] = r.origin_corner_distance;
  out["isolated_vertices"] = r.isolated_vertex_count;
  out["wall_time_s"] = r.wall_time_s;
  if (r.degree) out["degree"] = degree_json(*r.degree);
  if (r.histogram) {
    out["histogram"] = {{"bands", bands_json(r.histogram->bands)},
                        {"counts", r.histogram->counts},
                        {"poisson_only_counts", r.histogram->poisson_only_counts}};
  }
  if (r.intervals) {
    out["intervals"] = {{"interval_length", r.intervals->interval_length},
                        {"interval_count", r.intervals->interval_count},
                        {"cut_count", r.intervals->cut_count},
                        {"isolated_count", r.intervals->isolated_count},
                        {"local_cut_counts", r.intervals->local_cut_counts}};
  }
  if (r.subcube_connected) out["subcube_connected"] = *r.subcube_connected;
  return out;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, const std::string& column, std::size_t row) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (ec != std::errc() || ptr != cell.data() + cell.size())
    throw InvalidArgument("row " + std::to_string(row) + ", column '" + column +
                          "': cannot parse '" + cell + "'");
  return value;
}

}  // namespace

std::int64_t interval_length_for(const TrialOptions& options, std::int64_t N) {
  if (!options.interval_exponent) return options.interval_length;
  const double a = std::pow(static_cast<double>(N), *options.interval_exponent);
  return std::max<std::int64_t>(1, std::llround(a));
}

TrialRecord run_trial(const ModelParams& params, std::uint64_t trial_index,
                      const TrialOptions& options) {
  params.validate();
  const auto start = std::chrono::steady_clock::now();
  TrialRecord record;
  record.params = params;
  record.trial_index = trial_index;

  const StreamKey key = trial_key(params.seed, static_cast<std::uint64_t>(params.N), trial_index);
  const auto points = sample_poisson_points(params, key);
  record.n_vertices = params.backbone_count() + points.size() / static_cast<std::size_t>(params.d);
  if (record.n_vertices > options.vertex_cap) {
    record.skipped = true;
    return record;
  }
  auto cloud = std::make_shared<const PointCloud>(assemble_vertex_set(params, points));
  const EdgeList edges = options.sampler == SamplerKind::kNaive
                             ? sample_edges_naive(*cloud, params, key)
                             : sample_edges_grid(*cloud, params, key);
  const Graph graph(cloud, edges);
  const auto cluster = component_of_origin(graph);
  const DiameterReport report = cluster.size() <= options.exact_diameter_max
                                    ? diameter_exact(graph, cluster)
                                    : diameter_ifub(graph, cluster);
  record.n_edges = edges.size();
  record.cluster_size = report.cluster_size;
  record.diameter = report.diameter;
  record.origin_corner_distance = report.origin_corner_distance;
  for (VertexId v = 0; v < graph.size(); ++v)
    if (graph.degree(v) == 0) ++record.isolated_vertex_count;

  const ObservableFlags& obs = options.observables;
  if (obs.degree) record.degree = degree_stats(graph);
  if (obs.histogram) {
    const double max_length = static_cast<double>(params.d) * static_cast<double>(params.N);
    record.histogram = edge_length_histogram(graph, geometric_bands(max_length, options.band_ratio));
  }
  const std::int64_t a = interval_length_for(options, params.N);
  if (obs.intervals && params.d == 1 && params.N % a == 0)
    record.intervals = interval_report(graph, a);
  if (obs.subcube) {
    const std::vector<int> low(static_cast<std::size_t>(params.d), 0);
    const std::vector<int> high(static_cast<std::size_t>(params.d), 2);
    record.subcube_connected = subcube_connection_indicator(
        graph, third_subcube(params.d, params.N, low), third_subcube(params.d, params.N, high));
  }
  if (options.record_timing) {
    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return record;
}

RegimeFit fit_regime(int d, double s, std::span<const ScalePoint> points) {
  RegimeFit fit;
  try {
    fit.regime = classify_regime(d, s);
  } catch (const OutOfScopeError&) {
  }
  if (s > 2.0 * d) fit.psi_bound = theoretical_psi_bound(d, s);
  try {
    fit.power = fit_power_law(points);
  } catch (const InvalidArgument&) {
  }
  try {
    fit.polylog = fit_polylog(points);
  } catch (const InvalidArgument&) {
  }
  try {
    fit.logratio = fit_logratio(points);
  } catch (const InvalidArgument&) {
  }
  return fit;
}

const std::string& results_csv_header() {
  static const std::string header =
      "d,N,s,beta,rho,seed,trial,n_vertices,n_edges,cluster_size,diameter,"
      "origin_corner_distance,isolated_vertices,wall_time_s";
  return header;
}

std::string results_csv_row(const TrialRecord& r) {
  std::ostringstream out;
  out << r.params.d << ',' << r.params.N << ',' << format_double(r.params.s) << ','
      << format_double(r.params.beta) << ',' << format_double(r.params.rho) << ','
      << r.params.seed << ',' << r.trial_index << ',' << r.n_vertices << ',' << r.n_edges
      << ',' << r.cluster_size << ',' << r.diameter << ',' << r.origin_corner_distance
      << ',' << r.isolated_vertex_count << ',' << format_double(r.wall_time_s);
  return out.str();
}

std::string summary_path_for(const std::string& csv_path) {
  std::string stem = csv_path;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) stem.resize(stem.size() - 4);
  return stem + ".summary.json";
}

SweepResult run_sweep(const SweepConfig& config, std::ostream* log) {
  config.validate();
  std::size_t workers = config.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());

  std::ofstream csv(config.output_path, std::ios::out | std::ios::trunc);
  if (!csv) throw IoError(config.output_path, "cannot open results file for writing");
  csv << results_csv_header() << '\n';
  csv.flush();

  SweepResult result;
  for (const std::int64_t n : config.N_grid) {
    ModelParams params = config.base;
    params.N = n;
    std::vector<TrialRecord> block(config.trials_per_N);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
      for (std::size_t t = next++; t < block.size(); t = next++) {
        try {
          block[t] = run_trial(params, t, config.trial);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = block.size();
        }
      }
    };
    const std::size_t pool_size = std::min(workers, block.size());
    if (pool_size <= 1) {
      worker();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < pool_size; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    DiameterSummary summary;
    summary.N = n;
    std::vector<double> diam, corner, cluster, vertices, edge_counts, isolated;
    for (const auto& record : block) {
      if (record.skipped) {
        ++summary.skipped;
        if (log)
          *log << "skipped N=" << n << " trial=" << record.trial_index
               << ": " << record.n_vertices << " vertices exceed cap "
               << config.trial.vertex_cap << '\n';
        continue;
      }
      csv << results_csv_row(record) << '\n';
      diam.push_back(static_cast<double>(record.diameter));
      corner.push_back(static_cast<double>(record.origin_corner_distance));
      cluster.push_back(static_cast<double>(record.cluster_size));
      vertices.push_back(static_cast<double>(record.n_vertices));
      edge_counts.push_back(static_cast<double>(record.n_edges));
      isolated.push_back(static_cast<double>(record.isolated_vertex_count));
    }
    csv.flush();
    if (!csv) throw IoError(config.output_path, "write failed");
    summary.trials = diam.size();
    if (!diam.empty()) {
      summary.mean = mean_of(diam);
      summary.median = quantile(diam, 0.5);
      summary.q25 = quantile(diam, 0.25);
      summary.q75 = quantile(diam, 0.75);
      summary.min = *std::min_element(diam.begin(), diam.end());
      summary.max = *std::max_element(diam.begin(), diam.end());
      summary.corner_mean = mean_of(corner);
      summary.corner_median = quantile(corner, 0.5);
      summary.cluster_mean = mean_of(cluster);
      summary.vertices_mean = mean_of(vertices);
      summary.edges_mean = mean_of(edge_counts);
      summary.isolated_mean = mean_of(isolated);
    }
    if (log)
      *log << "N=" << n << ": " << summary.trials << " trials, median diameter "
           << summary.median << '\n';
    result.per_n.push_back(summary);
    for (auto& record : block) result.records.push_back(std::move(record));
  }

  std::vector<ScalePoint> medians;
  for (const auto& s : result.per_n)
    if (s.trials > 0) medians.push_back({static_cast<double>(s.N), s.median});
  if (medians.size() >= 3) result.fit = fit_regime(config.base.d, config.base.s, medians);

  const std::string summary_path = summary_path_for(config.output_path);
  std::ofstream summary(summary_path, std::ios::out | std::ios::trunc);
  if (!summary) throw IoError(summary_path, "cannot open summary file for writing");
  summary << sweep_summary_json(config, result) << '\n';
  if (!summary) throw IoError(summary_path, "write failed");
  return result;
}

std::string trial_record_json(const TrialRecord& record, int indent) {
  return record_json(record).dump(indent);
}

std::string sweep_summary_json(const SweepConfig& config, const SweepResult& result) {
  json out;
  const auto& flags = config.trial.observables;
  out["config"] = {{"d", config.base.d},
                   {"s", config.base.s},
                   {"beta", config.base.beta},
                   {"rho", config.base.rho},
                   {"seed", config.base.seed},
                   {"N_grid", config.N_grid},
                   {"trials_per_N", config.trials_per_N},
                   {"sampler", config.trial.sampler == SamplerKind::kGrid ? "grid" : "naive"},
                   {"vertex_cap", config.trial.vertex_cap},
                   {"interval_length", config.trial.interval_length},
                   {"interval_exponent", config.trial.interval_exponent
                                             ? json(*config.trial.interval_exponent)
                                             : json(nullptr)},
                   {"band_ratio", config.trial.band_ratio},
                   {"observables", {{"degree", flags.degree},
                                    {"histogram", flags.histogram},
                                    {"intervals", flags.intervals},
                                    {"subcube", flags.subcube}}}};

  // Observable aggregates per N, from the records.
  std::map<std::int64_t, std::vector<const TrialRecord*>> by_n;
  for (const auto& r : result.records)
    if (!r.skipped) by_n[r.params.N].push_back(&r);

  json per_n = json::array();
  for (const auto& s : result.per_n) {
    json entry = {{"N", s.N},
                  {"trials", s.trials},
                  {"skipped", s.skipped},
                  {"diameter", {{"mean", s.mean}, {"median", s.median}, {"q25", s.q25},
                                {"q75", s.q75}, {"min", s.min}, {"max", s.max}}},
                  {"origin_corner_distance", {{"mean", s.corner_mean}, {"median", s.corner_median}}},
                  {"cluster_size_mean", s.cluster_mean},
                  {"n_vertices_mean", s.vertices_mean},
                  {"n_edges_mean", s.edges_mean},
                  {"isolated_vertices_mean", s.isolated_mean}};
    const auto& records = by_n[s.N];
    if (flags.degree && !records.empty()) {
      std::vector<double> mean, random, poisson, max;
      for (const auto* r : records) {
        mean.push_back(r->degree->mean);
        random.push_back(r->degree->mean_random);
        poisson.push_back(r->degree->poisson_mean);
        max.push_back(static_cast<double>(r->degree->max));
      }
      entry["degree"] = {{"mean", mean_of(mean)}, {"mean_random", mean_of(random)},
                         {"poisson_mean", mean_of(poisson)}, {"max_mean", mean_of(max)}};
    }
    if (flags.histogram && !records.empty()) {
      const auto& bands = records.front()->histogram->bands;
      std::vector<double> counts(bands.size(), 0.0), poisson(bands.size(), 0.0);
      for (const auto* r : records) {
        for (std::size_t b = 0; b < bands.size(); ++b) {
          counts[b] += static_cast<double>(r->histogram->counts[b]);
          poisson[b] += static_cast<double>(r->histogram->poisson_only_counts[b]);
        }
      }
      for (auto& c : counts) c /= static_cast<double>(records.size());
      for (auto& c : poisson) c /= static_cast<double>(records.size());
      entry["histogram"] = {{"bands", bands_json(bands)},
                            {"mean_counts", counts},
                            {"mean_poisson_only_counts", poisson}};
    }
    if (flags.intervals && !records.empty() && records.front()->intervals) {
      std::vector<double> cut, isolated;
      for (const auto* r : records) {
        cut.push_back(static_cast<double>(r->intervals->cut_count));
        isolated.push_back(static_cast<double>(r->intervals->isolated_count));
      }
      entry["intervals"] = {{"interval_length", records.front()->intervals->interval_length},
                            {"interval_count", records.front()->intervals->interval_count},
                            {"cut_mean", mean_of(cut)},
                            {"isolated_mean", mean_of(isolated)}};
    }
    if (flags.subcube && !records.empty()) {
      double hits = 0.0;
      for (const auto* r : records) hits += *r->subcube_connected ? 1.0 : 0.0;
      entry["subcube_connection_frequency"] = hits / static_cast<double>(records.size());
    }
    per_n.push_back(std::move(entry));
  }
  out["per_N"] = std::move(per_n);
  out["fit"] = result.fit ? regime_json(*result.fit) : json(nullptr);
  return out.dump(2);
}

ResultsTable read_results_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("results CSV is empty");
  const auto header = split_csv(line);
  auto column = [&](const std::string& name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto n_col = column("N");
  const auto d_col = column("diameter");
  if (!n_col) throw InvalidArgument("results CSV lacks column 'N'");
  if (!d_col) throw InvalidArgument("results CSV lacks column 'diameter'");
  const auto dim_col = column("d");
  const auto s_col = column("s");

  ResultsTable table;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size())
      throw InvalidArgument("row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                            " cells, header has " + std::to_string(header.size()));
    table.points.push_back({parse_cell(cells[*n_col], "N", row),
                            parse_cell(cells[*d_col], "diameter", row)});
    if (dim_col) table.d = static_cast<int>(parse_cell(cells[*dim_col], "d", row));
    if (s_col) table.s = parse_cell(cells[*s_col], "s", row);
  }
  return table;
}

std::string regime_fit_json(const RegimeFit& fit, const std::string& model) {
  json out;
  out["model"] = model;
  out["regime_label"] = fit.regime ? json(std::string(regime_label(*fit.regime))) : json(nullptr);
  const ExponentFit* chosen = nullptr;
  std::string name;
  if (model == "power") {
    chosen = fit.power ? &*fit.power : nullptr;
    name = "psi_hat";
  } else if (model == "polylog") {
    chosen = fit.polylog ? &*fit.polylog : nullptr;
    name = "delta_hat";
  } else if (model == "logratio") {
    chosen = fit.logratio ? &*fit.logratio : nullptr;
    name = "logratio_slope";
  } else {
    throw InvalidArgument("unknown fit model '" + model + "'");
  }
  if (!chosen) throw InvalidArgument("fit preconditions not met for model '" + model + "'");
  out[name] = chosen->estimate;
  out["stderr"] = chosen->stderr_;
  out["r_squared"] = chosen->r_squared;
  out["rmse"] = chosen->rmse;
  out["max_abs_residual"] = chosen->max_abs_residual;
  out["samples"] = chosen->samples;
  out["distinct_n"] = chosen->distinct_n;
  if (model == "logratio") out["ratio"] = fit.logratio->ratio;
  if (fit.psi_bound) out["psi_bound"] = *fit.psi_bound;
  return out.dump(2);
}

}  // namespace lrp
