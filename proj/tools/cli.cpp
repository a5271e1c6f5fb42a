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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <memory>
#include <ostream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lrp/edges.hpp"
#include "lrp/error.hpp"
#include "lrp/experiment.hpp"
#include "lrp/fit.hpp"
#include "lrp/graph.hpp"
#include "lrp/observables.hpp"

namespace lrp::cli {
namespace {

struct ModelFlags {
  int d = 1;
  std::int64_t N = 0;
  double s = 2.0;
  double beta = 1.0;
  double rho = 1.0;
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
  std::string sampler = "grid";
  std::string config;
  bool timing = false;
};

void add_model_flags(CLI::App& cmd, ModelFlags& f) {
  cmd.add_option("--d", f.d, "dimension");
  cmd.add_option("--N", f.N, "box side");
  cmd.add_option("--s", f.s, "decay exponent");
  cmd.add_option("--beta", f.beta, "connection strength");
  cmd.add_option("--rho", f.rho, "Poisson intensity");
  cmd.add_option("--seed", f.seed, "RNG seed");
  cmd.add_option("--trial", f.trial, "trial index");
  cmd.add_option("--sampler", f.sampler, "edge sampler")->check(CLI::IsMember({"grid", "naive"}));
  cmd.add_option("--config", f.config, "optional key-value config supplying defaults");
  cmd.add_flag("--timing", f.timing, "record wall time");
}

/// Config values first, then any flag given on the command line.
std::pair<ModelParams, TrialOptions> resolve(const CLI::App& cmd, const ModelFlags& f) {
  ModelParams params;
  TrialOptions options;
  if (!f.config.empty()) {
    const SweepConfig config = load_sweep_config(f.config);
    params = config.base;
    options = config.trial;
    if (!config.N_grid.empty()) params.N = config.N_grid.front();
  }
  if (cmd.count("--d")) params.d = f.d;
  if (cmd.count("--N")) params.N = f.N;
  if (cmd.count("--s")) params.s = f.s;
  if (cmd.count("--beta")) params.beta = f.beta;
  if (cmd.count("--rho")) params.rho = f.rho;
  if (cmd.count("--seed")) params.seed = f.seed;
  if (cmd.count("--sampler"))
    options.sampler = f.sampler == "naive" ? SamplerKind::kNaive : SamplerKind::kGrid;
  if (cmd.count("--timing")) options.record_timing = f.timing;
  if (f.config.empty() && !cmd.count("--N")) throw InvalidArgument("--N is required");
  params.validate();
  classify_regime(params.d, params.s);
  return {params, options};
}

void print_record_text(const TrialRecord& r, std::ostream& out) {
  out << "d: " << r.params.d << '\n'
      << "N: " << r.params.N << '\n'
      << "s: " << r.params.s << '\n'
      << "beta: " << r.params.beta << '\n'
      << "rho: " << r.params.rho << '\n'
      << "seed: " << r.params.seed << '\n'
      << "trial: " << r.trial_index << '\n';
  if (r.skipped) {
    out << "skipped: vertex cap exceeded (" << r.n_vertices << " vertices)\n";
    return;
  }
  out << "n_vertices: " << r.n_vertices << '\n'
      << "n_edges: " << r.n_edges << '\n'
      << "cluster_size: " << r.cluster_size << '\n'
      << "diameter: " << r.diameter << '\n'
      << "origin_corner_distance: " << r.origin_corner_distance << '\n'
      << "isolated_vertices: " << r.isolated_vertex_count << '\n';
  if (r.wall_time_s > 0.0) out << "wall_time_s: " << r.wall_time_s << '\n';
}

int report(std::ostream& err, const std::string& kind, const std::string& message) {
  std::string flat = message;
  std::replace(flat.begin(), flat.end(), '\n', ' ');
  err << "error: " << kind << ": " << flat << '\n';
  return kind == "io" ? kIoFailure : kInvalidInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuum long-range percolation simulator"};
  app.name("lrpsim");
  app.require_subcommand(1);

  ModelFlags sim_flags;
  bool sim_json = false;
  auto* simulate = app.add_subcommand("simulate", "simulate one graph and report its diameter");
  add_model_flags(*simulate, sim_flags);
  simulate->add_flag("--json", sim_json, "print the record as JSON");

  std::string sweep_config, sweep_out;
  std::size_t sweep_workers = 0;
  auto* sweep = app.add_subcommand("sweep", "run a Monte Carlo sweep over box sides");
  sweep->add_option("--config", sweep_config, "sweep config file")->required();
  sweep->add_option("--out", sweep_out, "results CSV path (summary JSON alongside)");
  sweep->add_option("--workers", sweep_workers, "worker threads (default: all cores)");

  std::string fit_in, fit_model = "power";
  auto* fit = app.add_subcommand("fit", "fit a scaling law to per-N median diameters");
  fit->add_option("--in", fit_in, "results CSV")->required();
  fit->add_option("--model", fit_model, "power | polylog | logratio")
      ->check(CLI::IsMember({"power", "polylog", "logratio"}));

  ModelFlags obs_flags;
  std::int64_t obs_a = 1;
  double obs_band_ratio = 0.5, renorm_alpha = 0.0;
  int renorm_m = 1;
  std::size_t renorm_trials = 20;
  auto* observables = app.add_subcommand("observables", "measure edge, interval, subcube and degree observables");
  add_model_flags(*observables, obs_flags);
  observables->add_option("--a", obs_a, "interval length (d = 1)");
  observables->add_option("--band-ratio", obs_band_ratio, "ratio c of length bands (ck, k]");
  observables->add_option("--renorm-alpha", renorm_alpha, "run renormalization events with this alpha");
  observables->add_option("--renorm-m", renorm_m, "renormalization depth");
  observables->add_option("--renorm-trials", renorm_trials, "renormalization trials");

  std::string fault;
  auto* self = app.add_subcommand("selftest", "run the fast invariant suite");
  self->add_option("--inject-fault", fault, "corrupt a structure to exercise failure reporting")
      ->group("");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report(err, "invalid-argument", e.what());
  }

  try {
    if (*simulate) {
      const auto [params, options] = resolve(*simulate, sim_flags);
      const TrialRecord record = run_trial(params, sim_flags.trial, options);
      if (sim_json) {
        out << trial_record_json(record) << '\n';
      } else {
        print_record_text(record, out);
      }
      return kOk;
    }
    if (*sweep) {
      SweepConfig config = load_sweep_config(sweep_config);
      if (!sweep_out.empty()) config.output_path = sweep_out;
      if (sweep->count("--workers")) config.workers = sweep_workers;
      const SweepResult result = run_sweep(config, &err);
      out << "wrote " << config.output_path << " and " << summary_path_for(config.output_path)
          << " (" << result.records.size() << " trials)\n";
      return kOk;
    }
    if (*fit) {
      std::ifstream in(fit_in);
      if (!in) throw IoError(fit_in, "cannot open results CSV");
      const ResultsTable table = read_results_csv(in);
      const auto medians = medians_by_n(table.points);
      if (medians.size() < 3)
        throw InvalidArgument("fit requires at least 3 distinct N, got " +
                              std::to_string(medians.size()));
      const RegimeFit result =
          fit_regime(table.d.value_or(1), table.s.value_or(0.0), medians);
      out << regime_fit_json(result, fit_model) << '\n';
      return kOk;
    }
    if (*observables) {
      auto [params, options] = resolve(*observables, obs_flags);
      options.observables = {true, true, params.d == 1, true};
      options.interval_length = obs_a;
      options.band_ratio = obs_band_ratio;
      if (params.d == 1 && params.N % obs_a != 0)
        throw InvalidArgument("--a must divide N");
      const TrialRecord record = run_trial(params, obs_flags.trial, options);
      auto doc = nlohmann::ordered_json::parse(trial_record_json(record));
      if (observables->count("--renorm-alpha")) {
        const auto freq = renorm_event_frequency(params, renorm_alpha, renorm_m, renorm_trials);
        doc["renorm"] = {{"alpha", renorm_alpha},
                         {"m", renorm_m},
                         {"trials", freq.trials},
                         {"splits", freq.splits},
                         {"per_level", freq.per_level},
                         {"union_frequency", freq.union_frequency}};
      }
      out << doc.dump(2) << '\n';
      return kOk;
    }
    if (*self) return selftest(out, err, fault);
  } catch (const Error& e) {
    return report(err, e.kind(), e.what());
  } catch (const std::exception& e) {
    return report(err, "internal", e.what());
  }
  return kInvalidInput;
}

}  // namespace lrp::cli
