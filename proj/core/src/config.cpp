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
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "lrp/error.hpp"
#include "lrp/experiment.hpp"

namespace lrp {
namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return std::string(text.substr(first, last - first + 1));
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  const auto* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw InvalidArgument("config key '" + key + "': cannot parse '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1" || value == "yes") return true;
  if (value == "off" || value == "false" || value == "0" || value == "no") return false;
  throw InvalidArgument("config key '" + key + "': expected on/off, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
  std::string normalized = value;
  std::replace(normalized.begin(), normalized.end(), ',', ' ');
  std::istringstream in(normalized);
  std::vector<std::string> out;
  for (std::string item; in >> item;) out.push_back(item);
  return out;
}

ObservableFlags parse_observables(const std::string& value) {
  ObservableFlags flags;
  for (const auto& item : split_list(value)) {
    if (item == "none") continue;
    if (item == "all") {
      flags = {true, true, true, true};
    } else if (item == "degree") {
      flags.degree = true;
    } else if (item == "histogram") {
      flags.histogram = true;
    } else if (item == "intervals") {
      flags.intervals = true;
    } else if (item == "subcube") {
      flags.subcube = true;
    } else {
      throw InvalidArgument("unknown observable '" + item + "'");
    }
  }
  return flags;
}

}  // namespace

void SweepConfig::validate() const {
  if (N_grid.empty()) throw InvalidArgument("N_grid is empty");
  for (std::size_t i = 1; i < N_grid.size(); ++i)
    if (N_grid[i] <= N_grid[i - 1]) throw InvalidArgument("N_grid must be strictly increasing");
  if (trials_per_N < 1) throw InvalidArgument("trials_per_N must be >= 1");
  for (auto n : N_grid) {
    ModelParams p = base;
    p.N = n;
    p.validate();
  }
  classify_regime(base.d, base.s);
  if (trial.interval_length < 1) throw InvalidArgument("interval_length must be >= 1");
  if (trial.interval_exponent && !(*trial.interval_exponent >= 0.0 && *trial.interval_exponent <= 1.0))
    throw InvalidArgument("interval_exponent must lie in [0, 1]");
  if (!(trial.band_ratio > 0.0 && trial.band_ratio < 1.0))
    throw InvalidArgument("band_ratio must lie in (0, 1)");
}

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    const std::string body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string::npos)
      throw InvalidArgument("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key == "d") {
      config.base.d = parse_number<int>(key, value);
    } else if (key == "s") {
      config.base.s = parse_number<double>(key, value);
    } else if (key == "beta") {
      config.base.beta = parse_number<double>(key, value);
    } else if (key == "rho") {
      config.base.rho = parse_number<double>(key, value);
    } else if (key == "seed") {
      config.base.seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "N_grid") {
      config.N_grid.clear();
      for (const auto& item : split_list(value))
        config.N_grid.push_back(parse_number<std::int64_t>(key, item));
    } else if (key == "trials_per_N") {
      config.trials_per_N = parse_number<std::size_t>(key, value);
    } else if (key == "observables") {
      config.trial.observables = parse_observables(value);
    } else if (key == "output_path") {
      config.output_path = value;
    } else if (key == "workers") {
      config.workers = parse_number<std::size_t>(key, value);
    } else if (key == "sampler") {
      if (value == "grid") {
        config.trial.sampler = SamplerKind::kGrid;
      } else if (value == "naive") {
        config.trial.sampler = SamplerKind::kNaive;
      } else {
        throw InvalidArgument("sampler must be grid or naive, got '" + value + "'");
      }
    } else if (key == "vertex_cap") {
      config.trial.vertex_cap = parse_number<std::size_t>(key, value);
    } else if (key == "exact_diameter_max") {
      config.trial.exact_diameter_max = parse_number<std::size_t>(key, value);
    } else if (key == "timing") {
      config.trial.record_timing = parse_bool(key, value);
    } else if (key == "interval_length") {
      config.trial.interval_length = parse_number<std::int64_t>(key, value);
    } else if (key == "interval_exponent") {
      config.trial.interval_exponent = parse_number<double>(key, value);
    } else if (key == "band_ratio") {
      config.trial.band_ratio = parse_number<double>(key, value);
    } else {
      throw InvalidArgument("unknown config key '" + key + "' on line " +
                            std::to_string(line_no));
    }
  }
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open config file");
  return parse_sweep_config(in);
}

}  // namespace lrp
