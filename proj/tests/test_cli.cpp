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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using lrp::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) {
    path = fs::temp_directory_path() / ("lrp_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path / name) << text;
    return (path / name).string();
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void check_single_error_line(const Result& r, const std::string& kind) {
  CHECK(r.err.rfind("error: " + kind + ": ", 0) == 0);
  CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
}

}  // namespace

TEST_CASE("simulate examples") {
  const Result bare = invoke({"simulate", "--d", "1", "--N", "10", "--beta", "0", "--s", "2",
                              "--rho", "1", "--seed", "7"});
  CHECK(bare.code == 0);
  CHECK(bare.out.find("\ndiameter: 10\n") != std::string::npos);

  const Result parity = invoke({"simulate", "--d", "2", "--N", "3", "--s", "5"});
  CHECK(parity.code == 2);
  check_single_error_line(parity, "parity");

  const Result scope = invoke({"simulate", "--d", "1", "--N", "8", "--s", "0.5"});
  CHECK(scope.code == 2);
  check_single_error_line(scope, "out-of-scope");

  const std::vector<std::string> args{"simulate", "--d", "1", "--N", "64", "--s", "1",
                                      "--beta", "1", "--rho", "1", "--seed", "1"};
  const Result a = invoke(args), b = invoke(args);
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("simulate JSON output is stable") {
  const std::vector<std::string> args{"simulate", "--N", "32", "--s", "1.5", "--seed", "4", "--json"};
  const Result a = invoke(args), b = invoke(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto doc = nlohmann::json::parse(a.out);
  CHECK(doc["N"] == 32);
  CHECK(doc["diameter"].is_number_integer());
  CHECK(doc["diameter"] >= doc["origin_corner_distance"]);
}

TEST_CASE("simulate flags override config values") {
  TempDir dir("override");
  const std::string cfg = dir.write("base.cfg", "d=1\ns=2\nbeta=0\nN_grid=16\n");
  const Result from_config = invoke({"simulate", "--config", cfg});
  CHECK(from_config.code == 0);
  CHECK(from_config.out.find("\ndiameter: 16\n") != std::string::npos);
  const Result overridden = invoke({"simulate", "--config", cfg, "--N", "8"});
  CHECK(overridden.out.find("\ndiameter: 8\n") != std::string::npos);
  const Result naive = invoke({"simulate", "--config", cfg, "--N", "8", "--sampler", "naive"});
  CHECK(naive.out == overridden.out);
}

TEST_CASE("sweep examples") {
  TempDir dir("sweep");
  const std::string empty = dir.write("empty.cfg", "d=1\ns=3\nN_grid=\n");
  const Result bad = invoke({"sweep", "--config", empty});
  CHECK(bad.code == 2);
  check_single_error_line(bad, "invalid-argument");

  const std::string cfg = dir.write(
      "tiny.cfg", "d=1\ns=3\nbeta=1\nrho=1\nseed=3\nN_grid=8,16,32\ntrials_per_N=5\n");
  const std::string out = (dir.path / "tiny.csv").string();
  const Result ok = invoke({"sweep", "--config", cfg, "--out", out, "--workers", "2"});
  REQUIRE(ok.code == 0);
  const std::string first = slurp(out);
  CHECK(std::count(first.begin(), first.end(), '\n') == 1 + 15);
  const std::string summary = slurp(dir.path / "tiny.summary.json");
  CHECK(invoke({"sweep", "--config", cfg, "--out", out}).code == 0);
  CHECK(std::hash<std::string>{}(slurp(out)) == std::hash<std::string>{}(first));
  CHECK(slurp(dir.path / "tiny.summary.json") == summary);

  const Result io = invoke({"sweep", "--config", cfg, "--out", "/nonexistent-dir/x.csv"});
  CHECK(io.code == 3);
  check_single_error_line(io, "io");
  CHECK(io.err.find("/nonexistent-dir/x.csv") != std::string::npos);
  CHECK(invoke({"sweep", "--config", (dir.path / "missing.cfg").string()}).code == 3);
  CHECK(invoke({"sweep"}).code == 2);
}

TEST_CASE("fit examples") {
  TempDir dir("fit");
  const std::string exact = dir.write(
      "exact.csv", "d,N,s,diameter\n1,10,3,10\n1,100,3,100\n1,1000,3,1000\n1,100,3,100\n");
  const Result power = invoke({"fit", "--in", exact, "--model", "power"});
  REQUIRE(power.code == 0);
  const auto doc = nlohmann::json::parse(power.out);
  CHECK(doc["psi_hat"].get<double>() == doctest::Approx(1.0));
  CHECK(doc["regime_label"] == "s_gt_2d");
  CHECK(doc["samples"] == 3);
  CHECK(invoke({"fit", "--in", exact, "--model", "polylog"}).code == 0);
  const Result ratio = invoke({"fit", "--in", exact, "--model", "logratio"});
  CHECK(nlohmann::json::parse(ratio.out).contains("ratio"));

  const std::string missing = dir.write("missing.csv", "d,N,s\n1,10,3\n1,100,3\n1,1000,3\n");
  const Result no_column = invoke({"fit", "--in", missing});
  CHECK(no_column.code == 2);
  check_single_error_line(no_column, "invalid-argument");
  const std::string two = dir.write("two.csv", "N,diameter\n10,3\n100,5\n");
  CHECK(invoke({"fit", "--in", two}).code == 2);
  CHECK(invoke({"fit", "--in", exact, "--model", "cubic"}).code == 2);
  CHECK(invoke({"fit", "--in", (dir.path / "absent.csv").string()}).code == 3);
}

TEST_CASE("observables subcommand") {
  const Result r = invoke({"observables", "--N", "64", "--s", "1.5", "--a", "4", "--renorm-alpha",
                           "0.9", "--renorm-m", "2", "--renorm-trials", "3"});
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["intervals"]["interval_count"] == 16);
  CHECK(doc["histogram"]["bands"].size() == doc["histogram"]["counts"].size());
  CHECK(doc["degree"]["poisson_vertices"].is_number());
  CHECK(doc["renorm"]["per_level"].size() == 2);
  CHECK(invoke({"observables", "--N", "64", "--s", "1.5", "--a", "5"}).code == 2);
  CHECK(invoke({"observables", "--N", "64", "--s", "3", "--renorm-alpha", "0.9"}).code == 2);
}

TEST_CASE("selftest") {
  const Result ok = invoke({"selftest"});
  CHECK(ok.code == 0);
  CHECK(ok.err.empty());
  const Result broken = invoke({"selftest", "--inject-fault", "adjacency"});
  CHECK(broken.code == 1);
  check_single_error_line(broken, "selftest");
}

TEST_CASE("usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"simulate", "--N", "8", "--bogus", "1"}).code == 2);
  CHECK(invoke({"simulate", "--N", "eight"}).code == 2);
  CHECK(invoke({"simulate"}).code == 2);
  CHECK(invoke({"simulate", "--N", "8", "--sampler", "fancy"}).code == 2);
}
