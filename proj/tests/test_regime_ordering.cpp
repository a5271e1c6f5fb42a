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


// Slow Monte Carlo property; labelled "slow" in ctest.

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "lrp/experiment.hpp"
#include "support.hpp"

using namespace lrp;
using lrp::test::params;

namespace {

double median_diameter(double s, int trials) {
  std::vector<double> values;
  for (int t = 0; t < trials; ++t)
    values.push_back(static_cast<double>(
        run_trial(params(1, 4096, s, 1.0, 1.0, 5), static_cast<std::uint64_t>(t), {}).diameter));
  std::sort(values.begin(), values.end());
  const auto n = values.size();
  return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

TEST_CASE("median diameters at N=4096 increase with s") {
  const double d1 = median_diameter(1.0, 100);
  const double d15 = median_diameter(1.5, 100);
  const double d2 = median_diameter(2.0, 100);
  const double d3 = median_diameter(3.0, 100);
  INFO("medians: ", d1, " ", d15, " ", d2, " ", d3);
  CHECK(d1 < d15);
  CHECK(d15 < d2);
  CHECK(d2 < d3);
}
