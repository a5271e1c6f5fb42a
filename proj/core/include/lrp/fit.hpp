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
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace lrp {

/// Scaling regime of the diameter as a function of (d, s).
enum class Regime { kSGreater2d, kSEqual2d, kBetweenDAnd2d, kSEqualD };

/// Stable labels: s_gt_2d, s_eq_2d, d_lt_s_lt_2d, s_eq_d.
std::string_view regime_label(Regime regime) noexcept;

/// Exact case match with tolerance 1e-9 on the equalities. Throws
/// OutOfScopeError for s < d.
Regime classify_regime(int d, double s);

/// (s - 2d + 1) / (s - d + 2), the supremum of power-law lower-bound exponents
/// for s > 2d. Throws InvalidArgument for s <= 2d.
double theoretical_psi_bound(int d, double s);

/// Ordinary least squares y = intercept + slope x.
struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double slope_stderr = 0.0;
  double r_squared = 0.0;
  double rmse = 0.0;
  double max_abs_residual = 0.0;
  std::size_t samples = 0;
};

LinearFit fit_linear(std::span<const double> x, std::span<const double> y);

/// One (box side, diameter) observation.
struct ScalePoint {
  double N = 0.0;
  double D = 0.0;
};

struct ExponentFit {
  double estimate = 0.0;
  double stderr_ = 0.0;
  double r_squared = 0.0;
  double rmse = 0.0;
  double max_abs_residual = 0.0;
  std::size_t samples = 0;
  std::size_t distinct_n = 0;
};

/// Slope of log D against log N.
ExponentFit fit_power_law(std::span<const ScalePoint> points);

/// Slope of log D against log log N.
ExponentFit fit_polylog(std::span<const ScalePoint> points);

struct LogRatioFit : ExponentFit {
  /// max / min over distinct N of median(D) log log N / log N.
  double ratio = 0.0;
};

/// Zero-intercept least squares of D against log N / log log N.
LogRatioFit fit_logratio(std::span<const ScalePoint> points);

/// Per-N medians, ascending in N.
std::vector<ScalePoint> medians_by_n(std::span<const ScalePoint> points);

/// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> values, double q);

}  // namespace lrp
