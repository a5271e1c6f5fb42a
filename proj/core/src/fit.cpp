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

#include "lrp/fit.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "lrp/error.hpp"

namespace lrp {
namespace {

constexpr double kEqualityTolerance = 1e-9;

void check_points(std::span<const ScalePoint> points, double min_n) {
  std::set<double> distinct;
  for (const auto& p : points) {
    if (!(p.N > 0.0) || !(p.D > 0.0))
      throw InvalidArgument("fit requires positive N and D");
    if (p.N < min_n)
      throw InvalidArgument("fit requires N >= " + std::to_string(min_n));
    distinct.insert(p.N);
  }
  if (distinct.size() < 3)
    throw InvalidArgument("fit requires at least 3 distinct N, got " +
                          std::to_string(distinct.size()));
}

std::size_t distinct_n(std::span<const ScalePoint> points) {
  std::set<double> distinct;
  for (const auto& p : points) distinct.insert(p.N);
  return distinct.size();
}

ExponentFit from_linear(const LinearFit& fit, std::span<const ScalePoint> points) {
  return {fit.slope, fit.slope_stderr, fit.r_squared, fit.rmse,
          fit.max_abs_residual, fit.samples, distinct_n(points)};
}

}  // namespace

std::string_view regime_label(Regime regime) noexcept {
  switch (regime) {
    case Regime::kSGreater2d: return "s_gt_2d";
    case Regime::kSEqual2d: return "s_eq_2d";
    case Regime::kBetweenDAnd2d: return "d_lt_s_lt_2d";
    case Regime::kSEqualD: return "s_eq_d";
  }
  return "unknown";
}

Regime classify_regime(int d, double s) {
  if (d < 1) throw InvalidArgument("d must be >= 1");
  const double dd = d;
  if (std::abs(s - dd) <= kEqualityTolerance) return Regime::kSEqualD;
  if (s < dd)
    throw OutOfScopeError("s < d is outside the supported regimes (d=" +
                          std::to_string(d) + ", s=" + std::to_string(s) + ")");
  if (std::abs(s - 2.0 * dd) <= kEqualityTolerance) return Regime::kSEqual2d;
  if (s > 2.0 * dd) return Regime::kSGreater2d;
  return Regime::kBetweenDAnd2d;
}

double theoretical_psi_bound(int d, double s) {
  if (!(s > 2.0 * d)) throw InvalidArgument("psi bound requires s > 2d");
  return (s - 2.0 * d + 1.0) / (s - d + 2.0);
}

LinearFit fit_linear(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw InvalidArgument("x and y differ in length");
  const std::size_t n = x.size();
  if (n < 3) throw InvalidArgument("linear fit needs at least 3 points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx <= 0.0) throw InvalidArgument("linear fit needs distinct x values");
  LinearFit fit;
  fit.samples = n;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double res = y[i] - (fit.intercept + fit.slope * x[i]);
    ssr += res * res;
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(res));
  }
  fit.rmse = std::sqrt(ssr / static_cast<double>(n));
  fit.slope_stderr = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  return fit;
}

ExponentFit fit_power_law(std::span<const ScalePoint> points) {
  check_points(points, 0.0);
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(std::log(p.N));
    y.push_back(std::log(p.D));
  }
  return from_linear(fit_linear(x, y), points);
}

ExponentFit fit_polylog(std::span<const ScalePoint> points) {
  check_points(points, 1.0 + 1e-12);
  std::vector<double> x, y;
  for (const auto& p : points) {
    x.push_back(std::log(std::log(p.N)));
    y.push_back(std::log(p.D));
  }
  return from_linear(fit_linear(x, y), points);
}

LogRatioFit fit_logratio(std::span<const ScalePoint> points) {
  check_points(points, 3.0);
  auto scale = [](double n) { return std::log(n) / std::log(std::log(n)); };
  double sxx = 0.0, sxy = 0.0, my = 0.0;
  for (const auto& p : points) {
    const double x = scale(p.N);
    sxx += x * x;
    sxy += x * p.D;
    my += p.D;
  }
  const auto n = static_cast<double>(points.size());
  my /= n;
  LogRatioFit fit;
  fit.samples = points.size();
  fit.distinct_n = distinct_n(points);
  fit.estimate = sxy / sxx;
  double ssr = 0.0, syy = 0.0;
  for (const auto& p : points) {
    const double res = p.D - fit.estimate * scale(p.N);
    ssr += res * res;
    syy += (p.D - my) * (p.D - my);
    fit.max_abs_residual = std::max(fit.max_abs_residual, std::abs(res));
  }
  fit.rmse = std::sqrt(ssr / n);
  fit.stderr_ = std::sqrt(ssr / (n - 1.0) / sxx);
  fit.r_squared = syy > 0.0 ? 1.0 - ssr / syy : 1.0;
  double lo = 0.0, hi = 0.0;
  bool first = true;
  for (const auto& m : medians_by_n(points)) {
    const double value = m.D / scale(m.N);
    lo = first ? value : std::min(lo, value);
    hi = first ? value : std::max(hi, value);
    first = false;
  }
  fit.ratio = hi / lo;
  return fit;
}

std::vector<ScalePoint> medians_by_n(std::span<const ScalePoint> points) {
  std::map<double, std::vector<double>> groups;
  for (const auto& p : points) groups[p.N].push_back(p.D);
  std::vector<ScalePoint> out;
  for (auto& [n, ds] : groups) out.push_back({n, quantile(std::move(ds), 0.5)});
  return out;
}

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

}  // namespace lrp
