// Copyright 2026 The citedyn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "citedyn/metrics/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "citedyn/error.hpp"

namespace citedyn::metrics {
namespace {

struct Moments {
  double mean_x = 0.0;
  double mean_y = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  double sxy = 0.0;
};

Moments centered_moments(std::span<const double> xs,
                         std::span<const double> ys) {
  if (xs.size() != ys.size()) {
    fail(ErrorKind::kDomain, "regression inputs differ in length (" +
                                 std::to_string(xs.size()) + " vs " +
                                 std::to_string(ys.size()) + ")");
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) {
      fail(ErrorKind::kDomain,
           "non-finite regression input at index " + std::to_string(i));
    }
  }
  Moments m;
  const double n = static_cast<double>(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    m.mean_x += xs[i];
    m.mean_y += ys[i];
  }
  m.mean_x /= n;
  m.mean_y /= n;
  // The mean of equal values can round off them; test constancy directly.
  const bool const_x = std::all_of(xs.begin(), xs.end(),
                                   [&](double x) { return x == xs[0]; });
  const bool const_y = std::all_of(ys.begin(), ys.end(),
                                   [&](double y) { return y == ys[0]; });
  if (const_x) m.mean_x = xs[0];
  if (const_y) m.mean_y = ys[0];
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - m.mean_x;
    const double dy = ys[i] - m.mean_y;
    m.sxx += dx * dx;
    m.syy += dy * dy;
    m.sxy += dx * dy;
  }
  return m;
}

}  // namespace

FitResult ols(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() < 2) {
    fail(ErrorKind::kDomain, "least squares needs at least 2 points, got " +
                                 std::to_string(xs.size()));
  }
  const Moments m = centered_moments(xs, ys);
  if (m.sxx == 0.0) {
    fail(ErrorKind::kDegenerateRegressor, "regressor has zero variance");
  }
  FitResult fit;
  fit.n_points = xs.size();
  fit.slope = m.sxy / m.sxx;
  fit.intercept = m.mean_y - fit.slope * m.mean_x;
  if (m.syy == 0.0) {
    fit.r_squared = 1.0;
  } else {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double r = ys[i] - (fit.slope * xs[i] + fit.intercept);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / m.syy, 0.0, 1.0);
  }
  return fit;
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  const Moments m = centered_moments(xs, ys);
  if (m.sxx == 0.0 || m.syy == 0.0) {
    fail(ErrorKind::kDegenerateRegressor,
         "correlation undefined: zero variance in " +
             std::string(m.sxx == 0.0 ? "x" : "y"));
  }
  return std::clamp(m.sxy / std::sqrt(m.sxx * m.syy), -1.0, 1.0);
}

CrossRegression cross_series_regression(std::span<const double> xs,
                                        std::span<const double> ys) {
  if (xs.size() < 3) {
    fail(ErrorKind::kDomain, "cross-series regression needs at least 3 "
                             "points, got " + std::to_string(xs.size()));
  }
  CrossRegression out;
  out.fit = ols(xs, ys);
  out.pearson_r = pearson(xs, ys);
  return out;
}

}  // namespace citedyn::metrics
