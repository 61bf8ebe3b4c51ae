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

#pragma once

#include <cstddef>
#include <span>

namespace citedyn::metrics {

// For linear fits `slope`/`intercept` are the usual line parameters. For
// exponential and power-law fits performed in log space, `slope` is the
// exponent and `intercept` the prefactor (already exponentiated).
struct FitResult {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t n_points = 0;
};

// Ordinary least squares y = slope * x + intercept. r_squared is 1 when y
// is constant (the line fits exactly). Throws kDomain for fewer than two
// points or non-finite input, kDegenerateRegressor when x has no variance.
FitResult ols(std::span<const double> xs, std::span<const double> ys);

// Throws kDegenerateRegressor when either side has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

struct CrossRegression {
  FitResult fit;
  double pearson_r = 0.0;
};

// Per-discipline regression, e.g. Heaps exponent against growth rate.
// Requires at least three paired points.
CrossRegression cross_series_regression(std::span<const double> xs,
                                        std::span<const double> ys);

}  // namespace citedyn::metrics
