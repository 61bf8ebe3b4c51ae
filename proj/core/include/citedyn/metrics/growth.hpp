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

#include "citedyn/ingest/corpus.hpp"
#include "citedyn/metrics/metric_series.hpp"
#include "citedyn/metrics/regression.hpp"

namespace citedyn::metrics {

// n(t) = N(t) / sum_t N(t) over in-discipline papers, one point per year
// between the first and last in-discipline publication year (zero-count
// years included). Throws kEmptyDomain without in-discipline papers.
MetricSeries normalized_publication_series(const ingest::Corpus& corpus);

// Fits y = n0 * exp(alpha * x) by least squares on (x, ln y). Returns
// slope = alpha and intercept = n0. Throws kDomain listing every x with
// y <= 0.
FitResult fit_exponential_growth(const MetricSeries& series);

struct UptakeSeries {
  MetricSeries mean_citations;   // C^2Y(t)
  MetricSeries uncited_fraction; // f_0^2Y(t)
};

// For in-discipline papers published in t, the citations received during
// [t, t + horizon]. Publication years whose window runs past the corpus
// range are left out and listed in meta.
UptakeSeries two_year_uptake(const ingest::Corpus& corpus, int horizon = 2);

}  // namespace citedyn::metrics
