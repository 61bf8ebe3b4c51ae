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

#include <cstdint>
#include <span>
#include <vector>

#include "citedyn/ingest/corpus.hpp"
#include "citedyn/metrics/metric_series.hpp"

namespace citedyn::metrics {

struct Share {
  ingest::PaperIndex paper = 0;
  double value = 0.0;
};

// xi_x(year) = k_x(year) / sum_y k_y(year) for every paper cited in `year`,
// ascending paper index. Throws kEmptyYear when nothing is cited.
std::vector<Share> attention_shares(const ingest::Corpus& corpus, int year);

// Gini index via the sorted closed form
//   G = sum_i (2i - n - 1) v_(i) / (n * sum v),   i = 1..n ascending,
// which equals sum_ij |v_i - v_j| / (2 n^2 mean). Throws kDomain for empty
// input or negative values, kUndefinedGini when the sum is zero.
double gini(std::span<const double> values);
double gini(std::span<const std::uint64_t> values);

enum class GiniPopulation {
  kCited,         // papers with at least one citation in the year
  kAllPublished,  // every paper published up to and including the year
};

// One point per year with citations; empty years are listed in meta.
MetricSeries yearly_gini_series(const ingest::Corpus& corpus,
                                GiniPopulation population =
                                    GiniPopulation::kCited);

struct GiniVariation {
  int from_year = 0;
  int to_year = 0;
  double from_value = 0.0;
  double to_value = 0.0;
  double absolute = 0.0;  // G(to) - G(from)
  double relative = 0.0;  // (G(to) - G(from)) / G(from)
};

// Throws kRange if either endpoint is missing from the series,
// kUndefinedRatio if G(from) == 0.
GiniVariation gini_variation(const MetricSeries& gini_series, int from_year,
                             int to_year);

struct AttentionCurve {
  ingest::PaperIndex paper = 0;
  int t0 = 0;
  std::vector<double> shares;      // xi over [t0, t0 + window)
  std::vector<double> normalized;  // shares / sum(shares)
};

struct AttentionCurveOptions {
  std::uint64_t min_citations = 10;  // total over the whole corpus
  int last_pub_year = 2005;
  int window = 10;
};

struct AttentionCurveSet {
  std::vector<AttentionCurve> curves;
  std::size_t excluded_low_citations = 0;
  std::size_t excluded_late = 0;        // published after last_pub_year
  std::size_t excluded_incomplete = 0;  // window runs past the corpus range
  std::size_t excluded_zero_window = 0;
};

// In-discipline papers only, in chronological order.
AttentionCurveSet attention_curves(const ingest::Corpus& corpus,
                                   const AttentionCurveOptions& options = {});

struct CycleStats {
  int t_peak = 0;        // argmax, earliest on ties
  double f_c_peak = 0.0; // cumulative share up to and including the peak
  int t_half = 0;        // last t with value >= max/2, minus t_peak
};

// Throws kDomain on an empty or all-zero curve.
CycleStats cycle_stats(std::span<const double> normalized);

struct CycleSeries {
  MetricSeries t_peak;
  MetricSeries f_c_peak;
  MetricSeries t_half;
};

// Per publication year, the mean of each statistic over its curves.
CycleSeries cycle_series(const AttentionCurveSet& curves);

}  // namespace citedyn::metrics
