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
#include <optional>
#include <span>
#include <vector>

#include "citedyn/ingest/corpus.hpp"
#include "citedyn/metrics/metric_series.hpp"
#include "citedyn/metrics/regression.hpp"

namespace citedyn::metrics {

// Reference lists concatenated in (pub_year, id) order of the citing papers,
// each list in file order.
std::vector<ingest::PaperIndex> citation_stream(const ingest::Corpus& corpus);

// counts[i] = number of distinct ids among stream[0..i].
std::vector<std::uint64_t> heaps_counts(std::span<const std::uint32_t> stream);

// (N_citations, N_cited) sampled on a logarithmic grid with
// `points_per_decade` points per decade plus the final point.
MetricSeries heaps_curve(std::span<const std::uint32_t> stream,
                         int points_per_decade = 20);
MetricSeries heaps_curve(const ingest::Corpus& corpus,
                         int points_per_decade = 20);

struct HeapsFitRange {
  // Default drops the first decade of the curve (N_citations < 10).
  double min_citations = 10.0;
  std::optional<double> max_citations;
};

// Power-law fit N_cited = prefactor * N_citations^beta by least squares in
// log-log space over the curve points inside the range. Throws kFitRange
// when the curve spans fewer than two decades or the range keeps fewer than
// two points.
FitResult heaps_fit(const MetricSeries& curve, const HeapsFitRange& range = {});

struct DiscoveryOptions {
  // Also require that the target was not already cited earlier in the same
  // year's ordered stream. Off by default: a discovery is a citation to a
  // paper with no citations in earlier years.
  bool within_year_first_touch = false;
};

// f_discovery(t): share of year-t citations whose target was previously
// uncited.
MetricSeries discovery_fraction_series(const ingest::Corpus& corpus,
                                       const DiscoveryOptions& options = {});

}  // namespace citedyn::metrics
