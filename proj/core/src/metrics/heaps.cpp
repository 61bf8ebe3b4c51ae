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

#include "citedyn/metrics/heaps.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "citedyn/error.hpp"

namespace citedyn::metrics {

using ingest::Corpus;
using ingest::PaperIndex;

std::vector<PaperIndex> citation_stream(const Corpus& corpus) {
  std::vector<PaperIndex> stream;
  stream.reserve(corpus.edges().size());
  for (PaperIndex x : corpus.chronological()) {
    const auto refs = corpus.references(x);
    stream.insert(stream.end(), refs.begin(), refs.end());
  }
  return stream;
}

std::vector<std::uint64_t> heaps_counts(std::span<const std::uint32_t> stream) {
  std::vector<std::uint64_t> counts;
  counts.reserve(stream.size());
  std::uint32_t max_id = 0;
  for (std::uint32_t id : stream) max_id = std::max(max_id, id);
  std::vector<bool> seen(stream.empty() ? 0 : std::size_t{max_id} + 1, false);
  std::uint64_t distinct = 0;
  for (std::uint32_t id : stream) {
    if (!seen[id]) {
      seen[id] = true;
      ++distinct;
    }
    counts.push_back(distinct);
  }
  return counts;
}

MetricSeries heaps_curve(std::span<const std::uint32_t> stream,
                         int points_per_decade) {
  if (stream.empty()) {
    fail(ErrorKind::kDomain, "heaps curve needs at least one citation");
  }
  if (points_per_decade < 1) {
    fail(ErrorKind::kDomain, "points_per_decade must be >= 1");
  }
  const std::vector<std::uint64_t> counts = heaps_counts(stream);
  MetricSeries curve("heaps");
  curve.meta["points_per_decade"] = std::to_string(points_per_decade);
  curve.meta["citations"] = std::to_string(counts.size());
  const std::uint64_t total = counts.size();
  std::uint64_t last = 0;
  for (int j = 0;; ++j) {
    const double at = std::pow(10.0, static_cast<double>(j) / points_per_decade);
    const auto n = static_cast<std::uint64_t>(std::llround(at));
    if (n > total) break;
    if (n == last) continue;
    curve.add(static_cast<double>(n), static_cast<double>(counts[n - 1]));
    last = n;
  }
  if (last != total) {
    curve.add(static_cast<double>(total),
              static_cast<double>(counts[total - 1]));
  }
  return curve;
}

MetricSeries heaps_curve(const Corpus& corpus, int points_per_decade) {
  const std::vector<PaperIndex> stream = citation_stream(corpus);
  return heaps_curve(std::span<const std::uint32_t>(stream), points_per_decade);
}

FitResult heaps_fit(const MetricSeries& curve, const HeapsFitRange& range) {
  if (curve.empty()) fail(ErrorKind::kFitRange, "empty heaps curve");
  const double lo = curve.points.front().x;
  const double hi = curve.points.back().x;
  if (!(lo > 0.0) || std::log10(hi / lo) < 2.0) {
    fail(ErrorKind::kFitRange,
         "heaps curve spans fewer than two decades (" + format_number(lo) +
             " to " + format_number(hi) + ")");
  }
  std::vector<double> xs;
  std::vector<double> ys;
  for (const SeriesPoint& p : curve.points) {
    if (p.x < range.min_citations) continue;
    if (range.max_citations && p.x > *range.max_citations) continue;
    if (!(p.y > 0.0)) continue;
    xs.push_back(std::log(p.x));
    ys.push_back(std::log(p.y));
  }
  if (xs.size() < 2) {
    fail(ErrorKind::kFitRange, "heaps fit range keeps fewer than 2 points");
  }
  FitResult fit = ols(xs, ys);
  fit.intercept = std::exp(fit.intercept);
  return fit;
}

MetricSeries discovery_fraction_series(const Corpus& corpus,
                                       const DiscoveryOptions& options) {
  MetricSeries series("discovery");
  series.meta["within_year_first_touch"] =
      options.within_year_first_touch ? "true" : "false";
  // cited_before[x]: x has a citation from a year earlier than the current.
  std::vector<bool> cited_before(corpus.size(), false);
  std::vector<bool> touched(corpus.size(), false);
  const auto& order = corpus.chronological();
  std::size_t i = 0;
  while (i < order.size()) {
    const int year = corpus.pub_year(order[i]);
    std::size_t j = i;
    std::uint64_t total = 0;
    std::uint64_t discoveries = 0;
    std::vector<PaperIndex> year_targets;
    for (; j < order.size() && corpus.pub_year(order[j]) == year; ++j) {
      for (PaperIndex cited : corpus.references(order[j])) {
        ++total;
        if (!cited_before[cited]) {
          if (!options.within_year_first_touch || !touched[cited]) {
            ++discoveries;
          }
        }
        if (!touched[cited]) {
          touched[cited] = true;
          year_targets.push_back(cited);
        }
      }
    }
    for (PaperIndex x : year_targets) {
      touched[x] = false;
      cited_before[x] = true;
    }
    if (total > 0) {
      series.add(year,
                 static_cast<double>(discoveries) / static_cast<double>(total));
    }
    i = j;
  }
  return series;
}

}  // namespace citedyn::metrics
