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

#include "citedyn/metrics/growth.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "citedyn/error.hpp"

namespace citedyn::metrics {

using ingest::Corpus;
using ingest::PaperIndex;

MetricSeries normalized_publication_series(const Corpus& corpus) {
  const auto range = corpus.year_range();
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(range.span()), 0);
  std::uint64_t total = 0;
  int first = range.max_year + 1;
  int last = range.min_year - 1;
  for (const auto& p : corpus.papers()) {
    if (!p.in_discipline) continue;
    ++counts[static_cast<std::size_t>(p.pub_year - range.min_year)];
    ++total;
    first = std::min(first, p.pub_year);
    last = std::max(last, p.pub_year);
  }
  if (total == 0) {
    fail(ErrorKind::kEmptyDomain, "publications: corpus has no "
                                  "in-discipline papers");
  }
  MetricSeries series("publications");
  series.meta["papers"] = std::to_string(total);
  for (int year = first; year <= last; ++year) {
    const auto n = counts[static_cast<std::size_t>(year - range.min_year)];
    series.add(year, static_cast<double>(n) / static_cast<double>(total));
  }
  return series;
}

FitResult fit_exponential_growth(const MetricSeries& series) {
  std::vector<double> xs;
  std::vector<double> logs;
  std::string bad;
  for (const SeriesPoint& p : series.points) {
    if (!(p.y > 0.0)) {
      if (!bad.empty()) bad += ", ";
      bad += format_number(p.x);
      continue;
    }
    xs.push_back(p.x);
    logs.push_back(std::log(p.y));
  }
  if (!bad.empty()) {
    fail(ErrorKind::kDomain,
         "exponential fit needs y > 0; offending x: " + bad);
  }
  FitResult fit = ols(xs, logs);
  fit.intercept = std::exp(fit.intercept);
  return fit;
}

UptakeSeries two_year_uptake(const Corpus& corpus, int horizon) {
  UptakeSeries out{MetricSeries("uptake_c2y"), MetricSeries("uptake_f0_2y")};
  const auto range = corpus.year_range();
  std::size_t excluded_years = 0;
  for (int year = range.min_year; year <= range.max_year; ++year) {
    std::uint64_t papers = 0;
    std::uint64_t uncited = 0;
    std::uint64_t citations = 0;
    for (PaperIndex x : corpus.published_in(year)) {
      if (!corpus.paper(x).in_discipline) continue;
      ++papers;
    }
    if (papers == 0) continue;
    if (year + horizon > range.max_year) {
      ++excluded_years;
      continue;
    }
    for (PaperIndex x : corpus.published_in(year)) {
      if (!corpus.paper(x).in_discipline) continue;
      std::uint64_t window = 0;
      for (int t = year; t <= year + horizon; ++t) {
        window += corpus.citations(x, t);
      }
      citations += window;
      if (window == 0) ++uncited;
    }
    const double n = static_cast<double>(papers);
    out.mean_citations.add(year, static_cast<double>(citations) / n);
    out.uncited_fraction.add(year, static_cast<double>(uncited) / n);
  }
  for (MetricSeries* s : {&out.mean_citations, &out.uncited_fraction}) {
    s->meta["horizon"] = std::to_string(horizon);
    s->meta["excluded_incomplete_years"] = std::to_string(excluded_years);
  }
  return out;
}

}  // namespace citedyn::metrics
