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

#include "citedyn/metrics/attention.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "citedyn/error.hpp"

namespace citedyn::metrics {

using ingest::Corpus;
using ingest::PaperIndex;
using ingest::PaperTally;

std::vector<Share> attention_shares(const Corpus& corpus, int year) {
  const std::uint64_t total = corpus.total_citations_in_year(year);
  if (total == 0) {
    fail(ErrorKind::kEmptyYear,
         "no citations in year " + std::to_string(year));
  }
  const auto row = corpus.cited_in_year(year);
  std::vector<Share> shares;
  shares.reserve(row.size());
  const double denom = static_cast<double>(total);
  for (const PaperTally& t : row) {
    shares.push_back({t.paper, static_cast<double>(t.count) / denom});
  }
  return shares;
}

double gini(std::span<const double> values) {
  if (values.empty()) fail(ErrorKind::kDomain, "gini of an empty set");
  std::vector<double> v(values.begin(), values.end());
  double sum = 0.0;
  for (double x : v) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      fail(ErrorKind::kDomain, "gini needs finite non-negative values");
    }
    sum += x;
  }
  if (sum == 0.0) {
    fail(ErrorKind::kUndefinedGini, "gini undefined for an all-zero set");
  }
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double weighted = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    weighted += (2.0 * static_cast<double>(i + 1) - n - 1.0) * v[i];
  }
  return std::clamp(weighted / (n * sum), 0.0, 1.0);
}

double gini(std::span<const std::uint64_t> values) {
  std::vector<double> v(values.size());
  std::transform(values.begin(), values.end(), v.begin(),
                 [](std::uint64_t x) { return static_cast<double>(x); });
  return gini(std::span<const double>(v));
}

MetricSeries yearly_gini_series(const Corpus& corpus,
                                GiniPopulation population) {
  MetricSeries series("gini");
  series.meta["population"] =
      population == GiniPopulation::kCited ? "cited" : "all_published";
  const auto range = corpus.year_range();
  std::string skipped;
  std::size_t published_so_far = 0;
  for (int year = range.min_year; year <= range.max_year; ++year) {
    published_so_far += corpus.published_in(year).size();
    if (corpus.total_citations_in_year(year) == 0) {
      if (!skipped.empty()) skipped += ' ';
      skipped += std::to_string(year);
      continue;
    }
    std::vector<double> values;
    for (const Share& s : attention_shares(corpus, year)) {
      values.push_back(s.value);
    }
    if (population == GiniPopulation::kAllPublished) {
      // Cited papers published later than `year` cannot exist; the zero
      // shares are the remaining published papers.
      std::size_t cited_published = 0;
      for (const PaperTally& t : corpus.cited_in_year(year)) {
        if (corpus.pub_year(t.paper) <= year) ++cited_published;
      }
      values.resize(values.size() + (published_so_far - cited_published),
                    0.0);
    }
    series.add(year, gini(values));
  }
  series.meta["skipped_years"] = skipped;
  return series;
}

GiniVariation gini_variation(const MetricSeries& gini_series, int from_year,
                             int to_year) {
  auto from = gini_series.at(from_year);
  auto to = gini_series.at(to_year);
  if (!from || !to) {
    fail(ErrorKind::kRange, "gini series lacks year " +
                                std::to_string(!from ? from_year : to_year));
  }
  if (*from == 0.0) {
    fail(ErrorKind::kUndefinedRatio,
         "relative gini variation undefined: gini(" +
             std::to_string(from_year) + ") = 0");
  }
  GiniVariation v;
  v.from_year = from_year;
  v.to_year = to_year;
  v.from_value = *from;
  v.to_value = *to;
  v.absolute = *to - *from;
  v.relative = v.absolute / *from;
  return v;
}

AttentionCurveSet attention_curves(const Corpus& corpus,
                                   const AttentionCurveOptions& options) {
  if (options.window < 1) fail(ErrorKind::kDomain, "window must be >= 1");
  AttentionCurveSet out;
  const auto range = corpus.year_range();
  for (PaperIndex x : corpus.chronological()) {
    const auto& p = corpus.paper(x);
    if (!p.in_discipline) continue;
    if (corpus.total_citations(x) < options.min_citations) {
      ++out.excluded_low_citations;
      continue;
    }
    if (p.pub_year > options.last_pub_year) {
      ++out.excluded_late;
      continue;
    }
    if (p.pub_year + options.window - 1 > range.max_year) {
      ++out.excluded_incomplete;
      continue;
    }
    AttentionCurve curve;
    curve.paper = x;
    curve.t0 = p.pub_year;
    curve.shares.resize(static_cast<std::size_t>(options.window), 0.0);
    double area = 0.0;
    for (int i = 0; i < options.window; ++i) {
      const int year = p.pub_year + i;
      const std::uint64_t total = corpus.total_citations_in_year(year);
      if (total == 0) continue;
      const double share = static_cast<double>(corpus.citations(x, year)) /
                           static_cast<double>(total);
      curve.shares[static_cast<std::size_t>(i)] = share;
      area += share;
    }
    if (area == 0.0) {
      ++out.excluded_zero_window;
      continue;
    }
    curve.normalized.resize(curve.shares.size());
    for (std::size_t i = 0; i < curve.shares.size(); ++i) {
      curve.normalized[i] = curve.shares[i] / area;
    }
    out.curves.push_back(std::move(curve));
  }
  return out;
}

CycleStats cycle_stats(std::span<const double> normalized) {
  if (normalized.empty()) fail(ErrorKind::kDomain, "empty attention curve");
  std::size_t peak = 0;
  for (std::size_t i = 1; i < normalized.size(); ++i) {
    if (normalized[i] > normalized[peak]) peak = i;
  }
  const double max = normalized[peak];
  if (!(max > 0.0)) fail(ErrorKind::kDomain, "all-zero attention curve");
  CycleStats stats;
  stats.t_peak = static_cast<int>(peak);
  for (std::size_t i = 0; i <= peak; ++i) stats.f_c_peak += normalized[i];
  std::size_t last = peak;
  for (std::size_t i = normalized.size(); i-- > peak;) {
    if (normalized[i] >= max / 2.0) {
      last = i;
      break;
    }
  }
  stats.t_half = static_cast<int>(last - peak);
  return stats;
}

CycleSeries cycle_series(const AttentionCurveSet& set) {
  struct Acc {
    double t_peak = 0.0;
    double f_c_peak = 0.0;
    double t_half = 0.0;
    std::size_t n = 0;
  };
  std::map<int, Acc> by_year;
  for (const AttentionCurve& c : set.curves) {
    const CycleStats s = cycle_stats(c.normalized);
    Acc& a = by_year[c.t0];
    a.t_peak += s.t_peak;
    a.f_c_peak += s.f_c_peak;
    a.t_half += s.t_half;
    ++a.n;
  }
  CycleSeries out{MetricSeries("cycle_t_peak"), MetricSeries("cycle_f_c_peak"),
                  MetricSeries("cycle_t_half")};
  std::string counts;
  for (const auto& [year, a] : by_year) {
    const double n = static_cast<double>(a.n);
    out.t_peak.add(year, a.t_peak / n);
    out.f_c_peak.add(year, a.f_c_peak / n);
    out.t_half.add(year, a.t_half / n);
    if (!counts.empty()) counts += ' ';
    counts += std::to_string(year) + ":" + std::to_string(a.n);
  }
  for (MetricSeries* s : {&out.t_peak, &out.f_c_peak, &out.t_half}) {
    s->meta["curves_per_year"] = counts;
    s->meta["excluded_low_citations"] =
        std::to_string(set.excluded_low_citations);
    s->meta["excluded_late"] = std::to_string(set.excluded_late);
    s->meta["excluded_incomplete"] = std::to_string(set.excluded_incomplete);
    s->meta["excluded_zero_window"] = std::to_string(set.excluded_zero_window);
  }
  return out;
}

}  // namespace citedyn::metrics
