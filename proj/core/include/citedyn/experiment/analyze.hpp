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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "citedyn/ingest/corpus.hpp"
#include "citedyn/metrics/attention.hpp"
#include "citedyn/metrics/canon.hpp"
#include "citedyn/metrics/heaps.hpp"
#include "citedyn/metrics/metric_series.hpp"
#include "citedyn/metrics/regression.hpp"

namespace citedyn::experiment {

// Selectable metric groups and the series each emits:
//   publications  publications
//   uptake        uptake_c2y, uptake_f0_2y
//   gini          gini
//   cycles        cycle_t_peak, cycle_f_c_peak, cycle_t_half
//   turnover      jaccard_citations, jaccard_pagerank
//   elite         elite_size_fraction, elite_mean_age, cocitation_density
//   heaps         heaps
//   discovery     discovery
//   attention     (no series; share-sum check in the summary)
const std::vector<std::string>& metric_groups();

// Comma-separated group names, or "all". Throws kUsage for an empty or
// unknown selection.
std::set<std::string> parse_metric_selection(const std::string& text);

struct AnalyzeOptions {
  std::set<std::string> metrics;
  std::string corpus_name = "corpus";
  int uptake_horizon = 2;
  metrics::AttentionCurveOptions curves;
  metrics::GiniPopulation gini_population = metrics::GiniPopulation::kCited;
  std::optional<int> gini_from;  // default: first year of the gini series
  std::optional<int> gini_to;    // default: last year
  std::ptrdiff_t top_k = 50;
  metrics::PageRankOptions pagerank;
  double elite_threshold = 0.8;
  int heaps_points_per_decade = 20;
  metrics::HeapsFitRange heaps_fit;
  metrics::DiscoveryOptions discovery;
};

struct CorpusSummary {
  std::string corpus;
  std::size_t papers = 0;
  std::size_t edges = 0;
  int min_year = 0;
  int max_year = 0;
  std::optional<metrics::FitResult> growth;  // slope alpha, intercept n0
  std::optional<metrics::FitResult> heaps;   // slope beta
  std::optional<metrics::GiniVariation> gini;
  std::optional<double> attention_share_max_error;  // max_t |sum xi - 1|
  std::optional<double> discovery_mean;
  std::map<std::string, std::string> errors;  // scalar fits that failed
};

struct Analysis {
  std::vector<metrics::MetricSeries> series;
  CorpusSummary summary;
};

// Series failures raise the original error kind with the metric name (and
// year where known) prepended. Summary-only fits that fail are recorded in
// summary.errors instead.
Analysis analyze_corpus(const ingest::Corpus& corpus,
                        const AnalyzeOptions& options);

// Writes every series as <name>.csv/.json plus summary.json.
void write_analysis(const Analysis& analysis, const std::filesystem::path& dir);

std::string summary_to_json(const CorpusSummary& summary);
CorpusSummary summary_from_json(const std::string& text);
CorpusSummary read_summary(const std::filesystem::path& path);

enum class GiniDeltaKind { kRelative, kAbsolute };

struct DisciplineRow {
  std::string corpus;
  double alpha = 0.0;
  double beta = 0.0;
  double gini_delta = 0.0;
};

struct DisciplineReport {
  std::vector<DisciplineRow> rows;
  metrics::CrossRegression alpha_beta;  // beta against alpha
  metrics::CrossRegression alpha_gini;  // gini_delta against alpha
};

// Needs at least three summaries, each with growth, heaps and gini values
// (kValidation otherwise). Degenerate regressors propagate.
DisciplineReport summarize_disciplines(
    const std::vector<CorpusSummary>& summaries,
    GiniDeltaKind kind = GiniDeltaKind::kRelative);

void write_report_csv(const DisciplineReport& report, std::ostream& out);
std::string report_to_json(const DisciplineReport& report);

}  // namespace citedyn::experiment
