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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "citedyn/error.hpp"
#include "citedyn/ingest/corpus.hpp"
#include "citedyn/metrics/metric_series.hpp"

namespace citedyn::metrics {

// The element at 1-based rank r of the top-k contributes k - r + 1 copies,
// so every ranked element is present and the multiset holds k(k+1)/2 items
// when the ranking has at least k entries. Shorter rankings use all their
// entries.
template <class Id>
std::map<Id, std::size_t> expanded_top_k(std::span<const Id> ranking,
                                         std::ptrdiff_t k) {
  if (k <= 0) fail(ErrorKind::kDomain, "top-k needs k >= 1");
  std::map<Id, std::size_t> multiset;
  const std::size_t kk = static_cast<std::size_t>(k);
  const std::size_t n = std::min(kk, ranking.size());
  for (std::size_t r = 1; r <= n; ++r) {
    multiset[ranking[r - 1]] += kk - r + 1;
  }
  return multiset;
}

// Multiset Jaccard sum_id min(m_a, m_b) / sum_id max(m_a, m_b) over the
// expanded top-k lists.
template <class Id>
double ranked_jaccard(std::span<const Id> rank_a, std::span<const Id> rank_b,
                      std::ptrdiff_t k) {
  if (rank_a.empty() || rank_b.empty()) {
    fail(ErrorKind::kDomain, "ranked jaccard needs non-empty rankings");
  }
  const auto a = expanded_top_k(rank_a, k);
  const auto b = expanded_top_k(rank_b, k);
  std::size_t num = 0;
  std::size_t den = 0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
      den += ia->second;
      ++ia;
    } else if (ia == a.end() || ib->first < ia->first) {
      den += ib->second;
      ++ib;
    } else {
      num += std::min(ia->second, ib->second);
      den += std::max(ia->second, ib->second);
      ++ia;
      ++ib;
    }
  }
  return static_cast<double>(num) / static_cast<double>(den);
}

template <class Id>
double ranked_jaccard(const std::vector<Id>& rank_a,
                      const std::vector<Id>& rank_b, std::ptrdiff_t k) {
  return ranked_jaccard(std::span<const Id>(rank_a),
                        std::span<const Id>(rank_b), k);
}

// Papers cited in `year` ordered by (k_x(year) desc, pub_year asc, id asc).
std::vector<ingest::PaperIndex> citation_ranking(const ingest::Corpus& corpus,
                                                 int year);

// Directed citing -> cited graph on local node indices.
struct CitationGraph {
  std::vector<ingest::PaperIndex> nodes;  // ascending corpus index
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // deduplicated

  bool empty() const { return nodes.empty(); }
};

// Nodes: papers published in `year` plus everything they cite or are cited
// by. Edges: corpus edges with at least one endpoint published in `year`.
CitationGraph build_yearly_citation_graph(const ingest::Corpus& corpus,
                                          int year);

struct PageRankOptions {
  double damping = 0.85;
  double tolerance = 1e-10;  // L1 change between iterations
  int max_iterations = 1000;
};

// Power iteration with uniform teleport; dangling mass is spread uniformly.
// Throws kNonConvergence (message carries the residual), kDomain for an
// empty graph.
std::vector<double> pagerank(std::size_t node_count,
                             std::span<const std::pair<std::uint32_t,
                                                       std::uint32_t>> edges,
                             const PageRankOptions& options = {});
std::vector<double> pagerank(const CitationGraph& graph,
                             const PageRankOptions& options = {});

// Relative score gap below which two PageRank scores rank as tied; ties fall
// back to (pub_year asc, id asc) so the order does not depend on round-off.
inline constexpr double kScoreTieTolerance = 1e-6;

// Nodes of the year's citation graph by PageRank score, descending.
std::vector<ingest::PaperIndex> pagerank_ranking(
    const ingest::Corpus& corpus, int year,
    const PageRankOptions& options = {});

enum class RankBy { kCitations, kPageRank };

// Point at year t: ranked_jaccard(top-k(t-1), top-k(t), k) for consecutive
// years that both have a ranking (a cited paper, or a graph edge for
// PageRank).
MetricSeries topk_turnover_series(const ingest::Corpus& corpus,
                                  std::ptrdiff_t k = 50,
                                  RankBy by = RankBy::kCitations,
                                  const PageRankOptions& options = {});

struct EliteSet {
  int year = 0;
  std::vector<ingest::PaperIndex> members;  // in rank order
  double size_fraction = 0.0;               // |E| / papers cited in year
  double mean_age = 0.0;                    // mean of year - pub_year
  std::uint64_t member_citations = 0;
  std::uint64_t total_citations = 0;
  std::size_t cited_papers = 0;
};

// Shortest prefix of citation_ranking whose citations reach
// threshold * total (compared with 1e-12 relative slack so that e.g. 0.8 of
// 15 admits exactly 12). Throws kEmptyYear for a year without citations.
EliteSet elite_set(const ingest::Corpus& corpus, int year,
                   double threshold = 0.8);

// density(elite-induced co-citation subgraph) / density(co-citation graph of
// everything cited in `year`). Throws kDomain for fewer than two cited
// papers or elite members, kUndefinedRatio when the whole graph has no
// edges.
double cocitation_relative_density(const ingest::Corpus& corpus, int year,
                                   const EliteSet& elite);

struct EliteSeries {
  MetricSeries size_fraction;
  MetricSeries mean_age;
  MetricSeries cocitation_density;
};

EliteSeries elite_series(const ingest::Corpus& corpus,
                         double threshold = 0.8);

}  // namespace citedyn::metrics
