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

#include "citedyn/metrics/canon.hpp"

#include <cmath>
#include <unordered_set>

namespace citedyn::metrics {

using ingest::Corpus;
using ingest::PaperIndex;
using ingest::PaperTally;

namespace {

bool citation_order(const Corpus& corpus, const PaperTally& a,
                    const PaperTally& b) {
  if (a.count != b.count) return a.count > b.count;
  return ingest::older_first(corpus.paper(a.paper), corpus.paper(b.paper));
}

std::vector<PaperTally> ranked_tallies(const Corpus& corpus, int year) {
  const auto row = corpus.cited_in_year(year);
  std::vector<PaperTally> ranked(row.begin(), row.end());
  std::sort(ranked.begin(), ranked.end(),
            [&](const PaperTally& a, const PaperTally& b) {
              return citation_order(corpus, a, b);
            });
  return ranked;
}

}  // namespace

std::vector<PaperIndex> citation_ranking(const Corpus& corpus, int year) {
  std::vector<PaperIndex> out;
  for (const PaperTally& t : ranked_tallies(corpus, year)) {
    out.push_back(t.paper);
  }
  return out;
}

CitationGraph build_yearly_citation_graph(const Corpus& corpus, int year) {
  CitationGraph graph;
  const auto published = corpus.published_in(year);
  if (published.empty()) return graph;

  std::vector<std::pair<PaperIndex, PaperIndex>> global_edges;
  for (PaperIndex x : published) {
    for (PaperIndex cited : corpus.references(x)) {
      global_edges.emplace_back(x, cited);
    }
    for (PaperIndex citing : corpus.citers(x)) {
      // Both endpoints in `year`: already added from the citing side.
      if (corpus.pub_year(citing) == year) continue;
      global_edges.emplace_back(citing, x);
    }
  }
  std::sort(global_edges.begin(), global_edges.end());
  global_edges.erase(std::unique(global_edges.begin(), global_edges.end()),
                     global_edges.end());

  graph.nodes.assign(published.begin(), published.end());
  for (const auto& [a, b] : global_edges) {
    graph.nodes.push_back(a);
    graph.nodes.push_back(b);
  }
  std::sort(graph.nodes.begin(), graph.nodes.end());
  graph.nodes.erase(std::unique(graph.nodes.begin(), graph.nodes.end()),
                    graph.nodes.end());

  auto local = [&](PaperIndex x) {
    return static_cast<std::uint32_t>(
        std::lower_bound(graph.nodes.begin(), graph.nodes.end(), x) -
        graph.nodes.begin());
  };
  graph.edges.reserve(global_edges.size());
  for (const auto& [a, b] : global_edges) {
    graph.edges.emplace_back(local(a), local(b));
  }
  return graph;
}

std::vector<PaperIndex> pagerank_ranking(const Corpus& corpus, int year,
                                         const PageRankOptions& options) {
  const CitationGraph graph = build_yearly_citation_graph(corpus, year);
  if (graph.edges.empty()) return {};
  const std::vector<double> scores = pagerank(graph, options);

  std::vector<std::uint32_t> order(graph.nodes.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  auto older = [&](std::uint32_t a, std::uint32_t b) {
    return ingest::older_first(corpus.paper(graph.nodes[a]),
                               corpus.paper(graph.nodes[b]));
  };
  std::size_t start = 0;
  for (std::size_t i = 1; i <= order.size(); ++i) {
    const bool split =
        i == order.size() ||
        scores[order[i - 1]] - scores[order[i]] >
            kScoreTieTolerance * scores[order[i - 1]];
    if (split) {
      std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                order.begin() + static_cast<std::ptrdiff_t>(i), older);
      start = i;
    }
  }
  std::vector<PaperIndex> ranking;
  ranking.reserve(order.size());
  for (std::uint32_t i : order) ranking.push_back(graph.nodes[i]);
  return ranking;
}

MetricSeries topk_turnover_series(const Corpus& corpus, std::ptrdiff_t k,
                                  RankBy by, const PageRankOptions& options) {
  if (k <= 0) fail(ErrorKind::kDomain, "top-k needs k >= 1");
  MetricSeries series(by == RankBy::kCitations ? "jaccard_citations"
                                               : "jaccard_pagerank");
  series.meta["k"] = std::to_string(k);
  series.meta["ranking"] = by == RankBy::kCitations ? "citations" : "pagerank";
  const auto range = corpus.year_range();
  std::vector<PaperIndex> previous;
  bool have_previous = false;
  std::string short_years;
  for (int year = range.min_year; year <= range.max_year; ++year) {
    std::vector<PaperIndex> ranking =
        by == RankBy::kCitations ? citation_ranking(corpus, year)
                                 : pagerank_ranking(corpus, year, options);
    if (ranking.empty()) {
      have_previous = false;
      continue;
    }
    if (ranking.size() < static_cast<std::size_t>(k)) {
      if (!short_years.empty()) short_years += ' ';
      short_years += std::to_string(year);
    }
    if (have_previous) {
      series.add(year, ranked_jaccard(previous, ranking, k));
    }
    previous = std::move(ranking);
    have_previous = true;
  }
  series.meta["years_with_fewer_than_k"] = short_years;
  return series;
}

EliteSet elite_set(const Corpus& corpus, int year, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    fail(ErrorKind::kDomain, "elite threshold must be in (0, 1]");
  }
  const std::uint64_t total = corpus.total_citations_in_year(year);
  if (total == 0) {
    fail(ErrorKind::kEmptyYear,
         "no citations in year " + std::to_string(year));
  }
  const auto ranked = ranked_tallies(corpus, year);
  const double required =
      threshold * static_cast<double>(total) * (1.0 - 1e-12);
  EliteSet elite;
  elite.year = year;
  elite.total_citations = total;
  elite.cited_papers = ranked.size();
  double age_sum = 0.0;
  for (const PaperTally& t : ranked) {
    elite.members.push_back(t.paper);
    elite.member_citations += t.count;
    age_sum += year - corpus.pub_year(t.paper);
    if (static_cast<double>(elite.member_citations) >= required) break;
  }
  const double m = static_cast<double>(elite.members.size());
  elite.size_fraction = m / static_cast<double>(ranked.size());
  elite.mean_age = age_sum / m;
  return elite;
}

namespace {

std::uint64_t pair_key(PaperIndex a, PaperIndex b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | b;
}

}  // namespace

double cocitation_relative_density(const Corpus& corpus, int year,
                                   const EliteSet& elite) {
  const std::size_t n = corpus.cited_in_year(year).size();
  const std::size_t m = elite.members.size();
  if (n < 2) {
    fail(ErrorKind::kDomain, "co-citation density needs >= 2 cited papers "
                             "in year " + std::to_string(year));
  }
  if (m < 2) {
    fail(ErrorKind::kDomain, "co-citation density needs >= 2 elite members "
                             "in year " + std::to_string(year));
  }
  std::unordered_set<std::uint64_t> pairs;
  std::vector<PaperIndex> refs;
  for (PaperIndex citing : corpus.published_in(year)) {
    const auto r = corpus.references(citing);
    refs.assign(r.begin(), r.end());
    std::sort(refs.begin(), refs.end());
    refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
    for (std::size_t i = 0; i < refs.size(); ++i) {
      for (std::size_t j = i + 1; j < refs.size(); ++j) {
        pairs.insert(pair_key(refs[i], refs[j]));
      }
    }
  }
  if (pairs.empty()) {
    fail(ErrorKind::kUndefinedRatio,
         "co-citation graph of year " + std::to_string(year) +
             " has no edges");
  }
  std::vector<bool> is_elite(corpus.size(), false);
  for (PaperIndex x : elite.members) is_elite[x] = true;
  std::size_t elite_edges = 0;
  for (std::uint64_t key : pairs) {
    const auto a = static_cast<PaperIndex>(key >> 32);
    const auto b = static_cast<PaperIndex>(key & 0xffffffffu);
    if (is_elite[a] && is_elite[b]) ++elite_edges;
  }
  const double dn = static_cast<double>(n);
  const double dm = static_cast<double>(m);
  const double whole = static_cast<double>(pairs.size()) / (dn * (dn - 1) / 2);
  const double sub = static_cast<double>(elite_edges) / (dm * (dm - 1) / 2);
  return sub / whole;
}

EliteSeries elite_series(const Corpus& corpus, double threshold) {
  EliteSeries out{MetricSeries("elite_size_fraction"),
                  MetricSeries("elite_mean_age"),
                  MetricSeries("cocitation_density")};
  const auto range = corpus.year_range();
  std::string skipped_density;
  for (int year = range.min_year; year <= range.max_year; ++year) {
    if (corpus.total_citations_in_year(year) == 0) continue;
    const EliteSet elite = elite_set(corpus, year, threshold);
    out.size_fraction.add(year, elite.size_fraction);
    out.mean_age.add(year, elite.mean_age);
    try {
      out.cocitation_density.add(
          year, cocitation_relative_density(corpus, year, elite));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDomain &&
          e.kind() != ErrorKind::kUndefinedRatio) {
        throw;
      }
      if (!skipped_density.empty()) skipped_density += ' ';
      skipped_density += std::to_string(year);
    }
  }
  for (MetricSeries* s :
       {&out.size_fraction, &out.mean_age, &out.cocitation_density}) {
    s->meta["threshold"] = format_number(threshold);
  }
  out.cocitation_density.meta["skipped_years"] = skipped_density;
  return out;
}

}  // namespace citedyn::metrics
