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

#include "citedyn/ingest/corpus.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "citedyn/error.hpp"

namespace citedyn::ingest {

TallyTable tally_edges(std::span<const PaperRecord> papers,
                       std::span<const CitationEdge> edges) {
  TallyTable table;
  for (const CitationEdge& e : edges) {
    ++table[{e.cited, papers[e.citing].pub_year}];
  }
  return table;
}

namespace {

YearRange derive_range(std::span<const PaperRecord> papers) {
  if (papers.empty()) return {};
  auto [lo, hi] = std::minmax_element(
      papers.begin(), papers.end(),
      [](const PaperRecord& a, const PaperRecord& b) {
        return a.pub_year < b.pub_year;
      });
  return {lo->pub_year, hi->pub_year};
}

}  // namespace

Corpus::Corpus(std::vector<PaperRecord> papers,
               std::vector<CitationEdge> edges, YearRange range)
    : papers_(std::move(papers)), edges_(std::move(edges)), range_(range) {
  build();
}

Corpus::Corpus(std::vector<PaperRecord> papers,
               std::vector<CitationEdge> edges)
    : papers_(std::move(papers)), edges_(std::move(edges)) {
  range_ = derive_range(papers_);
  build();
}

void Corpus::build() {
  const std::size_t n = papers_.size();
  if (n > std::numeric_limits<PaperIndex>::max()) {
    fail(ErrorKind::kValidation, "corpus exceeds 2^32 papers");
  }
  by_id_.reserve(n);
  for (PaperIndex i = 0; i < n; ++i) {
    const PaperRecord& p = papers_[i];
    if (!range_.contains(p.pub_year)) {
      fail(ErrorKind::kValidation,
           "paper '" + p.id + "' published in " + std::to_string(p.pub_year) +
               " outside year range [" + std::to_string(range_.min_year) +
               ", " + std::to_string(range_.max_year) + "]");
    }
    if (!by_id_.emplace(p.id, i).second) {
      fail(ErrorKind::kValidation, "duplicate paper id '" + p.id + "'");
    }
  }
  for (const CitationEdge& e : edges_) {
    if (e.citing >= n || e.cited >= n) {
      fail(ErrorKind::kValidation, "edge endpoint out of range");
    }
    if (e.citing == e.cited) {
      fail(ErrorKind::kValidation,
           "self-citation of '" + papers_[e.citing].id + "'");
    }
  }

  const std::size_t years = static_cast<std::size_t>(range_.span());
  published_.assign(years, {});
  for (PaperIndex i = 0; i < n; ++i) {
    published_[year_slot(papers_[i].pub_year)].push_back(i);
  }

  chronological_.resize(n);
  std::iota(chronological_.begin(), chronological_.end(), PaperIndex{0});
  std::sort(chronological_.begin(), chronological_.end(),
            [this](PaperIndex a, PaperIndex b) {
              return older_first(papers_[a], papers_[b]);
            });

  // CSR adjacency, stable in edge order.
  ref_offsets_.assign(n + 1, 0);
  citer_offsets_.assign(n + 1, 0);
  for (const CitationEdge& e : edges_) {
    ++ref_offsets_[e.citing + 1];
    ++citer_offsets_[e.cited + 1];
  }
  std::partial_sum(ref_offsets_.begin(), ref_offsets_.end(),
                   ref_offsets_.begin());
  std::partial_sum(citer_offsets_.begin(), citer_offsets_.end(),
                   citer_offsets_.begin());
  refs_.resize(edges_.size());
  citers_.resize(edges_.size());
  {
    std::vector<std::size_t> ref_fill(ref_offsets_.begin(),
                                      ref_offsets_.end() - 1);
    std::vector<std::size_t> citer_fill(citer_offsets_.begin(),
                                        citer_offsets_.end() - 1);
    for (const CitationEdge& e : edges_) {
      refs_[ref_fill[e.citing]++] = e.cited;
      citers_[citer_fill[e.cited]++] = e.citing;
    }
  }
  for (PaperIndex x = 0; x < n; ++x) {
    std::sort(citers_.begin() + static_cast<std::ptrdiff_t>(citer_offsets_[x]),
              citers_.begin() +
                  static_cast<std::ptrdiff_t>(citer_offsets_[x + 1]));
  }

  // Per-year tallies, sorted by paper index.
  tallies_.assign(years, {});
  year_totals_.assign(years, 0);
  total_by_paper_.assign(n, 0);
  std::vector<std::uint32_t> scratch(n, 0);
  for (std::size_t slot = 0; slot < years; ++slot) {
    std::vector<PaperIndex> touched;
    for (PaperIndex citing : published_[slot]) {
      for (PaperIndex cited : references(citing)) {
        if (scratch[cited]++ == 0) touched.push_back(cited);
      }
    }
    std::sort(touched.begin(), touched.end());
    auto& row = tallies_[slot];
    row.reserve(touched.size());
    for (PaperIndex x : touched) {
      row.push_back({x, scratch[x]});
      year_totals_[slot] += scratch[x];
      total_by_paper_[x] += scratch[x];
      scratch[x] = 0;
    }
  }
}

std::optional<PaperIndex> Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::span<const PaperTally> Corpus::cited_in_year(int year) const {
  if (!range_.contains(year)) return {};
  return tallies_[year_slot(year)];
}

std::uint32_t Corpus::citations(PaperIndex x, int year) const {
  auto row = cited_in_year(year);
  auto it = std::lower_bound(
      row.begin(), row.end(), x,
      [](const PaperTally& t, PaperIndex v) { return t.paper < v; });
  if (it == row.end() || it->paper != x) return 0;
  return it->count;
}

std::uint64_t Corpus::total_citations_in_year(int year) const {
  if (!range_.contains(year)) return 0;
  return year_totals_[year_slot(year)];
}

std::span<const PaperIndex> Corpus::references(PaperIndex citing) const {
  return std::span<const PaperIndex>(refs_).subspan(
      ref_offsets_[citing], ref_offsets_[citing + 1] - ref_offsets_[citing]);
}

std::span<const PaperIndex> Corpus::citers(PaperIndex cited) const {
  return std::span<const PaperIndex>(citers_).subspan(
      citer_offsets_[cited],
      citer_offsets_[cited + 1] - citer_offsets_[cited]);
}

std::span<const PaperIndex> Corpus::published_in(int year) const {
  if (!range_.contains(year)) return {};
  return published_[year_slot(year)];
}

TallyTable Corpus::tally_table() const {
  TallyTable table;
  for (int year = range_.min_year; year <= range_.max_year; ++year) {
    for (const PaperTally& t : cited_in_year(year)) {
      table[{t.paper, year}] = t.count;
    }
  }
  return table;
}

}  // namespace citedyn::ingest
