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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace citedyn::ingest {

using PaperIndex = std::uint32_t;

struct PaperRecord {
  std::string id;
  int pub_year = 0;
  bool in_discipline = true;

  friend bool operator==(const PaperRecord&, const PaperRecord&) = default;
};

// Endpoints are indices into Corpus::papers().
struct CitationEdge {
  PaperIndex citing = 0;
  PaperIndex cited = 0;

  friend bool operator==(const CitationEdge&, const CitationEdge&) = default;
};

struct YearRange {
  int min_year = 0;
  int max_year = -1;

  bool empty() const { return max_year < min_year; }
  bool contains(int year) const {
    return year >= min_year && year <= max_year;
  }
  int span() const { return empty() ? 0 : max_year - min_year + 1; }

  friend bool operator==(const YearRange&, const YearRange&) = default;
};

struct PaperTally {
  PaperIndex paper = 0;
  std::uint32_t count = 0;

  friend bool operator==(const PaperTally&, const PaperTally&) = default;
};

// (cited paper, citing year) -> k_x(t)
using TallyTable = std::map<std::pair<PaperIndex, int>, std::uint32_t>;

// Group-by-count of edges on (cited, citing paper's pub_year).
TallyTable tally_edges(std::span<const PaperRecord> papers,
                       std::span<const CitationEdge> edges);

// Immutable, validated citation graph with per-year citation tallies.
//
// Papers keep their input order; edges keep their input order, so a
// citing paper's reference list is reproduced in file order by
// references().
class Corpus {
 public:
  Corpus() = default;

  // Throws Error(kValidation) on duplicate ids, out-of-range indices,
  // self-loops, or papers outside `range`.
  Corpus(std::vector<PaperRecord> papers, std::vector<CitationEdge> edges,
         YearRange range);

  // Range derived from the papers' publication years.
  Corpus(std::vector<PaperRecord> papers, std::vector<CitationEdge> edges);

  std::size_t size() const { return papers_.size(); }
  bool empty() const { return papers_.empty(); }

  std::span<const PaperRecord> papers() const { return papers_; }
  std::span<const CitationEdge> edges() const { return edges_; }
  const PaperRecord& paper(PaperIndex x) const { return papers_[x]; }
  const std::string& id(PaperIndex x) const { return papers_[x].id; }
  int pub_year(PaperIndex x) const { return papers_[x].pub_year; }
  std::optional<PaperIndex> find(std::string_view id) const;
  YearRange year_range() const { return range_; }

  // Cited papers of `year` with k_x(year) > 0, sorted by paper index.
  std::span<const PaperTally> cited_in_year(int year) const;
  std::uint32_t citations(PaperIndex x, int year) const;
  std::uint64_t total_citations_in_year(int year) const;
  std::uint64_t total_citations(PaperIndex x) const {
    return total_by_paper_[x];
  }

  // Reference list of `citing` in edge order.
  std::span<const PaperIndex> references(PaperIndex citing) const;
  // Papers citing `cited`, ascending index.
  std::span<const PaperIndex> citers(PaperIndex cited) const;
  // Papers published in `year`, ascending index.
  std::span<const PaperIndex> published_in(int year) const;

  // Papers ordered by (pub_year, id): the canonical event order used by
  // the stream metrics.
  const std::vector<PaperIndex>& chronological() const {
    return chronological_;
  }

  TallyTable tally_table() const;

 private:
  void build();
  std::size_t year_slot(int year) const {
    return static_cast<std::size_t>(year - range_.min_year);
  }

  std::vector<PaperRecord> papers_;
  std::vector<CitationEdge> edges_;
  YearRange range_;

  std::unordered_map<std::string, PaperIndex> by_id_;
  std::vector<std::vector<PaperTally>> tallies_;  // per year slot
  std::vector<std::uint64_t> year_totals_;
  std::vector<std::uint64_t> total_by_paper_;
  std::vector<std::size_t> ref_offsets_;
  std::vector<PaperIndex> refs_;
  std::vector<std::size_t> citer_offsets_;
  std::vector<PaperIndex> citers_;
  std::vector<std::vector<PaperIndex>> published_;  // per year slot
  std::vector<PaperIndex> chronological_;
};

// Ordering on (pub_year, id).
inline bool older_first(const PaperRecord& a, const PaperRecord& b) {
  if (a.pub_year != b.pub_year) return a.pub_year < b.pub_year;
  return a.id < b.id;
}

}  // namespace citedyn::ingest
