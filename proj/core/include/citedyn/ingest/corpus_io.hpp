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
#include <filesystem>
#include <iosfwd>
#include <optional>

#include "citedyn/ingest/corpus.hpp"

namespace citedyn::ingest {

inline constexpr YearRange kDefaultYearWindow{1980, 2019};

struct LoadOptions {
  // Strict mode rejects dangling edges and out-of-window papers instead of
  // dropping them. Self-citations are dropped in both modes.
  bool strict = false;
  // Publication-year window applied to every record, citing papers
  // included. nullopt derives the range from the data.
  std::optional<YearRange> year_window = kDefaultYearWindow;
};

struct LoadReport {
  std::size_t paper_rows = 0;
  std::size_t accepted_papers = 0;
  std::size_t dropped_out_of_window = 0;

  std::size_t edge_rows = 0;
  std::size_t accepted_edges = 0;
  std::size_t dropped_self_loops = 0;
  std::size_t dropped_dangling = 0;
};

struct LoadedCorpus {
  Corpus corpus;
  LoadReport report;
};

// papers.csv: id,pub_year,in_discipline   edges.csv: citing_id,cited_id
LoadedCorpus load_corpus(const std::filesystem::path& papers_path,
                         const std::filesystem::path& edges_path,
                         const LoadOptions& options = {});

LoadedCorpus load_corpus(std::istream& papers, std::istream& edges,
                         const LoadOptions& options = {});

// Papers and edges in stored order; byte-identical round trip for inputs
// already in this form.
void write_corpus(const Corpus& corpus, std::ostream& papers,
                  std::ostream& edges);
void write_corpus(const Corpus& corpus,
                  const std::filesystem::path& papers_path,
                  const std::filesystem::path& edges_path);

}  // namespace citedyn::ingest
