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

#include "citedyn/ingest/from_event_log.hpp"

#include <cstdio>

#include "citedyn/error.hpp"

namespace citedyn::ingest {

std::string simulated_paper_id(urn::PaperId id) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "p%08u", static_cast<unsigned>(id));
  return buf;
}

Corpus corpus_from_event_log(const urn::EventLog& log, int base_year) {
  const std::uint64_t n = log.total_papers();
  const std::vector<int> births = log.birth_steps();
  const std::uint64_t seeds = log.initial_papers();

  std::vector<PaperRecord> papers;
  papers.reserve(n);
  for (std::uint64_t id = 0; id < n; ++id) {
    papers.push_back({simulated_paper_id(static_cast<urn::PaperId>(id)),
                      base_year + births[id], id >= seeds});
  }

  std::vector<CitationEdge> edges;
  for (const urn::StepRecord& s : log.steps) {
    for (const urn::PaperEntry& p : s.papers) {
      for (const urn::Reference& r : p.refs) {
        if (r.id >= n || p.id >= n) {
          fail(ErrorKind::kValidation, "event log references unknown paper");
        }
        edges.push_back({p.id, r.id});
      }
    }
  }
  return Corpus(std::move(papers), std::move(edges));
}

}  // namespace citedyn::ingest
