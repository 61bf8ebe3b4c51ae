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

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>

#include "citedyn/ingest/corpus.hpp"

namespace citedyn::ingest {

enum class Pagination { kCursor, kPage };

// Client for an OpenAlex-style works endpoint:
//   GET <path>?filter=...&per-page=N&cursor=C   (or &page=K)
//   -> {"meta": {"next_cursor": "...", "count": N},
//       "results": [{"id", "publication_year", "referenced_works": [...]}]}
struct FetchOptions {
  std::string base_url;             // scheme://host[:port]
  std::string path = "/works";
  std::string concept_filter;       // e.g. "concepts.id:C41008148"
  YearRange year_range{1980, 2019};
  int page_size = 200;
  Pagination pagination = Pagination::kCursor;
  bool exclude_unreferenced = true;
  // Second pass: papers cited by, and papers citing, the disciplinary set.
  bool expand = true;
  int expand_batch = 50;
  double max_requests_per_second = 10.0;
  int max_retries = 5;
  std::chrono::milliseconds initial_backoff{500};
  std::chrono::milliseconds max_backoff{30000};
  std::chrono::seconds timeout{30};
  // When both are set in the environment, their values form an extra
  // request header (name, value).
  std::string api_key_header_env = "CITEDYN_API_KEY_HEADER";
  std::string api_key_value_env = "CITEDYN_API_KEY";
  // papers.csv, edges.csv and fetch_checkpoint.json live here.
  std::filesystem::path output_dir;
};

struct FetchReport {
  std::uint64_t requests = 0;
  std::uint64_t retries = 0;
  std::uint64_t pages = 0;
  std::uint64_t paper_rows = 0;     // total in papers.csv, resumed ones included
  std::uint64_t edge_rows = 0;
  std::uint64_t disciplinary_rows = 0;
  bool resumed = false;
};

std::filesystem::path fetch_checkpoint_path(const std::filesystem::path& dir);

// Writes papers.csv / edges.csv in the load_corpus format. Resumes from the
// checkpoint file when present; removes it on success. HTTP failures retry
// with exponential backoff and then raise kHttp with the checkpoint intact.
// A result lacking a required field raises kSchema naming the field.
FetchReport fetch_remote_corpus(const FetchOptions& options);

}  // namespace citedyn::ingest
