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

#include "citedyn/ingest/fetch.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "citedyn/error.hpp"
#include "citedyn/ingest/csv.hpp"
#include "httplib.h"
#include "json.hpp"

namespace citedyn::ingest {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr const char* kPapersHeader = "id,pub_year,in_discipline";
constexpr const char* kEdgesHeader = "citing_id,cited_id";

enum class Phase { kDisciplinary, kCited, kCiting, kDone };

const char* phase_name(Phase p) {
  switch (p) {
    case Phase::kDisciplinary: return "disciplinary";
    case Phase::kCited: return "cited";
    case Phase::kCiting: return "citing";
    case Phase::kDone: return "done";
  }
  return "?";
}

Phase parse_phase(const std::string& s) {
  if (s == "disciplinary") return Phase::kDisciplinary;
  if (s == "cited") return Phase::kCited;
  if (s == "citing") return Phase::kCiting;
  if (s == "done") return Phase::kDone;
  fail(ErrorKind::kSchema, "fetch checkpoint: unknown phase '" + s + "'");
}

struct Checkpoint {
  std::string cursor;
  std::uint64_t rows_written = 0;
  std::uint64_t edge_rows_written = 0;
  Phase phase = Phase::kDisciplinary;
  std::size_t batch = 0;
};

void save_checkpoint(const fs::path& path, const Checkpoint& c) {
  json j;
  j["cursor"] = c.cursor;
  j["rows_written"] = c.rows_written;
  j["edge_rows_written"] = c.edge_rows_written;
  j["phase"] = phase_name(c.phase);
  j["batch"] = c.batch;
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorKind::kIo, "cannot write " + tmp.string());
    out << j.dump() << '\n';
  }
  fs::rename(tmp, path);
}

Checkpoint load_checkpoint(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  try {
    const json j = json::parse(in);
    Checkpoint c;
    c.cursor = j.at("cursor").get<std::string>();
    c.rows_written = j.at("rows_written").get<std::uint64_t>();
    c.edge_rows_written = j.value("edge_rows_written", std::uint64_t{0});
    c.phase = parse_phase(j.value("phase", std::string("disciplinary")));
    c.batch = j.value("batch", std::size_t{0});
    return c;
  } catch (const json::exception& e) {
    fail(ErrorKind::kSchema, "fetch checkpoint: " + std::string(e.what()));
  }
}

// Keeps the header plus the first `rows` records of a file we wrote.
void truncate_rows(const fs::path& path, std::uint64_t rows,
                   const char* header) {
  std::vector<std::string> kept;
  {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
    std::string line;
    std::getline(in, line);
    while (kept.size() < rows && std::getline(in, line)) kept.push_back(line);
  }
  if (kept.size() < rows) {
    fail(ErrorKind::kValidation,
         path.string() + " holds fewer rows than the checkpoint records");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << header << '\n';
  for (const auto& l : kept) out << l << '\n';
}

std::string short_id(const std::string& id) {
  const auto slash = id.find_last_of('/');
  return slash == std::string::npos ? id : id.substr(slash + 1);
}

struct Work {
  std::string id;
  int year = 0;
  std::vector<std::string> refs;
};

Work parse_work(const json& r) {
  auto field = [&](const char* name) -> const json& {
    if (!r.is_object() || !r.contains(name)) {
      fail(ErrorKind::kSchema, std::string("result lacks field '") + name + "'");
    }
    return r[name];
  };
  Work w;
  try {
    w.id = field("id").get<std::string>();
    w.year = field("publication_year").get<int>();
    for (const auto& ref : field("referenced_works")) {
      w.refs.push_back(ref.get<std::string>());
    }
  } catch (const json::type_error& e) {
    fail(ErrorKind::kSchema, std::string("bad field type: ") + e.what());
  }
  return w;
}

class Fetcher {
 public:
  explicit Fetcher(const FetchOptions& opts)
      : opts_(opts), client_(opts.base_url) {
    client_.set_connection_timeout(opts.timeout);
    client_.set_read_timeout(opts.timeout);
    const char* name = std::getenv(opts.api_key_header_env.c_str());
    const char* value = std::getenv(opts.api_key_value_env.c_str());
    if (name && value && *name) headers_.emplace(name, value);
  }

  json get(const httplib::Params& params, FetchReport& report) {
    std::chrono::milliseconds backoff = opts_.initial_backoff;
    for (int attempt = 0;; ++attempt) {
      throttle();
      ++report.requests;
      auto res = client_.Get(opts_.path, params, headers_);
      std::string problem;
      if (!res) {
        problem = "request failed: " + httplib::to_string(res.error());
      } else if (res->status == 200) {
        try {
          return json::parse(res->body);
        } catch (const json::parse_error& e) {
          fail(ErrorKind::kSchema, std::string("response is not JSON: ") +
                                       e.what());
        }
      } else if (res->status == 429 || res->status >= 500) {
        problem = "HTTP " + std::to_string(res->status);
      } else {
        fail(ErrorKind::kHttp, "HTTP " + std::to_string(res->status) +
                                   " from " + opts_.base_url + opts_.path);
      }
      if (attempt >= opts_.max_retries) {
        fail(ErrorKind::kHttp, problem + " after " +
                                   std::to_string(attempt + 1) + " attempts");
      }
      ++report.retries;
      std::this_thread::sleep_for(backoff);
      backoff = std::min(backoff * 2, opts_.max_backoff);
    }
  }

 private:
  void throttle() {
    if (opts_.max_requests_per_second <= 0) return;
    const auto interval = std::chrono::duration_cast<
        std::chrono::steady_clock::duration>(
        std::chrono::duration<double>(1.0 / opts_.max_requests_per_second));
    const auto now = std::chrono::steady_clock::now();
    if (now < next_) std::this_thread::sleep_until(next_);
    next_ = std::max(now, next_) + interval;
  }

  const FetchOptions& opts_;
  httplib::Client client_;
  httplib::Headers headers_;
  std::chrono::steady_clock::time_point next_{};
};

class Writer {
 public:
  Writer(const fs::path& dir, bool append) {
    const auto mode = std::ios::binary | (append ? std::ios::app
                                                 : std::ios::trunc);
    papers_.open(dir / "papers.csv", mode);
    edges_.open(dir / "edges.csv", mode);
    if (!papers_ || !edges_) {
      fail(ErrorKind::kIo, "cannot write corpus files in " + dir.string());
    }
    if (!append) {
      papers_ << kPapersHeader << '\n';
      edges_ << kEdgesHeader << '\n';
    }
  }

  void paper(const Work& w, bool in_discipline) {
    papers_ << csv_escape(w.id) << ',' << w.year << ','
            << (in_discipline ? 1 : 0) << '\n';
    for (const auto& r : w.refs) {
      edges_ << csv_escape(w.id) << ',' << csv_escape(r) << '\n';
    }
  }

  void flush() {
    papers_.flush();
    edges_.flush();
    if (!papers_ || !edges_) fail(ErrorKind::kIo, "write failed");
  }

 private:
  std::ofstream papers_;
  std::ofstream edges_;
};

// Reads back what earlier phases wrote.
void scan_output(const fs::path& dir, std::set<std::string>& seen,
                 std::vector<std::string>& disciplinary,
                 std::vector<std::string>& referenced) {
  std::set<std::string> disc;
  {
    std::ifstream in(dir / "papers.csv", std::ios::binary);
    CsvReader reader(in, "papers.csv");
    CsvRow row;
    reader.next(row);
    while (reader.next(row)) {
      if (row.fields.size() != 3) continue;
      seen.insert(row.fields[0]);
      if (row.fields[2] == "1") {
        disc.insert(row.fields[0]);
        disciplinary.push_back(row.fields[0]);
      }
    }
  }
  std::set<std::string> refs;
  {
    std::ifstream in(dir / "edges.csv", std::ios::binary);
    CsvReader reader(in, "edges.csv");
    CsvRow row;
    reader.next(row);
    while (reader.next(row)) {
      if (row.fields.size() != 2) continue;
      if (disc.count(row.fields[0]) && !disc.count(row.fields[1])) {
        refs.insert(row.fields[1]);
      }
    }
  }
  referenced.assign(refs.begin(), refs.end());
}

std::string join_ids(const std::vector<std::string>& ids, std::size_t from,
                     std::size_t count) {
  std::string out;
  for (std::size_t i = from; i < std::min(ids.size(), from + count); ++i) {
    if (!out.empty()) out += '|';
    out += short_id(ids[i]);
  }
  return out;
}

}  // namespace

fs::path fetch_checkpoint_path(const fs::path& dir) {
  return dir / "fetch_checkpoint.json";
}

FetchReport fetch_remote_corpus(const FetchOptions& opts) {
  if (opts.base_url.empty()) fail(ErrorKind::kUsage, "fetch: empty base URL");
  if (opts.page_size < 1) fail(ErrorKind::kUsage, "fetch: page size < 1");
  if (opts.expand_batch < 1) fail(ErrorKind::kUsage, "fetch: batch size < 1");
  if (opts.year_range.empty()) fail(ErrorKind::kUsage, "fetch: empty years");
  fs::create_directories(opts.output_dir);

  FetchReport report;
  const fs::path ckpt_path = fetch_checkpoint_path(opts.output_dir);
  Checkpoint ckpt;
  if (fs::exists(ckpt_path)) {
    ckpt = load_checkpoint(ckpt_path);
    truncate_rows(opts.output_dir / "papers.csv", ckpt.rows_written,
                  kPapersHeader);
    truncate_rows(opts.output_dir / "edges.csv", ckpt.edge_rows_written,
                  kEdgesHeader);
    report.resumed = true;
  } else {
    ckpt.cursor = opts.pagination == Pagination::kCursor ? "*" : "1";
  }
  Writer writer(opts.output_dir, report.resumed);
  Fetcher fetcher(opts);

  std::set<std::string> seen;
  std::vector<std::string> disciplinary;
  std::vector<std::string> referenced;
  if (report.resumed) scan_output(opts.output_dir, seen, disciplinary, referenced);

  const std::string years = "publication_year:" +
                            std::to_string(opts.year_range.min_year) + "-" +
                            std::to_string(opts.year_range.max_year);
  const std::string first_cursor =
      opts.pagination == Pagination::kCursor ? "*" : "1";

  // Pages through one query; the checkpoint cursor tracks progress.
  auto drain = [&](const std::string& filter, bool in_discipline) {
    while (true) {
      httplib::Params params{{"filter", filter},
                             {"per-page", std::to_string(opts.page_size)}};
      params.emplace(opts.pagination == Pagination::kCursor ? "cursor" : "page",
                     ckpt.cursor);
      const json page = fetcher.get(params, report);
      ++report.pages;
      if (!page.is_object() || !page.contains("results") ||
          !page["results"].is_array()) {
        fail(ErrorKind::kSchema, "response lacks field 'results'");
      }
      const json& results = page["results"];
      for (const auto& r : results) {
        Work w = parse_work(r);
        if (!seen.insert(w.id).second) continue;
        writer.paper(w, in_discipline);
        ++ckpt.rows_written;
        ckpt.edge_rows_written += w.refs.size();
        if (in_discipline) disciplinary.push_back(w.id);
      }
      writer.flush();

      bool more = false;
      if (opts.pagination == Pagination::kCursor) {
        if (!page.contains("meta") || !page["meta"].contains("next_cursor")) {
          fail(ErrorKind::kSchema, "response lacks field 'meta.next_cursor'");
        }
        const json& next = page["meta"]["next_cursor"];
        more = next.is_string() && !results.empty();
        if (more) ckpt.cursor = next.get<std::string>();
      } else {
        more = results.size() >= static_cast<std::size_t>(opts.page_size);
        if (more) ckpt.cursor = std::to_string(std::stoll(ckpt.cursor) + 1);
      }
      if (!more) {
        ckpt.cursor = first_cursor;
        return;
      }
      save_checkpoint(ckpt_path, ckpt);
    }
  };

  auto advance = [&](Phase next) {
    ckpt.phase = next;
    ckpt.batch = 0;
    ckpt.cursor = first_cursor;
    save_checkpoint(ckpt_path, ckpt);
  };

  if (ckpt.phase == Phase::kDisciplinary) {
    save_checkpoint(ckpt_path, ckpt);
    std::string filter = opts.concept_filter;
    if (!filter.empty()) filter += ',';
    filter += years;
    if (opts.exclude_unreferenced) filter += ",referenced_works_count:>0";
    drain(filter, true);
    report.disciplinary_rows = ckpt.rows_written;
    advance(opts.expand ? Phase::kCited : Phase::kDone);
    if (opts.expand) {
      seen.clear();
      disciplinary.clear();
      scan_output(opts.output_dir, seen, disciplinary, referenced);
    }
  } else {
    report.disciplinary_rows = disciplinary.size();
  }

  const auto batch = static_cast<std::size_t>(opts.expand_batch);
  if (ckpt.phase == Phase::kCited) {
    for (; ckpt.batch * batch < referenced.size(); ++ckpt.batch) {
      save_checkpoint(ckpt_path, ckpt);
      drain("openalex_id:" + join_ids(referenced, ckpt.batch * batch, batch) +
                "," + years,
            false);
    }
    advance(Phase::kCiting);
  }
  if (ckpt.phase == Phase::kCiting) {
    for (; ckpt.batch * batch < disciplinary.size(); ++ckpt.batch) {
      save_checkpoint(ckpt_path, ckpt);
      drain("cites:" + join_ids(disciplinary, ckpt.batch * batch, batch) +
                "," + years,
            false);
    }
    advance(Phase::kDone);
  }

  report.paper_rows = ckpt.rows_written;
  report.edge_rows = ckpt.edge_rows_written;
  fs::remove(ckpt_path);
  return report;
}

}  // namespace citedyn::ingest
