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

#include "citedyn/ingest/corpus_io.hpp"

#include <charconv>
#include <fstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "citedyn/error.hpp"
#include "citedyn/ingest/csv.hpp"

namespace citedyn::ingest {
namespace {

[[noreturn]] void parse_error(const CsvReader& reader, std::size_t line,
                              const std::string& what) {
  fail(ErrorKind::kParse,
       reader.source_name() + ":" + std::to_string(line) + ": " + what);
}

void expect_header(CsvReader& reader, std::initializer_list<const char*> cols) {
  CsvRow row;
  if (!reader.next(row)) parse_error(reader, 1, "missing header");
  bool ok = row.fields.size() == cols.size();
  std::size_t i = 0;
  for (const char* c : cols) {
    if (!ok) break;
    ok = row.fields[i++] == c;
  }
  if (!ok) {
    std::string want;
    for (const char* c : cols) {
      if (!want.empty()) want += ",";
      want += c;
    }
    parse_error(reader, row.line, "expected header '" + want + "'");
  }
}

int parse_year(const CsvReader& reader, const CsvRow& row,
               const std::string& s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    parse_error(reader, row.line, "invalid pub_year '" + s + "'");
  }
  return value;
}

std::ifstream open(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::kIo, "cannot open " + path.string());
  return in;
}

LoadedCorpus load_impl(std::istream& papers_in, const std::string& papers_name,
                       std::istream& edges_in, const std::string& edges_name,
                       const LoadOptions& options) {
  LoadReport report;
  std::vector<PaperRecord> papers;
  std::unordered_map<std::string, PaperIndex> index;
  // Ids dropped for falling outside the window; edges touching them are
  // dangling.
  std::unordered_map<std::string, int> out_of_window;

  {
    CsvReader reader(papers_in, papers_name);
    expect_header(reader, {"id", "pub_year", "in_discipline"});
    CsvRow row;
    while (reader.next(row)) {
      ++report.paper_rows;
      if (row.fields.size() != 3) {
        parse_error(reader, row.line,
                    "expected 3 fields, found " +
                        std::to_string(row.fields.size()));
      }
      PaperRecord rec;
      rec.id = row.fields[0];
      if (rec.id.empty()) parse_error(reader, row.line, "empty id");
      rec.pub_year = parse_year(reader, row, row.fields[1]);
      const std::string& flag = row.fields[2];
      if (flag == "1") {
        rec.in_discipline = true;
      } else if (flag == "0") {
        rec.in_discipline = false;
      } else {
        parse_error(reader, row.line,
                    "in_discipline must be 0 or 1, found '" + flag + "'");
      }
      if (index.count(rec.id) || out_of_window.count(rec.id)) {
        fail(ErrorKind::kValidation, papers_name + ":" +
                                         std::to_string(row.line) +
                                         ": duplicate paper id '" + rec.id +
                                         "'");
      }
      if (options.year_window && !options.year_window->contains(rec.pub_year)) {
        if (options.strict) {
          fail(ErrorKind::kValidation,
               papers_name + ":" + std::to_string(row.line) + ": paper '" +
                   rec.id + "' published in " + std::to_string(rec.pub_year) +
                   " outside the year window");
        }
        out_of_window.emplace(rec.id, rec.pub_year);
        ++report.dropped_out_of_window;
        continue;
      }
      index.emplace(rec.id, static_cast<PaperIndex>(papers.size()));
      papers.push_back(std::move(rec));
    }
    report.accepted_papers = papers.size();
  }

  std::vector<CitationEdge> edges;
  {
    CsvReader reader(edges_in, edges_name);
    expect_header(reader, {"citing_id", "cited_id"});
    CsvRow row;
    while (reader.next(row)) {
      ++report.edge_rows;
      if (row.fields.size() != 2) {
        parse_error(reader, row.line,
                    "expected 2 fields, found " +
                        std::to_string(row.fields.size()));
      }
      const std::string& citing = row.fields[0];
      const std::string& cited = row.fields[1];
      if (citing == cited) {
        ++report.dropped_self_loops;
        continue;
      }
      auto a = index.find(citing);
      auto b = index.find(cited);
      if (a == index.end() || b == index.end()) {
        if (options.strict) {
          const std::string& missing = a == index.end() ? citing : cited;
          fail(ErrorKind::kValidation,
               edges_name + ":" + std::to_string(row.line) +
                   ": dangling edge, unknown paper '" + missing + "'");
        }
        ++report.dropped_dangling;
        continue;
      }
      edges.push_back({a->second, b->second});
    }
    report.accepted_edges = edges.size();
  }

  LoadedCorpus out;
  out.corpus = options.year_window
                   ? Corpus(std::move(papers), std::move(edges),
                            *options.year_window)
                   : Corpus(std::move(papers), std::move(edges));
  out.report = report;
  return out;
}

}  // namespace

LoadedCorpus load_corpus(const std::filesystem::path& papers_path,
                         const std::filesystem::path& edges_path,
                         const LoadOptions& options) {
  std::ifstream papers = open(papers_path);
  std::ifstream edges = open(edges_path);
  return load_impl(papers, papers_path.filename().string(), edges,
                   edges_path.filename().string(), options);
}

LoadedCorpus load_corpus(std::istream& papers, std::istream& edges,
                         const LoadOptions& options) {
  return load_impl(papers, "papers.csv", edges, "edges.csv", options);
}

void write_corpus(const Corpus& corpus, std::ostream& papers,
                  std::ostream& edges) {
  papers << "id,pub_year,in_discipline\n";
  for (const PaperRecord& p : corpus.papers()) {
    papers << csv_escape(p.id) << ',' << p.pub_year << ','
           << (p.in_discipline ? '1' : '0') << '\n';
  }
  edges << "citing_id,cited_id\n";
  for (const CitationEdge& e : corpus.edges()) {
    edges << csv_escape(corpus.id(e.citing)) << ','
          << csv_escape(corpus.id(e.cited)) << '\n';
  }
}

void write_corpus(const Corpus& corpus,
                  const std::filesystem::path& papers_path,
                  const std::filesystem::path& edges_path) {
  std::ofstream papers(papers_path, std::ios::binary);
  std::ofstream edges(edges_path, std::ios::binary);
  if (!papers) fail(ErrorKind::kIo, "cannot write " + papers_path.string());
  if (!edges) fail(ErrorKind::kIo, "cannot write " + edges_path.string());
  write_corpus(corpus, papers, edges);
  if (!papers || !edges) fail(ErrorKind::kIo, "write failed");
}

}  // namespace citedyn::ingest
