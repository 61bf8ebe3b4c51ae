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

#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <mutex>
#include <set>
#include <thread>

#include "citedyn/error.hpp"
#include "citedyn/ingest/corpus_io.hpp"
#include "citedyn/ingest/fetch.hpp"
#include "httplib.h"
#include "json.hpp"
#include "test_util.hpp"

namespace citedyn {
namespace {

using nlohmann::json;

struct Work {
  std::string id;
  int year;
  std::vector<std::string> refs;
  bool in_concept;
};

std::string url(const std::string& w) { return "https://openalex.org/" + w; }

// D1..D6 carry the concept; X* are outside it. D papers cite X1, X2 and
// each other; Y1, Y2 cite D papers.
std::vector<Work> fixture_graph() {
  return {
      {url("X1"), 1985, {}, false},
      {url("X2"), 1986, {url("X1")}, false},
      {url("D1"), 1990, {url("X1")}, true},
      {url("D2"), 1991, {url("D1"), url("X2")}, true},
      {url("D3"), 1992, {url("D1")}, true},
      {url("D4"), 1993, {url("D2"), url("X1")}, true},
      {url("D5"), 1994, {url("D3")}, true},
      {url("D6"), 1995, {url("D5"), url("X2")}, true},
      {url("Y1"), 2000, {url("D6"), url("Z9")}, false},
      {url("Y2"), 2001, {url("D1")}, false},
      {url("Q1"), 2002, {url("X1")}, false},
  };
}

std::string short_of(const std::string& id) {
  return id.substr(id.find_last_of('/') + 1);
}

std::set<std::string> split_ids(const std::string& filter,
                                const std::string& key) {
  std::set<std::string> out;
  const auto at = filter.find(key);
  if (at == std::string::npos) return out;
  auto end = filter.find(',', at);
  std::string list = filter.substr(at + key.size(), end - at - key.size());
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, '|')) out.insert(item);
  return out;
}

class MockApi {
 public:
  MockApi() {
    server_.Get("/works", [this](const httplib::Request& req,
                                 httplib::Response& res) { handle(req, res); });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockApi() {
    server_.stop();
    thread_.join();
  }

  std::string base() const { return "http://127.0.0.1:" + std::to_string(port_); }

  std::vector<Work> works = fixture_graph();
  std::size_t page_size_override = 0;
  std::atomic<int> fail_next{0};       // respond 429 this many times
  std::atomic<int> fail_status{429};
  std::atomic<int> fail_after{-1};     // fail every request after N served
  std::atomic<int> served{0};
  bool drop_year_field = false;
  std::mutex mu;
  std::vector<std::string> seen_keys;
  std::vector<std::string> filters;

 private:
  void handle(const httplib::Request& req, httplib::Response& res) {
    {
      std::lock_guard<std::mutex> lock(mu);
      seen_keys.push_back(req.get_header_value("X-Api-Key"));
      filters.push_back(req.get_param_value("filter"));
    }
    if (fail_next > 0) {
      --fail_next;
      res.status = fail_status;
      return;
    }
    if (fail_after >= 0 && served >= fail_after) {
      res.status = 503;
      return;
    }
    ++served;
    const std::string filter = req.get_param_value("filter");
    std::vector<const Work*> match;
    const auto ids = split_ids(filter, "openalex_id:");
    const auto cites = split_ids(filter, "cites:");
    for (const Work& w : works) {
      bool ok;
      if (!ids.empty()) {
        ok = ids.count(short_of(w.id)) > 0;
      } else if (!cites.empty()) {
        ok = false;
        for (const auto& r : w.refs) ok = ok || cites.count(short_of(r));
      } else {
        ok = w.in_concept;
      }
      if (ok) match.push_back(&w);
    }
    const std::size_t per = std::stoul(req.get_param_value("per-page"));
    std::size_t offset = 0;
    if (req.has_param("cursor")) {
      const std::string c = req.get_param_value("cursor");
      offset = c == "*" ? 0 : std::stoul(c.substr(1));
    } else {
      offset = (std::stoul(req.get_param_value("page")) - 1) * per;
    }
    json results = json::array();
    for (std::size_t i = offset; i < std::min(match.size(), offset + per); ++i) {
      json w{{"id", match[i]->id},
             {"publication_year", match[i]->year},
             {"referenced_works", match[i]->refs}};
      if (drop_year_field) w.erase("publication_year");
      results.push_back(w);
    }
    json meta{{"count", match.size()}};
    if (offset + per < match.size()) {
      meta["next_cursor"] = "c" + std::to_string(offset + per);
    } else {
      meta["next_cursor"] = nullptr;
    }
    res.set_content(json{{"meta", meta}, {"results", results}}.dump(),
                    "application/json");
  }

  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

ingest::FetchOptions options(const MockApi& api, const testing::TempDir& dir) {
  ingest::FetchOptions o;
  o.base_url = api.base();
  o.concept_filter = "concepts.id:C1";
  o.page_size = 2;
  o.expand = false;
  o.max_requests_per_second = 0;
  o.initial_backoff = std::chrono::milliseconds(5);
  o.max_backoff = std::chrono::milliseconds(20);
  o.output_dir = dir.path();
  return o;
}

std::size_t rows(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n - 1;
}

TEST(Fetch, CursorPaginationStitchesThreePages) {
  MockApi api;
  testing::TempDir dir;
  const auto rep = ingest::fetch_remote_corpus(options(api, dir));
  EXPECT_EQ(rep.pages, 3u);
  EXPECT_EQ(rep.paper_rows, 6u);
  EXPECT_EQ(rows(dir / "papers.csv"), 6u);
  EXPECT_FALSE(std::filesystem::exists(ingest::fetch_checkpoint_path(dir.path())));
  EXPECT_NE(api.filters[0].find("publication_year:1980-2019"), std::string::npos);
}

TEST(Fetch, PagePaginationStitchesThreePages) {
  MockApi api;
  testing::TempDir dir;
  auto o = options(api, dir);
  o.pagination = ingest::Pagination::kPage;
  const auto rep = ingest::fetch_remote_corpus(o);
  EXPECT_EQ(rep.paper_rows, 6u);
  EXPECT_EQ(rows(dir / "papers.csv"), 6u);
}

TEST(Fetch, TooManyRequestsBacksOffOnce) {
  MockApi api;
  api.fail_next = 1;
  testing::TempDir dir;
  const auto rep = ingest::fetch_remote_corpus(options(api, dir));
  EXPECT_EQ(rep.retries, 1u);
  EXPECT_EQ(rep.paper_rows, 6u);
}

TEST(Fetch, ClientErrorIsNotRetried) {
  MockApi api;
  api.fail_next = 1;
  api.fail_status = 404;
  testing::TempDir dir;
  try {
    ingest::fetch_remote_corpus(options(api, dir));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kHttp);
  }
}

TEST(Fetch, MissingFieldIsSchemaErrorNamingIt) {
  MockApi api;
  api.drop_year_field = true;
  testing::TempDir dir;
  try {
    ingest::fetch_remote_corpus(options(api, dir));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSchema);
    EXPECT_NE(std::string(e.what()).find("publication_year"), std::string::npos);
  }
}

TEST(Fetch, AbortsWithCheckpointAndResumes) {
  testing::TempDir clean_dir;
  {
    MockApi api;
    auto o = options(api, clean_dir);
    o.expand = true;
    ingest::fetch_remote_corpus(o);
  }

  testing::TempDir dir;
  MockApi api;
  api.fail_after = 2;
  auto o = options(api, dir);
  o.expand = true;
  o.max_retries = 2;
  try {
    ingest::fetch_remote_corpus(o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kHttp);
  }
  const auto ckpt_path = ingest::fetch_checkpoint_path(dir.path());
  ASSERT_TRUE(std::filesystem::exists(ckpt_path));
  const json ckpt = json::parse(testing::slurp(ckpt_path));
  EXPECT_EQ(ckpt.at("rows_written").get<int>(), 4);
  EXPECT_EQ(ckpt.at("cursor").get<std::string>(), "c4");

  api.fail_after = -1;
  const auto rep = ingest::fetch_remote_corpus(o);
  EXPECT_TRUE(rep.resumed);
  EXPECT_EQ(testing::slurp(dir / "papers.csv"),
            testing::slurp(clean_dir / "papers.csv"));
  EXPECT_EQ(testing::slurp(dir / "edges.csv"),
            testing::slurp(clean_dir / "edges.csv"));
}

TEST(Fetch, TwoStepExpansionIsSupersetOfDisciplinary) {
  MockApi api;
  testing::TempDir dir;
  auto o = options(api, dir);
  o.expand = true;
  o.expand_batch = 2;
  const auto rep = ingest::fetch_remote_corpus(o);
  EXPECT_EQ(rep.disciplinary_rows, 6u);

  ingest::LoadOptions lo;
  const auto lc = ingest::load_corpus(dir / "papers.csv", dir / "edges.csv", lo);
  std::set<std::string> all, disc;
  for (const auto& p : lc.corpus.papers()) {
    all.insert(p.id);
    if (p.in_discipline) disc.insert(p.id);
  }
  EXPECT_EQ(disc.size(), 6u);
  for (const auto& d : disc) EXPECT_TRUE(all.count(d));
  // Cited by the discipline, and citing it.
  for (const char* w : {"X1", "X2", "Y1", "Y2"}) {
    EXPECT_TRUE(all.count(url(w))) << w;
  }
  EXPECT_FALSE(all.count(url("Q1")));
  EXPECT_EQ(all.size(), 10u);
  EXPECT_EQ(lc.report.dropped_dangling, 1u);  // Y1 -> Z9
}

TEST(Fetch, ApiKeyHeaderFromEnvironment) {
  MockApi api;
  testing::TempDir dir;
  auto o = options(api, dir);
  o.api_key_header_env = "CITEDYN_TEST_KEY_NAME";
  o.api_key_value_env = "CITEDYN_TEST_KEY_VALUE";
  ::setenv("CITEDYN_TEST_KEY_NAME", "X-Api-Key", 1);
  ::setenv("CITEDYN_TEST_KEY_VALUE", "sekrit", 1);
  ingest::fetch_remote_corpus(o);
  ::unsetenv("CITEDYN_TEST_KEY_NAME");
  ::unsetenv("CITEDYN_TEST_KEY_VALUE");
  ASSERT_FALSE(api.seen_keys.empty());
  for (const auto& k : api.seen_keys) EXPECT_EQ(k, "sekrit");
}

TEST(Fetch, RequestsPerSecondCap) {
  MockApi api;
  testing::TempDir dir;
  auto o = options(api, dir);
  o.max_requests_per_second = 20;
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = ingest::fetch_remote_corpus(o);
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  ASSERT_EQ(rep.requests, 3u);
  EXPECT_GE(secs, 2.0 / 20.0 - 1e-3);
}

}  // namespace
}  // namespace citedyn
