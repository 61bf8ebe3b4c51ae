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

#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "citedyn/error.hpp"
#include "citedyn/experiment/analyze.hpp"
#include "citedyn/experiment/sweep.hpp"
#include "test_util.hpp"

namespace citedyn::experiment {
namespace {

using testing::TempDir;

SweepConfig small_config() {
  SweepConfig c;
  c.alpha_grid = {0.0, 0.3};
  c.replicas = 3;
  c.base_seed = 7;
  c.model.target_total_papers = 6000;
  c.checkpoints.population_checkpoints = {500, 3000};
  c.workers = 2;
  return c;
}

// ------------------------------------------------------------------- sweep

TEST(ReplicaSeed, DistinctAcrossGrid) {
  std::set<std::uint64_t> seeds;
  for (double a : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
    for (int r = 0; r < 1000; ++r) seeds.insert(replica_seed(42, a, r));
  }
  EXPECT_EQ(seeds.size(), 6000u);
  EXPECT_NE(replica_seed(1, 0.1, 0), replica_seed(2, 0.1, 0));
  EXPECT_EQ(replica_seed(1, 0.1, 3), replica_seed(1, 0.1, 3));
}

TEST(Aggregate, SampleStatsSkipNonFinite) {
  const Aggregate a = aggregate({1.0, 2.0, 3.0, NAN});
  EXPECT_EQ(a.count, 3u);
  EXPECT_DOUBLE_EQ(a.mean, 2.0);
  EXPECT_DOUBLE_EQ(a.stddev, 1.0);
  const Aggregate one = aggregate({5.0});
  EXPECT_EQ(one.stddev, 0.0);
}

TEST(SweepConfigTest, Validation) {
  auto usage = [](auto mutate) {
    SweepConfig c;
    mutate(c);
    try {
      c.validate();
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kUsage;
    }
    return false;
  };
  EXPECT_TRUE(usage([](SweepConfig& c) { c.alpha_grid.clear(); }));
  EXPECT_TRUE(usage([](SweepConfig& c) { c.alpha_grid = {0.1, -0.1}; }));
  EXPECT_TRUE(usage([](SweepConfig& c) { c.alpha_grid = {0.1, 0.1}; }));
  EXPECT_TRUE(usage([](SweepConfig& c) { c.replicas = 0; }));
  EXPECT_TRUE(usage([](SweepConfig& c) { c.model.p = 2.0; }));
  EXPECT_EQ(profile_config("desk").replicas, 20);
  EXPECT_EQ(profile_config("paper").replicas, 100);
  EXPECT_THROW(profile_config("laptop"), Error);
}

TEST(SweepConfigTest, JsonOverrides) {
  SweepConfig c;
  apply_config_json(R"({"profile": "paper", "alpha_grid": [0.05, 0.15],
                        "base_seed": 9,
                        "model": {"p": 0.7, "n_ref": 12},
                        "metrics": {"checkpoints": [1000, 2000], "top_k": 20,
                                    "gini_population": "cited",
                                    "gini_counts": "step"}})",
                    c);
  EXPECT_EQ(c.replicas, 100);
  EXPECT_EQ(c.alpha_grid, (std::vector<double>{0.05, 0.15}));
  EXPECT_EQ(c.base_seed, 9u);
  EXPECT_EQ(c.model.p, 0.7);
  EXPECT_EQ(c.model.n_ref, 12);
  EXPECT_EQ(c.checkpoints.population_checkpoints,
            (std::vector<std::uint64_t>{1000, 2000}));
  EXPECT_EQ(c.checkpoints.top_k, 20);
  EXPECT_EQ(c.checkpoints.gini_population, metrics::GiniPopulation::kCited);
  EXPECT_EQ(c.checkpoints.gini_counts, urn::CountBasis::kStep);

  SweepConfig d;
  EXPECT_THROW(apply_config_json(R"({"replica": 3})", d), Error);
  EXPECT_THROW(apply_config_json(R"({"model": {"q": 1}})", d), Error);
  EXPECT_THROW(apply_config_json("{", d), Error);
}

TEST(Sweep, DeterministicAcrossWorkerCounts) {
  SweepConfig c = small_config();
  const SweepResult a = run_sweep(c);
  c.workers = 1;
  const SweepResult b = run_sweep(c);
  std::ostringstream sa, sb, ra, rb;
  write_sweep_csv(a, sa);
  write_sweep_csv(b, sb);
  write_replicas_csv(a, ra);
  write_replicas_csv(b, rb);
  EXPECT_EQ(sa.str(), sb.str());
  EXPECT_EQ(ra.str(), rb.str());
  ASSERT_EQ(a.replicas.size(), 6u);
  for (const auto& r : a.replicas) {
    EXPECT_TRUE(r.ok) << r.error;
    EXPECT_EQ(r.total_papers, 6000u);
    for (const auto& name : replica_metric_names()) {
      EXPECT_TRUE(r.values.count(name)) << name;
    }
  }
  ASSERT_EQ(a.summaries.size(), 2u);
  EXPECT_EQ(a.summaries[0].ok, 3u);
}

TEST(Sweep, WritesFilesAndLogs) {
  TempDir dir;
  SweepConfig c = small_config();
  c.alpha_grid = {0.2};
  c.replicas = 2;
  c.output_dir = dir.path();
  c.write_logs = true;
  run_sweep(c);
  EXPECT_TRUE(std::filesystem::exists(dir / "sweep.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "replicas.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "alpha=0.2" / "replica=1.jsonl"));
  const std::string text = testing::slurp(dir / "sweep.csv");
  EXPECT_EQ(text.rfind("alpha,metric,replicas_ok,replicas_failed,n,mean,std", 0), 0u);
}

TEST(Sweep, FailingReplicasAreReported) {
  SweepConfig c = small_config();
  c.alpha_grid = {0.1};
  c.replicas = 2;
  c.checkpoints.population_checkpoints = {100000};  // never reached
  try {
    run_sweep(c);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kSweep);
  }
  const ReplicaResult r = run_replica(c, 0.1, 0);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.error.find("100000"), std::string::npos);
}

// ----------------------------------------------------------------- analyze

TEST(Analyze, MetricSelection) {
  EXPECT_EQ(parse_metric_selection("all").size(), metric_groups().size());
  EXPECT_EQ(parse_metric_selection("gini,heaps"),
            (std::set<std::string>{"gini", "heaps"}));
  EXPECT_THROW(parse_metric_selection(""), Error);
  EXPECT_THROW(parse_metric_selection("gini,bogus"), Error);
  AnalyzeOptions o;
  try {
    analyze_corpus(testing::random_corpus(1, 50), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kUsage);
  }
}

TEST(Analyze, SingleYearGini) {
  const auto c = testing::make_corpus({{"a", 2000}, {"b", 2000}, {"c", 2000}},
                                      {{"b", "a"}, {"c", "a"}, {"c", "b"}});
  AnalyzeOptions o;
  o.metrics = {"gini"};
  const Analysis a = analyze_corpus(c, o);
  ASSERT_EQ(a.series.size(), 1u);
  EXPECT_EQ(a.series[0].size(), 1u);
  ASSERT_TRUE(a.summary.gini.has_value());
  EXPECT_EQ(a.summary.gini->absolute, 0.0);
}

TEST(Analyze, SummaryJsonRoundTripAndFiles) {
  TempDir dir;
  AnalyzeOptions o;
  o.metrics = parse_metric_selection("publications,heaps,gini,attention");
  o.corpus_name = "rand";
  const Analysis a = analyze_corpus(testing::random_corpus(4, 800), o);
  write_analysis(a, dir.path());
  const CorpusSummary back = read_summary(dir / "summary.json");
  EXPECT_EQ(back.corpus, "rand");
  EXPECT_EQ(back.papers, a.summary.papers);
  ASSERT_TRUE(back.growth && a.summary.growth);
  EXPECT_EQ(back.growth->slope, a.summary.growth->slope);
  ASSERT_TRUE(back.heaps);
  EXPECT_EQ(back.heaps->slope, a.summary.heaps->slope);
  EXPECT_EQ(summary_to_json(back), summary_to_json(a.summary));
  EXPECT_TRUE(std::filesystem::exists(dir / "heaps.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir / "publications.csv"));
}

// Papers per year follow round(n0 e^{alpha (y - y0)}); references are random.
ingest::Corpus growing_corpus(double alpha, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<ingest::PaperRecord> papers;
  for (int y = 1980; y <= 2019; ++y) {
    const auto n = static_cast<int>(std::lround(30.0 * std::exp(alpha * (y - 1980))));
    for (int i = 0; i < n; ++i) {
      papers.push_back({"g" + std::to_string(papers.size()), y, true});
    }
  }
  std::vector<ingest::CitationEdge> edges;
  for (std::size_t i = 1; i < papers.size(); ++i) {
    std::set<std::size_t> refs;
    for (int r = 0; r < 5; ++r) refs.insert(rng() % i);
    for (auto j : refs) {
      edges.push_back({static_cast<ingest::PaperIndex>(i),
                       static_cast<ingest::PaperIndex>(j)});
    }
  }
  return ingest::Corpus(std::move(papers), std::move(edges));
}

TEST(Summarize, RecoversGrowthRates) {
  std::vector<CorpusSummary> sums;
  AnalyzeOptions o;
  o.metrics = parse_metric_selection("publications,heaps,gini");
  o.gini_population = metrics::GiniPopulation::kAllPublished;
  for (double alpha : {0.01, 0.05, 0.1}) {
    o.corpus_name = "a" + metrics::format_number(alpha);
    const Analysis a = analyze_corpus(growing_corpus(alpha, 3), o);
    ASSERT_TRUE(a.summary.growth.has_value());
    EXPECT_NEAR(a.summary.growth->slope, alpha, 0.003) << alpha;
    sums.push_back(a.summary);
  }
  const DisciplineReport r = summarize_disciplines(sums, GiniDeltaKind::kAbsolute);
  ASSERT_EQ(r.rows.size(), 3u);
  EXPECT_EQ(r.rows[0].corpus, "a0.01");
  std::ostringstream csv;
  write_report_csv(r, csv);
  EXPECT_NE(csv.str().find("a0.05"), std::string::npos);
  EXPECT_FALSE(report_to_json(r).empty());

  sums.pop_back();
  EXPECT_THROW(summarize_disciplines(sums), Error);
}

CorpusSummary fake(const std::string& name, double alpha, double beta, double g) {
  CorpusSummary s;
  s.corpus = name;
  s.growth = metrics::FitResult{alpha, 1.0, 1.0, 40};
  s.heaps = metrics::FitResult{beta, 1.0, 1.0, 40};
  metrics::GiniVariation v;
  v.from_value = 0.5;
  v.to_value = 0.5 + g;
  v.absolute = g;
  v.relative = g / 0.5;
  s.gini = v;
  return s;
}

TEST(Summarize, DegenerateAndAnticorrelated) {
  const std::vector<CorpusSummary> same{fake("a", 0.1, 0.7, 0.1),
                                        fake("b", 0.1, 0.7, 0.1),
                                        fake("c", 0.1, 0.7, 0.1)};
  try {
    summarize_disciplines(same);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateRegressor);
  }
  const std::vector<CorpusSummary> anti{fake("a", 0.01, 0.80, 0.02),
                                        fake("b", 0.05, 0.75, 0.06),
                                        fake("c", 0.10, 0.70, 0.12),
                                        fake("d", 0.12, 0.69, 0.13)};
  const DisciplineReport r = summarize_disciplines(anti);
  EXPECT_LT(r.alpha_beta.pearson_r, -0.99);
  EXPECT_GT(r.alpha_gini.pearson_r, 0.99);
  EXPECT_NEAR(r.rows[1].gini_delta, 0.12, 1e-12);
}

}  // namespace
}  // namespace citedyn::experiment
