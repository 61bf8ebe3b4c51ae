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
#include <set>
#include <sstream>

#include "citedyn/error.hpp"
#include "citedyn/urn/checkpoint.hpp"
#include "citedyn/urn/event_log_io.hpp"
#include "citedyn/urn/model.hpp"
#include "citedyn/urn/rng.hpp"
#include "citedyn/urn/weighted_sampler.hpp"
#include "support/urn_invariants.hpp"

namespace citedyn::urn {
namespace {

ModelParams tiny() {
  ModelParams p;
  p.init_s_size = 1;
  p.init_s_count_range = {1, 1};
  p.init_u_size = 0;
  p.init_u_age_range = {0, 0};
  p.n0 = 1.0;
  p.n_ref = 1;
  p.target_total_papers = 10;
  return p;
}

std::string serialize(const EventLog& log) {
  std::ostringstream out;
  write_event_log(log, out);
  return out.str();
}

// ------------------------------------------------------------------- basics

TEST(Arrivals, RoundHalfUp) {
  ModelParams p;
  p.alpha = 0.5;
  p.n0 = 100.0;
  EXPECT_EQ(arrivals_at(p, 2), 272u);
  ModelParams flat;
  EXPECT_EQ(arrivals_at(flat, 0), 150u);
  EXPECT_EQ(arrivals_at(flat, 77), 150u);
  ModelParams half;
  half.n0 = 2.5;
  EXPECT_EQ(arrivals_at(half, 0), 3u);
}

TEST(Params, Validation) {
  auto bad = [](auto mutate) {
    ModelParams p;
    mutate(p);
    try {
      p.validate();
    } catch (const Error& e) {
      return e.kind() == ErrorKind::kValidation;
    }
    return false;
  };
  EXPECT_TRUE(bad([](ModelParams& p) { p.alpha = -0.1; }));
  EXPECT_TRUE(bad([](ModelParams& p) { p.p = 1.5; }));
  EXPECT_TRUE(bad([](ModelParams& p) { p.n_ref = 0; }));
  EXPECT_TRUE(bad([](ModelParams& p) { p.init_u_age_range = {1, 3}; }));
  EXPECT_TRUE(bad([](ModelParams& p) { p.target_total_papers = 300; }));
  EXPECT_TRUE(bad([](ModelParams& p) { p.n0 = 0.0; }));
  ModelParams ok;
  EXPECT_NO_THROW(ok.validate());
}

TEST(Init, UrnSizesAndWeights) {
  ModelParams p;
  double sum = 0.0;
  const int seeds = 10000;
  for (int s = 0; s < seeds; ++s) {
    p.seed = static_cast<std::uint64_t>(s);
    const SimState st = init_state(p);
    ASSERT_EQ(st.cited.size(), 200u);
    ASSERT_EQ(st.uncited.size(), 100u);
    ASSERT_GE(st.cited.total_weight(), 200u);
    ASSERT_LE(st.cited.total_weight(), 600u);
    for (const auto& e : st.uncited.entries()) {
      ASSERT_GE(e.age, 1);
      ASSERT_LE(e.age, 2);
      ASSERT_GE(e.id, 200u);
    }
    for (PaperId id : st.cited.members()) ASSERT_LT(id, 200u);
    sum += static_cast<double>(st.cited.total_weight());
  }
  EXPECT_NEAR(sum / seeds, 400.0, 3.0);
}

// ---------------------------------------------------------------- sampling

TEST(Rng, BelowIsUniform) {
  Rng rng(9);
  std::vector<int> hist(7, 0);
  const int n = 700000;
  for (int i = 0; i < n; ++i) ++hist[rng.below(7)];
  double chi2 = 0.0;
  for (int h : hist) chi2 += std::pow(h - n / 7.0, 2) / (n / 7.0);
  EXPECT_LT(chi2, 22.46);  // 6 dof, p = 0.001
}

TEST(WeightedSampler, ChiSquared) {
  WeightedSampler s;
  const std::vector<std::uint64_t> w{1, 2, 0, 3, 4, 10};
  for (std::size_t i = 0; i < w.size(); ++i) s.set(i, w[i]);
  EXPECT_EQ(s.total(), 20u);
  Rng rng(3);
  std::vector<int> hist(w.size(), 0);
  const int n = 1000000;
  for (int i = 0; i < n; ++i) ++hist[s.sample(rng)];
  EXPECT_EQ(hist[2], 0);
  double chi2 = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0) continue;
    const double e = n * static_cast<double>(w[i]) / 20.0;
    chi2 += std::pow(hist[i] - e, 2) / e;
  }
  EXPECT_LT(chi2, 18.47);  // 4 dof, p = 0.001
}

TEST(WeightedSampler, UpdatesAndGrowth) {
  WeightedSampler s;
  for (std::size_t i = 0; i < 1000; ++i) s.set(i, i % 3);
  s.set(5, 0);
  s.add(1000, 7);
  std::uint64_t total = 0;
  for (std::size_t i = 0; i <= 1000; ++i) total += s.weight(i);
  EXPECT_EQ(s.total(), total);
  // find() walks the cumulative weights exactly.
  std::uint64_t acc = 0;
  for (std::size_t i = 0; i <= 1000; ++i) {
    if (s.weight(i) == 0) continue;
    EXPECT_EQ(s.find(acc), i);
    EXPECT_EQ(s.find(acc + s.weight(i) - 1), i);
    acc += s.weight(i);
  }
}

TEST(DrawReference, AlwaysCitedWhenPIsOne) {
  ModelParams p;
  p.p = 1.0;
  SimState st = init_state(p);
  ReferenceDraft draft;
  for (int i = 0; i < 1000; ++i) {
    const auto r = draw_reference(st, st.rng, draft);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->origin, Origin::kReinforced);
    EXPECT_FALSE(r->fallback);
    draft.release(st);
  }
}

TEST(DrawReference, FallsBackWhenUncitedEmpty) {
  ModelParams p;
  p.p = 0.0;
  p.init_u_size = 0;
  p.init_u_age_range = {0, 0};
  SimState st = init_state(p);
  ReferenceDraft draft;
  for (int i = 0; i < 100; ++i) {
    const auto r = draw_reference(st, st.rng, draft);
    ASSERT_TRUE(r.has_value());
    EXPECT_EQ(r->origin, Origin::kReinforced);
    EXPECT_TRUE(r->fallback);
    draft.release(st);
  }
}

TEST(DrawReference, ExhaustionReturnsNothing) {
  ModelParams p = tiny();
  SimState st = init_state(p);
  ReferenceDraft draft;
  ASSERT_TRUE(draw_reference(st, st.rng, draft).has_value());
  EXPECT_FALSE(draw_reference(st, st.rng, draft).has_value());
  draft.release(st);
  EXPECT_EQ(st.cited.drawable(), 1u);
}

TEST(DrawReference, DiscoveredFractionMatchesP) {
  ModelParams p;
  p.seed = 11;
  SimState st = init_state(p);
  ReferenceDraft draft;
  const int n = 1000000;
  int discovered = 0;
  for (int i = 0; i < n; ++i) {
    const auto r = draw_reference(st, st.rng, draft);
    discovered += r->origin == Origin::kDiscovered;
    draft.release(st);
  }
  EXPECT_NEAR(static_cast<double>(discovered) / n, 0.2, 0.002);
}

TEST(DrawReference, NoDuplicatesWithinList) {
  ModelParams p;
  p.init_s_size = 5;
  p.init_u_size = 5;
  p.n_ref = 10;
  SimState st = init_state(p);
  for (int trial = 0; trial < 200; ++trial) {
    ReferenceDraft draft;
    while (draw_reference(st, st.rng, draft)) {
    }
    std::set<PaperId> ids;
    for (const auto& r : draft.refs()) ids.insert(r.id);
    EXPECT_EQ(ids.size(), 10u);
    draft.release(st);
  }
}

// ------------------------------------------------------------------- steps

TEST(Step, SingleDrawBookkeeping) {
  SimState st = init_state(tiny());
  const StepRecord r = step(st);
  ASSERT_EQ(r.arrivals, 1u);
  ASSERT_EQ(r.papers.size(), 1u);
  EXPECT_EQ(r.papers[0].id, 1u);
  ASSERT_EQ(r.papers[0].refs.size(), 1u);
  EXPECT_EQ(r.papers[0].refs[0].id, 0u);
  EXPECT_EQ(st.cited.count(0), 2u);
  EXPECT_EQ(st.cited.total_weight(), 2u);
  EXPECT_EQ(st.uncited.age(1), 0);
  EXPECT_EQ(st.total_papers, 2u);
  EXPECT_EQ(st.t, 1);
}

TEST(Step, UncitedPaperExpiresAfterAgeTwo) {
  ModelParams p = tiny();
  p.p = 1.0;
  SimState st = init_state(p);
  step(st);
  EXPECT_EQ(st.uncited.age(1), 0);
  step(st);
  EXPECT_EQ(st.uncited.age(1), 1);
  step(st);
  EXPECT_EQ(st.uncited.age(1), 2);
  step(st);
  EXPECT_FALSE(st.uncited.age(1).has_value());
  EXPECT_FALSE(st.cited.contains(1));
}

TEST(Step, CitationMovesPaperFromUncitedToCited) {
  ModelParams p = tiny();
  p.p = 0.0;
  SimState st = init_state(p);
  step(st);  // falls back to paper 0; paper 1 enters U
  const StepRecord r = step(st);
  ASSERT_EQ(r.papers[0].refs.size(), 1u);
  EXPECT_EQ(r.papers[0].refs[0].id, 1u);
  EXPECT_EQ(r.papers[0].refs[0].origin, Origin::kDiscovered);
  EXPECT_TRUE(st.cited.contains(1));
  EXPECT_FALSE(st.uncited.contains(1));
  EXPECT_EQ(st.cited.count(1), 1u);
}

TEST(Run, ConstantArrivalsStepCount) {
  ModelParams p;
  p.seed = 1;
  const EventLog log = run(p);
  EXPECT_EQ(log.steps.size(), 332u);
  EXPECT_EQ(log.total_papers(), 50000u);
  EXPECT_EQ(log.steps.back().arrivals, 50000u - 300u - 331u * 150u);
}

TEST(Run, GrowingRunHitsTargetExactly) {
  ModelParams p;
  p.alpha = 0.3;
  p.seed = 2;
  const EventLog log = run(p);
  EXPECT_EQ(log.total_papers(), 50000u);
  for (std::size_t i = 0; i + 1 < log.steps.size(); ++i) {
    EXPECT_EQ(log.steps[i].arrivals, arrivals_at(p, log.steps[i].t));
  }
  EXPECT_LE(log.steps.back().arrivals, arrivals_at(p, log.steps.back().t));
}

TEST(Run, DeterministicBytes) {
  ModelParams p;
  p.alpha = 0.1;
  p.seed = 99;
  p.target_total_papers = 5000;
  const std::string a = serialize(run(p));
  EXPECT_EQ(a, serialize(run(p)));
  p.seed = 100;
  EXPECT_NE(a, serialize(run(p)));
}

TEST(Run, DiscoveryNearOneFifth) {
  ModelParams p;
  p.alpha = 0.1;
  p.seed = 5;
  const DiscoveryTally t = discovery_tally(run(p));
  EXPECT_NEAR(t.fraction(), 0.2, 0.005);
  EXPECT_EQ(t.fallbacks, 0u);
}

// ------------------------------------------------------------- log format

TEST(EventLogIo, RoundTripWithFallbacks) {
  ModelParams p;
  p.p = 0.1;
  p.init_u_size = 3;
  p.n_ref = 30;
  p.target_total_papers = 1000;
  p.seed = 4;
  p.n0 = 20.0;
  const EventLog log = run(p);
  EXPECT_GT(discovery_tally(log).fallbacks, 0u);
  std::stringstream buf(serialize(log));
  const EventLog back = read_event_log(buf);
  EXPECT_EQ(back, log);
  EXPECT_EQ(serialize(back), serialize(log));
}

TEST(EventLogIo, ErrorsCarryLineNumbers) {
  ModelParams p = tiny();
  const std::string text = serialize(run(p));
  std::string broken = text;
  const auto second = broken.find('\n') + 1;
  broken.insert(second, "{not json\n");
  std::stringstream in(broken);
  try {
    read_event_log(in);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find(":2"), std::string::npos) << e.what();
  }
  // An unset n0 is written resolved.
  ModelParams implicit = tiny();
  implicit.n0.reset();
  std::stringstream resolved(serialize(run(implicit)));
  EXPECT_EQ(read_event_log(resolved).params.n0, implicit.arrival_scale());

  std::stringstream empty("");
  EXPECT_THROW(read_event_log(empty), Error);
}

// ------------------------------------------------------------- checkpoints

EventLog hand_log(int steps) {
  EventLog log;
  log.initial_cited = {{0, 1}, {1, 1}};
  PaperId next = 2;
  for (int t = 0; t < steps; ++t) {
    StepRecord s;
    s.t = t;
    s.arrivals = 2;
    for (int i = 0; i < 2; ++i) {
      PaperEntry e;
      e.id = next++;
      e.refs = {{0, Origin::kReinforced, false}, {1, Origin::kReinforced, false}};
      s.papers.push_back(e);
    }
    log.steps.push_back(s);
  }
  return log;
}

TEST(Checkpoints, EqualCountsAndStableRanking) {
  CheckpointOptions o;
  o.population_checkpoints = {6, 8};
  o.gini_population = metrics::GiniPopulation::kCited;
  o.gini_counts = CountBasis::kStep;
  const CheckpointMetrics m = checkpoint_metrics(hand_log(3), o);
  ASSERT_EQ(m.values.size(), 2u);
  EXPECT_EQ(m.values[0].step, 1);
  EXPECT_EQ(m.values[1].step, 2);
  for (const auto& v : m.values) {
    EXPECT_EQ(v.gini, 0.0);
    EXPECT_EQ(v.ranked_jaccard, 1.0);
  }
  EXPECT_EQ(m.gini_delta, 0.0);
  EXPECT_TRUE(std::isnan(m.gini_relative));
  EXPECT_EQ(m.jaccard_delta, 0.0);
}

TEST(Checkpoints, AllPublishedCumulative) {
  CheckpointOptions o;
  o.population_checkpoints = {6};
  const CheckpointMetrics m = checkpoint_metrics(hand_log(2), o);
  // counts {4, 4, 0, 0, 0, 0}: sum |x_i - x_j| = 64, 2 n^2 mean = 96.
  EXPECT_NEAR(m.values[0].gini, 64.0 / 96.0, 1e-15);
}

TEST(Checkpoints, UnreachableOrFirstStep) {
  CheckpointOptions o;
  o.population_checkpoints = {100};
  EXPECT_THROW(
      {
        try {
          checkpoint_metrics(hand_log(3), o);
        } catch (const Error& e) {
          EXPECT_EQ(e.kind(), ErrorKind::kRange);
          throw;
        }
      },
      Error);
  o.population_checkpoints = {4};
  EXPECT_THROW(checkpoint_metrics(hand_log(3), o), Error);
}

TEST(Checkpoints, StepRankingTieBreaks) {
  StepRecord r;
  r.papers = {{10, {{3, Origin::kReinforced, false}, {1, Origin::kReinforced, false}}},
              {11, {{2, Origin::kReinforced, false}, {1, Origin::kReinforced, false}}}};
  const std::vector<int> births{0, 0, -1, 0};
  EXPECT_EQ(step_ranking(r, births), (std::vector<PaperId>{1, 2, 3}));
}

// -------------------------------------------------------------- invariants

TEST(Invariants, FiftyRandomConfigurations) {
  Rng meta(2026);
  for (int c = 0; c < 50; ++c) {
    const ModelParams p = testing::random_config(meta);
    SCOPED_TRACE("config " + std::to_string(c));
    const EventLog log = run(p);
    EXPECT_EQ(testing::check_invariants(log), "");
    EXPECT_EQ(testing::log_bytes(log), testing::log_bytes(run(p)));
  }
}

TEST(Invariants, CheckerCatchesCorruption) {
  ModelParams p;
  p.target_total_papers = 2000;
  p.seed = 8;
  EventLog log = run(p);
  ASSERT_EQ(testing::check_invariants(log), "");
  EventLog dup = log;
  auto& refs = dup.steps[3].papers[0].refs;
  refs[1].id = refs[0].id;
  EXPECT_NE(testing::check_invariants(dup), "");
  EventLog wrong_urn = log;
  for (auto& r : wrong_urn.steps[2].papers[0].refs) {
    r.origin = r.origin == Origin::kReinforced ? Origin::kDiscovered
                                               : Origin::kReinforced;
  }
  EXPECT_NE(testing::check_invariants(wrong_urn), "");
}

}  // namespace
}  // namespace citedyn::urn
