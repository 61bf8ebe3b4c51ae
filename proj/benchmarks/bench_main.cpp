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

#include <benchmark/benchmark.h>

#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "citedyn/metrics/attention.hpp"
#include "citedyn/metrics/canon.hpp"
#include "citedyn/metrics/heaps.hpp"
#include "citedyn/urn/model.hpp"
#include "citedyn/urn/weighted_sampler.hpp"

namespace {

using namespace citedyn;

// One draw plus one weight bump, the inner loop of a simulation step.
void BM_SamplerDrawUpdate(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  urn::WeightedSampler s(n);
  urn::Rng rng(1);
  for (std::size_t i = 0; i < n; ++i) s.set(i, 1 + rng.below(5));
  for (auto _ : state) {
    const std::size_t i = s.sample(rng);
    s.add(i, 1);
    benchmark::DoNotOptimize(i);
  }
}
BENCHMARK(BM_SamplerDrawUpdate)->Range(1 << 10, 1 << 20);

void BM_Run50k(benchmark::State& state) {
  urn::ModelParams p;
  p.alpha = static_cast<double>(state.range(0)) / 10.0;
  for (auto _ : state) {
    p.seed++;
    benchmark::DoNotOptimize(urn::run(p));
  }
}
BENCHMARK(BM_Run50k)->Arg(0)->Arg(1)->Arg(5)->Unit(benchmark::kMillisecond);

void BM_Gini(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<double> v(static_cast<std::size_t>(state.range(0)));
  for (auto& x : v) x = static_cast<double>(rng() % 1000);
  for (auto _ : state) benchmark::DoNotOptimize(metrics::gini(v));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Gini)->Range(1 << 8, 1 << 18)->Complexity();

void BM_PageRank(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  std::mt19937_64 rng(4);
  std::set<std::pair<std::uint32_t, std::uint32_t>> es;
  while (es.size() < static_cast<std::size_t>(n) * 8) {
    const auto a = static_cast<std::uint32_t>(rng() % n);
    const auto b = static_cast<std::uint32_t>(rng() % n);
    if (a != b) es.insert({a, b});
  }
  const std::vector<std::pair<std::uint32_t, std::uint32_t>> edges(es.begin(), es.end());
  for (auto _ : state) benchmark::DoNotOptimize(metrics::pagerank(n, edges));
}
BENCHMARK(BM_PageRank)->Range(1 << 8, 1 << 15)->Unit(benchmark::kMillisecond);

void BM_HeapsCurve(benchmark::State& state) {
  urn::ModelParams p;
  p.alpha = 0.1;
  p.seed = 5;
  const auto stream = urn::run(p).citation_stream();
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics::heaps_fit(metrics::heaps_curve(stream)));
  }
}
BENCHMARK(BM_HeapsCurve)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
