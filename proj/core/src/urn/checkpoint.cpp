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

#include "citedyn/urn/checkpoint.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_map>

#include "citedyn/error.hpp"
#include "citedyn/metrics/canon.hpp"

namespace citedyn::urn {

std::vector<PaperId> step_ranking(const StepRecord& record,
                                  const std::vector<int>& birth_steps) {
  std::unordered_map<PaperId, std::uint32_t> counts;
  for (const PaperEntry& p : record.papers) {
    for (const Reference& r : p.refs) ++counts[r.id];
  }
  std::vector<std::pair<PaperId, std::uint32_t>> ranked(counts.begin(),
                                                        counts.end());
  std::sort(ranked.begin(), ranked.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    if (birth_steps[a.first] != birth_steps[b.first]) {
      return birth_steps[a.first] < birth_steps[b.first];
    }
    return a.first < b.first;
  });
  std::vector<PaperId> out;
  out.reserve(ranked.size());
  for (const auto& [id, c] : ranked) out.push_back(id);
  return out;
}

CheckpointMetrics checkpoint_metrics(const EventLog& log,
                                     const CheckpointOptions& options) {
  if (options.population_checkpoints.empty()) {
    fail(ErrorKind::kDomain, "no population checkpoints given");
  }
  const std::vector<int> births = log.birth_steps();
  std::vector<std::uint64_t> cumulative(births.size(), 0);
  std::vector<std::uint64_t> step_counts(births.size(), 0);

  CheckpointMetrics out;
  std::size_t next = 0;
  std::uint64_t population = log.initial_papers();
  for (std::size_t s = 0;
       s < log.steps.size() && next < options.population_checkpoints.size();
       ++s) {
    const StepRecord& record = log.steps[s];
    std::fill(step_counts.begin(), step_counts.end(), 0);
    for (const PaperEntry& p : record.papers) {
      for (const Reference& r : p.refs) {
        ++cumulative[r.id];
        ++step_counts[r.id];
      }
    }
    population += record.arrivals;
    while (next < options.population_checkpoints.size() &&
           population >= options.population_checkpoints[next]) {
      const std::uint64_t checkpoint = options.population_checkpoints[next];
      if (s == 0) {
        fail(ErrorKind::kRange,
             "checkpoint " + std::to_string(checkpoint) +
                 " reached in the first step; no previous ranking");
      }
      const auto& counts = options.gini_counts == CountBasis::kCumulative
                               ? cumulative
                               : step_counts;
      std::vector<std::uint64_t> values;
      if (options.gini_population == metrics::GiniPopulation::kAllPublished) {
        values.assign(counts.begin(),
                      counts.begin() + static_cast<std::ptrdiff_t>(population));
      } else {
        for (std::uint64_t c : counts) {
          if (c > 0) values.push_back(c);
        }
      }
      CheckpointValue v;
      v.checkpoint = checkpoint;
      v.step = record.t;
      v.population = population;
      v.gini = metrics::gini(std::span<const std::uint64_t>(values));
      v.ranked_jaccard = metrics::ranked_jaccard(
          step_ranking(log.steps[s - 1], births),
          step_ranking(record, births), options.top_k);
      out.values.push_back(v);
      ++next;
    }
  }
  if (next < options.population_checkpoints.size()) {
    fail(ErrorKind::kRange,
         "checkpoint " +
             std::to_string(options.population_checkpoints[next]) +
             " exceeds the run's final population " +
             std::to_string(population));
  }
  const CheckpointValue& first = out.values.front();
  const CheckpointValue& last = out.values.back();
  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  out.gini_delta = last.gini - first.gini;
  out.gini_relative = first.gini != 0.0 ? out.gini_delta / first.gini : kNaN;
  out.jaccard_delta = last.ranked_jaccard - first.ranked_jaccard;
  out.jaccard_relative = first.ranked_jaccard != 0.0
                             ? out.jaccard_delta / first.ranked_jaccard
                             : kNaN;
  return out;
}

}  // namespace citedyn::urn
