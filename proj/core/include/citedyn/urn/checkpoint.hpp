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
#include <cstdint>
#include <vector>

#include "citedyn/metrics/attention.hpp"
#include "citedyn/urn/model.hpp"

namespace citedyn::urn {

enum class CountBasis {
  kCumulative,  // citations received since the start of the run
  kStep,        // citations received in the checkpoint step only
};

struct CheckpointOptions {
  std::vector<std::uint64_t> population_checkpoints{500, 5000};
  std::ptrdiff_t top_k = 50;
  // kAllPublished counts every paper in the population, uncited ones with
  // zero citations; kCited restricts to papers cited at least once.
  metrics::GiniPopulation gini_population =
      metrics::GiniPopulation::kAllPublished;
  CountBasis gini_counts = CountBasis::kCumulative;
};

struct CheckpointValue {
  std::uint64_t checkpoint = 0;
  int step = 0;                 // first step with population >= checkpoint
  std::uint64_t population = 0; // papers after that step
  double gini = 0.0;
  double ranked_jaccard = 0.0;  // top-k of this step vs the previous step
};

struct CheckpointMetrics {
  std::vector<CheckpointValue> values;  // in checkpoint order
  // Last checkpoint minus first; relative divides by the first value (NaN
  // when that is zero).
  double gini_delta = 0.0;
  double gini_relative = 0.0;
  double jaccard_delta = 0.0;
  double jaccard_relative = 0.0;
};

// Replays the log. Throws kRange when a checkpoint is never reached or is
// reached in the first step (no previous ranking to compare with).
CheckpointMetrics checkpoint_metrics(const EventLog& log,
                                     const CheckpointOptions& options = {});

// Papers cited in `record` ordered by (citations in the step desc, birth
// step asc, id asc).
std::vector<PaperId> step_ranking(const StepRecord& record,
                                  const std::vector<int>& birth_steps);

}  // namespace citedyn::urn
