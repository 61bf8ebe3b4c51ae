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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "citedyn/metrics/heaps.hpp"
#include "citedyn/urn/checkpoint.hpp"
#include "citedyn/urn/model.hpp"

namespace citedyn::experiment {

// Per-replica metric columns, in output order.
inline const std::vector<std::string>& replica_metric_names() {
  static const std::vector<std::string> names{
      "gini_first",    "gini_last",    "gini_delta",    "gini_relative",
      "jaccard_first", "jaccard_last", "jaccard_delta", "jaccard_relative",
      "heaps_beta",    "heaps_r2",     "discovery_fraction"};
  return names;
}

struct SweepConfig {
  std::vector<double> alpha_grid{0.0, 0.1, 0.2, 0.3, 0.4, 0.5};
  int replicas = 20;
  std::uint64_t base_seed = 0;
  urn::ModelParams model;  // alpha and seed are set per job
  urn::CheckpointOptions checkpoints;
  int heaps_points_per_decade = 20;
  metrics::HeapsFitRange heaps_fit;
  std::filesystem::path output_dir;  // empty: nothing written
  int workers = 0;                   // 0: hardware concurrency
  bool write_logs = false;

  // Throws kUsage for an empty grid, negative alpha or replicas < 1.
  void validate() const;
};

// "desk": six alphas x 20 replicas; "paper": six alphas x 100 replicas.
SweepConfig profile_config(const std::string& profile);

// Applies a JSON document to `config`. Keys: profile, alpha_grid, replicas,
// base_seed, model{...}, metrics{checkpoints, top_k, gini_population,
// gini_counts, heaps_points_per_decade, heaps_min_citations,
// heaps_max_citations}, output_dir, workers, write_logs.
void apply_config_json(const std::string& text, SweepConfig& config);
SweepConfig load_sweep_config(const std::filesystem::path& path);

std::uint64_t replica_seed(std::uint64_t base_seed, double alpha, int replica);

struct ReplicaResult {
  double alpha = 0.0;
  int replica = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  int steps = 0;
  std::uint64_t total_papers = 0;
  std::map<std::string, double> values;  // keys from replica_metric_names()
};

struct Aggregate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation, 0 for one value
  std::size_t count = 0;  // finite values
};

struct AlphaSummary {
  double alpha = 0.0;
  std::size_t ok = 0;
  std::size_t failed = 0;
  std::map<std::string, Aggregate> metrics;
};

struct SweepResult {
  std::vector<ReplicaResult> replicas;  // alpha-grid order, then replica
  std::vector<AlphaSummary> summaries;  // alpha-grid order
};

// Simulates and measures one (alpha, replica) job. Never throws: failures
// come back with ok = false.
ReplicaResult run_replica(const SweepConfig& config, double alpha,
                          int replica);

Aggregate aggregate(const std::vector<double>& values);

// Runs every job on a worker pool, aggregates, and writes sweep.csv and
// replicas.csv (plus logs when asked) under output_dir. Throws kSweep when
// some alpha has no successful replica.
SweepResult run_sweep(const SweepConfig& config);

void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_replicas_csv(const SweepResult& result, std::ostream& out);

// Formats alpha for directory names and CSV cells.
std::string alpha_label(double alpha);

}  // namespace citedyn::experiment
