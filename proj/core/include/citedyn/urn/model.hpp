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
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "citedyn/urn/rng.hpp"
#include "citedyn/urn/weighted_sampler.hpp"

namespace citedyn::urn {

using PaperId = std::uint32_t;

struct IntRange {
  int min = 0;
  int max = 0;

  friend bool operator==(const IntRange&, const IntRange&) = default;
};

struct ModelParams {
  double alpha = 0.0;                // growth exponent per step
  std::optional<double> n0;          // default: (init_s_size + init_u_size) / 2
  double p = 0.8;                    // probability of drawing from the cited urn
  int n_ref = 10;                    // references per paper
  int visibility_window = 2;         // steps an uncited paper stays discoverable
  int init_s_size = 200;
  IntRange init_s_count_range{1, 3};
  int init_u_size = 100;
  IntRange init_u_age_range{1, 2};
  std::uint64_t target_total_papers = 50000;
  std::uint64_t seed = 0;

  double arrival_scale() const {
    return n0.value_or((init_s_size + init_u_size) / 2.0);
  }

  // Throws Error(kValidation) describing the first violated constraint.
  void validate() const;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

// round-half-up(n0 * exp(alpha * t)), at least 1.
std::uint64_t arrivals_at(const ModelParams& params, int t);

// Urn of already-cited papers; each paper is drawn with probability
// proportional to its citation count.
class CitedUrn {
 public:
  bool contains(PaperId id) const {
    return id < counts_.size() && counts_[id] > 0;
  }
  std::uint32_t count(PaperId id) const {
    return id < counts_.size() ? counts_[id] : 0;
  }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  // Sum of counts, including suspended papers.
  std::uint64_t total_weight() const { return total_weight_; }
  // Members in order of first insertion.
  std::span<const PaperId> members() const { return members_; }

  // Inserts the paper or raises its count by `delta` (> 0).
  void add(PaperId id, std::uint32_t delta);

  // A suspended paper keeps its count but cannot be drawn until restored.
  void suspend(PaperId id);
  void restore(PaperId id);
  std::size_t drawable() const { return members_.size() - suspended_; }

  // Requires drawable() > 0.
  PaperId draw(Rng& rng) const {
    return static_cast<PaperId>(sampler_.sample(rng));
  }

 private:
  std::vector<std::uint32_t> counts_;
  std::vector<PaperId> members_;
  WeightedSampler sampler_;
  std::uint64_t total_weight_ = 0;
  std::size_t suspended_ = 0;
};

// Urn of recent uncited papers, sampled uniformly.
class UncitedUrn {
 public:
  struct Entry {
    PaperId id = 0;
    int age = 0;
  };

  bool contains(PaperId id) const {
    return id < position_.size() && position_[id] >= 0;
  }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::span<const Entry> entries() const { return entries_; }
  std::optional<int> age(PaperId id) const;

  void insert(PaperId id, int age);
  void remove(PaperId id);

  // Ages every member by one step and expels those older than `window`.
  // Returns the expelled ids in urn order.
  std::vector<PaperId> age_and_expire(int window);

  PaperId draw(Rng& rng) const {
    return entries_[rng.below(entries_.size())].id;
  }

 private:
  std::vector<Entry> entries_;
  std::vector<std::int64_t> position_;  // id -> index in entries_, -1 if absent
};

enum class Origin : std::uint8_t { kReinforced, kDiscovered };

struct Reference {
  PaperId id = 0;
  Origin origin = Origin::kReinforced;
  bool fallback = false;  // designated urn could not supply a paper

  friend bool operator==(const Reference&, const Reference&) = default;
};

struct PaperEntry {
  PaperId id = 0;
  std::vector<Reference> refs;

  friend bool operator==(const PaperEntry&, const PaperEntry&) = default;
};

struct StepRecord {
  int t = 0;
  std::uint64_t arrivals = 0;
  std::vector<PaperEntry> papers;

  // Concatenated reference lists, C(t).
  std::vector<PaperId> citations() const;
  std::size_t citation_count() const;
  bool has_short_list(int n_ref) const;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct EventLog {
  ModelParams params;
  std::vector<std::pair<PaperId, std::uint32_t>> initial_cited;  // id, count
  std::vector<std::pair<PaperId, int>> initial_uncited;          // id, age
  std::vector<StepRecord> steps;

  std::uint64_t initial_papers() const {
    return initial_cited.size() + initial_uncited.size();
  }
  std::uint64_t total_papers() const;
  // Step in which the paper arrived; initial papers get negative steps, the
  // cited seeds oldest.
  int birth_step(PaperId id) const;
  // birth_step for every id in [0, total_papers()).
  std::vector<int> birth_steps() const;
  // Every reference of every step in order.
  std::vector<PaperId> citation_stream() const;

  friend bool operator==(const EventLog&, const EventLog&) = default;
};

struct SimState {
  ModelParams params;
  Rng rng;
  CitedUrn cited;
  UncitedUrn uncited;
  int t = 0;
  std::uint64_t total_papers = 0;
  PaperId next_id = 0;
};

// Seeds both urns from params.seed.
SimState init_state(const ModelParams& params);
// The initial urn contents as recorded in an event log header.
EventLog log_header(const SimState& initial);

// One bibliography under construction. Papers drawn from the cited urn are
// suspended there until release(), which rules out repeats within the list.
class ReferenceDraft {
 public:
  std::span<const Reference> refs() const { return refs_; }
  std::size_t size() const { return refs_.size(); }
  bool contains(PaperId id) const;
  std::size_t from_cited() const { return from_cited_; }
  std::size_t from_uncited() const { return from_uncited_; }

  void add(SimState& state, const Reference& ref);
  void release(SimState& state);
  std::vector<Reference> take(SimState& state);

 private:
  std::vector<Reference> refs_;
  std::size_t from_cited_ = 0;
  std::size_t from_uncited_ = 0;
};

// Draws one reference against the current urns: the cited urn with
// probability p, otherwise the uncited urn, falling back to the other urn
// when the chosen one has nothing left outside the draft. Adds the result to
// the draft. nullopt when neither urn can supply a new paper.
std::optional<Reference> draw_reference(SimState& state, Rng& rng,
                                        ReferenceDraft& draft);

// Advances one step: arrivals draw bibliographies against the urns as they
// stood at step start, then citations are applied, uncited papers age and
// expire, and the new papers join the uncited urn at age 0. The final step
// is truncated so the total lands exactly on target_total_papers.
StepRecord step(SimState& state);

bool finished(const SimState& state);

// Full run until target_total_papers is reached. Deterministic in params.
EventLog run(const ModelParams& params);

struct DiscoveryTally {
  std::uint64_t citations = 0;
  std::uint64_t discovered = 0;
  std::uint64_t fallbacks = 0;

  double fraction() const {
    return citations == 0 ? 0.0
                          : static_cast<double>(discovered) /
                                static_cast<double>(citations);
  }
};

// Origin tags over the whole log (or from `first_step` on).
DiscoveryTally discovery_tally(const EventLog& log, int first_step = 0);

}  // namespace citedyn::urn
