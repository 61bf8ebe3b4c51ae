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

#include "citedyn/urn/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "citedyn/error.hpp"

namespace citedyn::urn {

void ModelParams::validate() const {
  auto bad = [](const std::string& what) {
    fail(ErrorKind::kValidation, "invalid model parameters: " + what);
  };
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) bad("alpha must be >= 0");
  if (n0 && !(*n0 > 0.0 && std::isfinite(*n0))) bad("n0 must be > 0");
  if (!(p >= 0.0 && p <= 1.0)) bad("p must lie in [0, 1]");
  if (n_ref < 1) bad("n_ref must be >= 1");
  if (visibility_window < 0) bad("visibility_window must be >= 0");
  if (init_s_size < 1) bad("init_s_size must be >= 1");
  if (init_s_count_range.min < 1 ||
      init_s_count_range.max < init_s_count_range.min) {
    bad("init_s_count_range must satisfy 1 <= min <= max");
  }
  if (init_u_size < 0) bad("init_u_size must be >= 0");
  if (init_u_age_range.min < 0 ||
      init_u_age_range.max < init_u_age_range.min ||
      init_u_age_range.max > visibility_window) {
    bad("init_u_age_range must satisfy 0 <= min <= max <= visibility_window");
  }
  if (target_total_papers <=
      static_cast<std::uint64_t>(init_s_size) +
          static_cast<std::uint64_t>(init_u_size)) {
    bad("target_total_papers must exceed the initial urn sizes");
  }
}

std::uint64_t arrivals_at(const ModelParams& params, int t) {
  if (t < 0) fail(ErrorKind::kDomain, "arrivals_at needs t >= 0");
  const double x = params.arrival_scale() * std::exp(params.alpha * t);
  constexpr double kCap = 1e18;
  if (!(x < kCap)) return static_cast<std::uint64_t>(kCap);
  const auto n = static_cast<std::uint64_t>(std::floor(x + 0.5));
  return std::max<std::uint64_t>(n, 1);
}

void CitedUrn::add(PaperId id, std::uint32_t delta) {
  if (id >= counts_.size()) {
    counts_.resize(std::max<std::size_t>(id + 1, counts_.size() * 2), 0);
  }
  if (counts_[id] == 0) members_.push_back(id);
  counts_[id] += delta;
  total_weight_ += delta;
  sampler_.set(id, counts_[id]);
}

void CitedUrn::suspend(PaperId id) {
  if (!contains(id) || sampler_.weight(id) == 0) return;
  sampler_.set(id, 0);
  ++suspended_;
}

void CitedUrn::restore(PaperId id) {
  if (!contains(id) || sampler_.weight(id) != 0) return;
  sampler_.set(id, counts_[id]);
  --suspended_;
}

std::optional<int> UncitedUrn::age(PaperId id) const {
  if (!contains(id)) return std::nullopt;
  return entries_[static_cast<std::size_t>(position_[id])].age;
}

void UncitedUrn::insert(PaperId id, int age) {
  if (id >= position_.size()) {
    position_.resize(std::max<std::size_t>(id + 1, position_.size() * 2), -1);
  }
  if (position_[id] >= 0) return;
  position_[id] = static_cast<std::int64_t>(entries_.size());
  entries_.push_back({id, age});
}

void UncitedUrn::remove(PaperId id) {
  if (!contains(id)) return;
  const auto pos = static_cast<std::size_t>(position_[id]);
  const Entry last = entries_.back();
  entries_[pos] = last;
  position_[last.id] = static_cast<std::int64_t>(pos);
  entries_.pop_back();
  position_[id] = -1;
}

std::vector<PaperId> UncitedUrn::age_and_expire(int window) {
  std::vector<PaperId> expelled;
  std::size_t kept = 0;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    Entry e = entries_[i];
    ++e.age;
    if (e.age > window) {
      expelled.push_back(e.id);
      position_[e.id] = -1;
      continue;
    }
    position_[e.id] = static_cast<std::int64_t>(kept);
    entries_[kept++] = e;
  }
  entries_.resize(kept);
  return expelled;
}

std::vector<PaperId> StepRecord::citations() const {
  std::vector<PaperId> out;
  out.reserve(citation_count());
  for (const PaperEntry& p : papers) {
    for (const Reference& r : p.refs) out.push_back(r.id);
  }
  return out;
}

std::size_t StepRecord::citation_count() const {
  std::size_t n = 0;
  for (const PaperEntry& p : papers) n += p.refs.size();
  return n;
}

bool StepRecord::has_short_list(int n_ref) const {
  return std::any_of(papers.begin(), papers.end(), [&](const PaperEntry& p) {
    return p.refs.size() < static_cast<std::size_t>(n_ref);
  });
}

std::uint64_t EventLog::total_papers() const {
  std::uint64_t total = initial_papers();
  for (const StepRecord& s : steps) total += s.arrivals;
  return total;
}

int EventLog::birth_step(PaperId id) const {
  for (const auto& [pid, age] : initial_uncited) {
    if (pid == id) return -1 - age;
  }
  for (const auto& entry : initial_cited) {
    if (entry.first == id) return -(params.init_u_age_range.max + 2);
  }
  std::uint64_t first = initial_papers();
  for (const StepRecord& s : steps) {
    if (id >= first && id < first + s.arrivals) return s.t;
    first += s.arrivals;
  }
  fail(ErrorKind::kRange, "paper " + std::to_string(id) + " not in log");
}

std::vector<int> EventLog::birth_steps() const {
  std::vector<int> births(total_papers(), 0);
  for (const auto& entry : initial_cited) {
    births[entry.first] = -(params.init_u_age_range.max + 2);
  }
  for (const auto& [id, age] : initial_uncited) births[id] = -1 - age;
  for (const StepRecord& s : steps) {
    for (const PaperEntry& p : s.papers) births[p.id] = s.t;
  }
  return births;
}

std::vector<PaperId> EventLog::citation_stream() const {
  std::vector<PaperId> stream;
  for (const StepRecord& s : steps) {
    for (const PaperEntry& p : s.papers) {
      for (const Reference& r : p.refs) stream.push_back(r.id);
    }
  }
  return stream;
}

SimState init_state(const ModelParams& params) {
  params.validate();
  SimState state;
  state.params = params;
  state.rng = Rng(params.seed);
  PaperId id = 0;
  for (int i = 0; i < params.init_s_size; ++i) {
    const auto count = state.rng.uniform_int(params.init_s_count_range.min,
                                             params.init_s_count_range.max);
    state.cited.add(id++, static_cast<std::uint32_t>(count));
  }
  for (int i = 0; i < params.init_u_size; ++i) {
    const auto age = state.rng.uniform_int(params.init_u_age_range.min,
                                           params.init_u_age_range.max);
    state.uncited.insert(id++, static_cast<int>(age));
  }
  state.next_id = id;
  state.total_papers = id;
  return state;
}

EventLog log_header(const SimState& initial) {
  EventLog log;
  log.params = initial.params;
  for (PaperId id : initial.cited.members()) {
    log.initial_cited.emplace_back(id, initial.cited.count(id));
  }
  std::vector<std::pair<PaperId, int>> uncited;
  for (const auto& e : initial.uncited.entries()) {
    uncited.emplace_back(e.id, e.age);
  }
  std::sort(uncited.begin(), uncited.end());
  log.initial_uncited = std::move(uncited);
  return log;
}

bool ReferenceDraft::contains(PaperId id) const {
  return std::any_of(refs_.begin(), refs_.end(),
                     [id](const Reference& r) { return r.id == id; });
}

void ReferenceDraft::add(SimState& state, const Reference& ref) {
  refs_.push_back(ref);
  if (state.cited.contains(ref.id)) {
    state.cited.suspend(ref.id);
    ++from_cited_;
  } else {
    ++from_uncited_;
  }
}

void ReferenceDraft::release(SimState& state) {
  for (const Reference& r : refs_) state.cited.restore(r.id);
  refs_.clear();
  from_cited_ = 0;
  from_uncited_ = 0;
}

std::vector<Reference> ReferenceDraft::take(SimState& state) {
  std::vector<Reference> out = refs_;
  release(state);
  return out;
}

std::optional<Reference> draw_reference(SimState& state, Rng& rng,
                                        ReferenceDraft& draft) {
  const bool want_cited = rng.bernoulli(state.params.p);
  const bool cited_ok = state.cited.drawable() > 0;
  const bool uncited_ok = state.uncited.size() > draft.from_uncited();

  Reference ref;
  bool use_cited;
  if (want_cited) {
    if (cited_ok) {
      use_cited = true;
    } else if (uncited_ok) {
      use_cited = false;
      ref.fallback = true;
    } else {
      return std::nullopt;
    }
  } else {
    if (uncited_ok) {
      use_cited = false;
    } else if (cited_ok) {
      use_cited = true;
      ref.fallback = true;
    } else {
      return std::nullopt;
    }
  }

  if (use_cited) {
    ref.id = state.cited.draw(rng);
    ref.origin = Origin::kReinforced;
  } else {
    do {
      ref.id = state.uncited.draw(rng);
    } while (draft.contains(ref.id));
    ref.origin = Origin::kDiscovered;
  }
  draft.add(state, ref);
  return ref;
}

bool finished(const SimState& state) {
  return state.total_papers >= state.params.target_total_papers;
}

StepRecord step(SimState& state) {
  const ModelParams& params = state.params;
  StepRecord record;
  record.t = state.t;
  const std::uint64_t remaining =
      params.target_total_papers > state.total_papers
          ? params.target_total_papers - state.total_papers
          : 0;
  record.arrivals = std::min(arrivals_at(params, state.t), remaining);

  // Bibliographies against the step-start urns.
  record.papers.resize(record.arrivals);
  ReferenceDraft draft;
  for (std::uint64_t i = 0; i < record.arrivals; ++i) {
    PaperEntry& paper = record.papers[i];
    paper.id = state.next_id + static_cast<PaperId>(i);
    for (int r = 0; r < params.n_ref; ++r) {
      if (!draw_reference(state, state.rng, draft)) break;
    }
    paper.refs = draft.take(state);
  }

  // Apply C(t).
  for (const PaperEntry& paper : record.papers) {
    for (const Reference& r : paper.refs) {
      state.uncited.remove(r.id);
      state.cited.add(r.id, 1);
    }
  }
  state.uncited.age_and_expire(params.visibility_window);
  for (const PaperEntry& paper : record.papers) {
    state.uncited.insert(paper.id, 0);
  }
  state.next_id += static_cast<PaperId>(record.arrivals);
  state.total_papers += record.arrivals;
  ++state.t;
  return record;
}

EventLog run(const ModelParams& params) {
  SimState state = init_state(params);
  EventLog log = log_header(state);
  while (!finished(state)) {
    log.steps.push_back(step(state));
  }
  return log;
}

DiscoveryTally discovery_tally(const EventLog& log, int first_step) {
  DiscoveryTally tally;
  for (const StepRecord& s : log.steps) {
    if (s.t < first_step) continue;
    for (const PaperEntry& p : s.papers) {
      for (const Reference& r : p.refs) {
        ++tally.citations;
        if (r.origin == Origin::kDiscovered) ++tally.discovered;
        if (r.fallback) ++tally.fallbacks;
      }
    }
  }
  return tally;
}

}  // namespace citedyn::urn
