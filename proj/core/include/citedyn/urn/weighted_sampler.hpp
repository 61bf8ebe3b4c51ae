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

#include "citedyn/urn/rng.hpp"

namespace citedyn::urn {

// Fenwick (binary indexed) tree over non-negative integer weights. Sampling
// an index proportionally to its weight and updating a weight are both
// O(log n). Capacity grows by doubling.
class WeightedSampler {
 public:
  WeightedSampler() = default;
  explicit WeightedSampler(std::size_t capacity) { reserve(capacity); }

  std::size_t capacity() const { return weights_.size(); }
  std::uint64_t total() const { return total_; }
  std::uint64_t weight(std::size_t i) const {
    return i < weights_.size() ? weights_[i] : 0;
  }

  void reserve(std::size_t capacity) {
    if (capacity <= weights_.size()) return;
    std::size_t size = weights_.empty() ? 1 : weights_.size();
    while (size < capacity) size *= 2;
    weights_.resize(size, 0);
    rebuild();
  }

  void set(std::size_t i, std::uint64_t w) {
    reserve(i + 1);
    const std::uint64_t old = weights_[i];
    if (w == old) return;
    if (w > old) {
      add_to_tree(i, w - old, true);
      total_ += w - old;
    } else {
      add_to_tree(i, old - w, false);
      total_ -= old - w;
    }
    weights_[i] = w;
  }

  void add(std::size_t i, std::uint64_t delta) { set(i, weight(i) + delta); }

  // Smallest index whose inclusive prefix sum exceeds `target`;
  // requires target < total().
  std::size_t find(std::uint64_t target) const {
    std::size_t pos = 0;
    std::size_t step = highest_power_;
    while (step > 0) {
      const std::size_t next = pos + step;
      if (next <= tree_.size() - 1 && tree_[next] <= target) {
        target -= tree_[next];
        pos = next;
      }
      step >>= 1;
    }
    return pos;  // 1-based pos is the count of skipped slots
  }

  // Requires total() > 0.
  std::size_t sample(Rng& rng) const { return find(rng.below(total_)); }

 private:
  void rebuild() {
    tree_.assign(weights_.size() + 1, 0);
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      std::size_t j = i + 1;
      tree_[j] += weights_[i];
      const std::size_t parent = j + (j & (~j + 1));
      if (parent < tree_.size()) tree_[parent] += tree_[j];
    }
    highest_power_ = 1;
    while (highest_power_ * 2 <= weights_.size()) highest_power_ *= 2;
  }

  void add_to_tree(std::size_t i, std::uint64_t delta, bool increase) {
    for (std::size_t j = i + 1; j < tree_.size(); j += j & (~j + 1)) {
      if (increase) {
        tree_[j] += delta;
      } else {
        tree_[j] -= delta;
      }
    }
  }

  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> tree_;  // 1-based
  std::uint64_t total_ = 0;
  std::size_t highest_power_ = 0;
};

}  // namespace citedyn::urn
