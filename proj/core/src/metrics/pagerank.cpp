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

#include <cmath>
#include <string>

#include "citedyn/metrics/canon.hpp"

namespace citedyn::metrics {

std::vector<double> pagerank(
    std::size_t node_count,
    std::span<const std::pair<std::uint32_t, std::uint32_t>> edges,
    const PageRankOptions& options) {
  if (node_count == 0) fail(ErrorKind::kDomain, "pagerank of an empty graph");
  if (!(options.damping >= 0.0 && options.damping < 1.0)) {
    fail(ErrorKind::kDomain, "pagerank damping must be in [0, 1)");
  }
  const double n = static_cast<double>(node_count);
  std::vector<std::uint32_t> out_degree(node_count, 0);
  for (const auto& [from, to] : edges) {
    if (from >= node_count || to >= node_count) {
      fail(ErrorKind::kDomain, "pagerank edge endpoint out of range");
    }
    ++out_degree[from];
  }

  std::vector<double> rank(node_count, 1.0 / n);
  std::vector<double> next(node_count);
  double residual = 0.0;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < node_count; ++i) {
      if (out_degree[i] == 0) dangling += rank[i];
    }
    const double base =
        (1.0 - options.damping) / n + options.damping * dangling / n;
    std::fill(next.begin(), next.end(), base);
    for (const auto& [from, to] : edges) {
      next[to] += options.damping * rank[from] / out_degree[from];
    }
    residual = 0.0;
    for (std::size_t i = 0; i < node_count; ++i) {
      residual += std::abs(next[i] - rank[i]);
    }
    rank.swap(next);
    if (residual < options.tolerance) return rank;
  }
  fail(ErrorKind::kNonConvergence,
       "pagerank did not converge in " +
           std::to_string(options.max_iterations) +
           " iterations; residual " + format_number(residual));
}

std::vector<double> pagerank(const CitationGraph& graph,
                             const PageRankOptions& options) {
  return pagerank(graph.nodes.size(), graph.edges, options);
}

}  // namespace citedyn::metrics
