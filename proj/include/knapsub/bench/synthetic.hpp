// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Seeded synthetic graphs for runs without downloaded data.

#ifndef KNAPSUB_BENCH_SYNTHETIC_HPP_
#define KNAPSUB_BENCH_SYNTHETIC_HPP_

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "knapsub/core.hpp"
#include "knapsub/objectives.hpp"

namespace knapsub::bench {

/// Preferential-attachment graph: vertices `0..degree` start as a clique and
/// every later vertex links to `degree` distinct earlier vertices chosen
/// with probability proportional to their current degree. Heavy-tailed
/// degrees mimic the social graphs the coverage benchmark targets.
inline Adjacency preferential_attachment_graph(std::size_t n, std::size_t degree,
                                               std::uint64_t seed) {
  if (degree == 0) throw InvalidArgument("attachment degree must be positive");
  Adjacency adj(n);
  std::mt19937_64 rng(seed);
  // Every edge endpoint appears once here, so a uniform draw from it is a
  // degree-proportional draw over vertices.
  std::vector<ElementId> endpoints;
  const std::size_t core = std::min(n, degree + 1);
  for (ElementId u = 0; u < core; ++u) {
    for (ElementId v = u + 1; v < core; ++v) {
      adj[u].push_back(v);
      adj[v].push_back(u);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  std::vector<ElementId> picked;
  for (ElementId v = static_cast<ElementId>(core); v < n; ++v) {
    picked.clear();
    std::uniform_int_distribution<std::size_t> draw(0, endpoints.size() - 1);
    while (picked.size() < degree) {
      const ElementId u = endpoints[draw(rng)];
      if (std::find(picked.begin(), picked.end(), u) == picked.end()) {
        picked.push_back(u);
      }
    }
    for (ElementId u : picked) {
      adj[u].push_back(v);
      adj[v].push_back(u);
      endpoints.push_back(u);
      endpoints.push_back(v);
    }
  }
  for (auto& neighbours : adj) std::sort(neighbours.begin(), neighbours.end());
  return adj;
}

}  // namespace knapsub::bench

#endif  // KNAPSUB_BENCH_SYNTHETIC_HPP_
