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

// Shared fixtures for the test suites: the three-item tight instance, seeded
// random small instances and a brute-force optimum written independently of
// the library's subset enumeration.

#ifndef KNAPSUB_TESTS_SUPPORT_INSTANCES_HPP_
#define KNAPSUB_TESTS_SUPPORT_INSTANCES_HPP_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "knapsub/knapsub.hpp"

namespace knapsub::testing {

struct Case {
  std::string kind;
  Instance instance;
  AnyObjective objective;
};

/// Items e1, e2 (value 1/2, cost 1) and e3 (value 1/2 + eps, cost 1 + eps)
/// under K = 2, ids 0, 1, 2. The optimum {e1, e2} has value 1.
inline Case tight_example(double eps = 0.1) {
  auto values = std::make_shared<const ModularObjective>(
      std::vector<double>{0.5, 0.5, 0.5 + eps});
  Instance instance({{0, 1.0}, {1, 1.0}, {2, 1.0 + eps}}, 2.0);
  return {"tight", std::move(instance), AnyObjective(values)};
}

inline Adjacency random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution edge(p);
  Adjacency adj(n);
  for (ElementId u = 0; u < n; ++u) {
    for (ElementId v = u + 1; v < n; ++v) {
      if (edge(rng)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    }
  }
  return adj;
}

/// Coverage (even seeds) or modular (odd seeds) instance with n in [4, 12],
/// K in {3..8} and costs uniform in [1, K].
inline Case random_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919 + 17);
  std::uniform_int_distribution<std::size_t> size_dist(4, 12);
  std::uniform_int_distribution<int> k_dist(3, 8);
  const std::size_t n = size_dist(rng);
  const double capacity = k_dist(rng);
  std::uniform_real_distribution<double> cost_dist(1.0, capacity);
  std::vector<Element> elements(n);
  for (std::size_t i = 0; i < n; ++i) {
    elements[i] = {static_cast<ElementId>(i), cost_dist(rng)};
  }
  if (seed % 2 == 0) {
    std::uniform_real_distribution<double> p_dist(0.1, 0.5);
    auto graph = std::make_shared<const CoverageObjective>(
        random_graph(n, p_dist(rng), rng));
    return {"coverage", Instance(std::move(elements), capacity),
            AnyObjective(graph)};
  }
  std::uniform_real_distribution<double> value_dist(0.0, 1.0);
  std::vector<double> values(n);
  for (double& v : values) v = value_dist(rng);
  return {"modular", Instance(std::move(elements), capacity),
          AnyObjective(std::make_shared<const ModularObjective>(std::move(values)))};
}

/// Exhaustive optimum by include/exclude recursion with cost pruning.
template <SetFunction F>
double reference_opt(const Instance& instance, const F& f) {
  const auto& elements = instance.elements();
  IdSet chosen(instance.base_set());
  double best = f.value(chosen);
  auto rec = [&](auto&& self, std::size_t k, double cost) -> void {
    if (k == elements.size()) {
      best = std::max(best, f.value(chosen));
      return;
    }
    self(self, k + 1, cost);
    if (cost + elements[k].cost <= instance.capacity() * (1 + 1e-12)) {
      chosen.push_back(elements[k].id);
      self(self, k + 1, cost + elements[k].cost);
      chosen.pop_back();
    }
  };
  rec(rec, 0, 0.0);
  return best;
}

}  // namespace knapsub::testing

#endif  // KNAPSUB_TESTS_SUPPORT_INSTANCES_HPP_
