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

#ifndef KNAPSUB_EXACT_HPP_
#define KNAPSUB_EXACT_HPP_

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "knapsub/core.hpp"

namespace knapsub {

inline constexpr std::size_t kBruteForceLimit = 22;

/// Exact optimum by subset enumeration. Ties go to the lexicographically
/// smallest sorted id set. Refuses instances above kBruteForceLimit items.
template <SetFunction F>
Solution brute_force_opt(const Instance& instance, const F& oracle) {
  const std::size_t n = instance.size();
  if (n > kBruteForceLimit) {
    throw TooLarge("brute force supports at most " +
                   std::to_string(kBruteForceLimit) + " elements, got " +
                   std::to_string(n));
  }
  QueryLedger ledger(true);
  Evaluator<F> eval(instance, oracle, ledger);

  // Sorting by id makes index-order subsets come out already sorted.
  std::vector<Element> elements = instance.elements();
  std::sort(elements.begin(), elements.end(),
            [](const Element& a, const Element& b) { return a.id < b.id; });

  Solution best;
  bool have_best = false;
  IdSet ids;
  ids.reserve(n);
  const std::uint32_t subsets = std::uint32_t{1} << n;
  for (std::uint32_t mask = 0; mask < subsets; ++mask) {
    double cost = 0.0;
    ids.clear();
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::uint32_t{1} << k)) {
        cost += elements[k].cost;
        ids.push_back(elements[k].id);
      }
    }
    if (!fits_within(cost, instance.capacity())) continue;
    const double value = eval.value(ids);
    if (!have_best || value > best.value ||
        (value == best.value &&
         std::lexicographical_compare(ids.begin(), ids.end(), best.ids.begin(),
                                      best.ids.end()))) {
      best = {ids, value, cost};
      have_best = true;
    }
  }
  return best;
}

/// Certified upper bound on f(OPT) from one full greedy trace:
///   min( f(E), min_i [ f(G_i) + K · max_{e ∉ G_i} ρ(e | G_i) ] ).
/// The bound needs values of sets that may exceed the capacity, so the
/// ledger passed in must not enforce feasibility.
template <SetFunction F>
double upper_bound_opt(const Instance& instance, const F& oracle,
                       const GreedyTrace& trace, QueryLedger& ledger) {
  if (ledger.enforce_feasible()) {
    throw InvalidArgument("upper_bound_opt needs a non-enforcing ledger");
  }
  Evaluator<F> eval(instance, oracle, ledger);
  IdSet all;
  all.reserve(instance.size());
  for (const Element& e : instance.elements()) all.push_back(e.id);
  double bound = eval.value(all);

  IdSet prefix;
  double prefix_cost = 0.0;
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const double prefix_value = trace.steps[i].value;
    double max_density = 0.0;
    for (const Element& e : instance.elements()) {
      if (std::find(prefix.begin(), prefix.end(), e.id) != prefix.end()) {
        continue;
      }
      const double gain = eval.value_with(prefix, prefix_cost, e.id) - prefix_value;
      max_density = std::max(max_density, gain / e.cost);
    }
    bound = std::min(bound, prefix_value + instance.capacity() * max_density);
    if (i < trace.order.size()) {
      prefix.push_back(trace.order[i]);
      prefix_cost += instance.cost_of(trace.order[i]);
    }
  }
  return bound;
}

template <SetFunction F>
double upper_bound_opt(const Instance& instance, const F& oracle,
                       const GreedyTrace& trace) {
  QueryLedger ledger(false);
  return upper_bound_opt(instance, oracle, trace, ledger);
}

}  // namespace knapsub

#endif  // KNAPSUB_EXACT_HPP_
