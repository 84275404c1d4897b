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

// Offline algorithms: density greedy, greedy-or-best-singleton, greedy with
// per-prefix augmentation (Greedy+Max) and partial enumeration.
//
// All three greedy variants share one evaluation sweep per iteration: for the
// current prefix G every remaining candidate e is evaluated once as f(G ∪ e),
// and both the best-gain and the best-density item are read off the same
// values. They therefore report identical query counts.

#ifndef KNAPSUB_OFFLINE_HPP_
#define KNAPSUB_OFFLINE_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "knapsub/core.hpp"
#include "knapsub/parallel.hpp"

namespace knapsub {

struct OfflineOptions {
  unsigned workers = 1;
};

/// The best augmentation of the prefix G_i found by Greedy+Max.
struct Augmentation {
  std::size_t prefix_index = 0;
  ElementId item = 0;
  double value = 0.0;  // f(G_i ∪ {item})
};

struct OfflineResult {
  AlgoReport report;
  std::vector<Augmentation> augmentations;
};

namespace detail {

struct GreedyRun {
  Solution greedy;  // final greedy set
  GreedyTrace trace;
  std::vector<Augmentation> augmentations;
  Solution best_augmented;  // running max over G_i ∪ s_i and G
  std::optional<Solution> best_singleton;
};

// Density greedy starting from `seed` (already paid for: its value is given).
template <SetFunction F>
GreedyRun run_greedy(const Evaluator<F>& eval, const IdSet& seed,
                     double seed_value, const OfflineOptions& options) {
  const Instance& instance = eval.instance();
  const double capacity = instance.capacity();

  GreedyRun run;
  IdSet picked = seed;
  double cost = instance.cost_of(seed);
  double value = seed_value;

  std::vector<Element> candidates;
  candidates.reserve(instance.size());
  for (const Element& e : instance.elements()) {
    if (std::find(seed.begin(), seed.end(), e.id) != seed.end()) continue;
    if (fits_within(cost + e.cost, capacity)) candidates.push_back(e);
  }

  run.trace.steps.push_back({cost, value, 0.0});
  run.best_augmented = {picked, value, cost};

  std::vector<double> values;
  bool first_sweep = true;
  while (!candidates.empty()) {
    values.assign(candidates.size(), 0.0);
    parallel_for(candidates.size(), options.workers, [&](std::size_t k) {
      values[k] = eval.value_with(picked, cost, candidates[k].id);
    });

    std::optional<ElementId> best_gain_id;
    std::size_t best_gain_k = 0;
    std::optional<ElementId> best_density_id;
    std::size_t best_density_k = 0;
    double best_density = 0.0;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const Element& e = candidates[k];
      if (better(values[k], e.id, values[best_gain_k], best_gain_id)) {
        best_gain_id = e.id;
        best_gain_k = k;
      }
      const double density = (values[k] - value) / e.cost;
      if (better(density, e.id, best_density, best_density_id)) {
        best_density_id = e.id;
        best_density_k = k;
        best_density = density;
      }
    }

    if (first_sweep && seed.empty()) {
      const Element& s = candidates[best_gain_k];
      run.best_singleton = Solution{{s.id}, values[best_gain_k], s.cost};
    }
    first_sweep = false;

    const Element& s = candidates[best_gain_k];
    run.augmentations.push_back({picked.size(), s.id, values[best_gain_k]});
    if (run.best_augmented.value < values[best_gain_k]) {
      IdSet ids = picked;
      ids.push_back(s.id);
      run.best_augmented = {std::move(ids), values[best_gain_k], cost + s.cost};
    }

    const Element a = candidates[best_density_k];
    run.trace.steps.back().next_density = best_density;
    picked.push_back(a.id);
    run.trace.order.push_back(a.id);
    cost += a.cost;
    value = values[best_density_k];
    run.trace.steps.push_back({cost, value, 0.0});

    std::erase_if(candidates, [&](const Element& e) {
      return e.id == a.id || !fits_within(cost + e.cost, capacity);
    });
  }

  if (run.best_augmented.value < value) {
    run.best_augmented = {picked, value, cost};
  }
  run.greedy = {std::move(picked), value, cost};
  return run;
}

template <SetFunction F>
GreedyRun run_greedy_from_empty(const Evaluator<F>& eval,
                                const OfflineOptions& options) {
  const IdSet empty;
  return run_greedy(eval, empty, eval.value(empty), options);
}

}  // namespace detail

/// Repeatedly adds the fitting item of highest marginal density until
/// nothing fits. The report carries the full trace.
template <SetFunction F>
OfflineResult greedy(const Instance& instance, const F& oracle,
                     QueryLedger& ledger, const OfflineOptions& options = {}) {
  detail::RunMeter meter(ledger);
  Evaluator<F> eval(instance, oracle, ledger);
  detail::GreedyRun run = detail::run_greedy_from_empty(eval, options);
  OfflineResult result;
  result.report.algorithm = "greedy";
  result.report.solution = std::move(run.greedy);
  result.report.passes = 1;
  result.report.rounds = 1;
  result.report.trace = std::move(run.trace);
  meter.finish(result.report);
  return result;
}

/// Best of the greedy set and the best feasible singleton. The singleton
/// values come from greedy's first sweep, so no extra queries are spent.
template <SetFunction F>
OfflineResult greedy_or_max(const Instance& instance, const F& oracle,
                            QueryLedger& ledger,
                            const OfflineOptions& options = {}) {
  detail::RunMeter meter(ledger);
  Evaluator<F> eval(instance, oracle, ledger);
  detail::GreedyRun run = detail::run_greedy_from_empty(eval, options);
  OfflineResult result;
  result.report.algorithm = "greedy_or_max";
  if (run.best_singleton && run.best_singleton->value > run.greedy.value) {
    result.report.solution = std::move(*run.best_singleton);
  } else {
    result.report.solution = std::move(run.greedy);
  }
  result.report.passes = 1;
  result.report.rounds = 1;
  result.report.trace = std::move(run.trace);
  meter.finish(result.report);
  return result;
}

/// Greedy+Max: every greedy prefix G_i (including the empty one) is
/// augmented with the fitting item of largest marginal gain; the best
/// augmented prefix (or the plain greedy set, if better) is returned.
template <SetFunction F>
OfflineResult greedy_plus_max(const Instance& instance, const F& oracle,
                              QueryLedger& ledger,
                              const OfflineOptions& options = {}) {
  detail::RunMeter meter(ledger);
  Evaluator<F> eval(instance, oracle, ledger);
  detail::GreedyRun run = detail::run_greedy_from_empty(eval, options);
  OfflineResult result;
  result.report.algorithm = "greedy_plus_max";
  result.report.solution = std::move(run.best_augmented);
  result.report.passes = 1;
  result.report.rounds = 1;
  result.report.trace = std::move(run.trace);
  result.augmentations = std::move(run.augmentations);
  meter.finish(result.report);
  return result;
}

/// Upper estimate of the queries partial_enum_greedy(d) may spend.
inline double partial_enum_query_estimate(const Instance& instance, int d) {
  const double n = static_cast<double>(instance.size());
  return std::pow(std::max(n, 1.0), d + 1) *
         static_cast<double>(std::max<std::size_t>(instance.k_tilde(), 1));
}

/// Runs greedy from every feasible seed of at most `d` items and returns the
/// best completed solution. Throws BudgetExceeded up front when
/// n^(d+1)·K̃ exceeds the ledger's budget.
template <SetFunction F>
OfflineResult partial_enum_greedy(const Instance& instance, const F& oracle,
                                  int d, QueryLedger& ledger,
                                  const OfflineOptions& options = {}) {
  if (d < 0 || d > 3) throw InvalidArgument("partial enumeration depth must be in [0, 3]");
  if (ledger.budget() != 0 &&
      partial_enum_query_estimate(instance, d) >
          static_cast<double>(ledger.budget())) {
    throw BudgetExceeded(ledger.budget());
  }
  detail::RunMeter meter(ledger);
  Evaluator<F> eval(instance, oracle, ledger);

  OfflineResult result;
  result.report.algorithm = "partial_enum_greedy";
  std::optional<Solution> best;

  const auto& elements = instance.elements();
  IdSet seed;
  auto complete = [&](double seed_value) {
    detail::GreedyRun run = detail::run_greedy(eval, seed, seed_value, options);
    if (!best || run.greedy.value > best->value) best = std::move(run.greedy);
  };
  // Depth-first over index-increasing seeds; ∅ first, so d = 0 is greedy.
  auto enumerate = [&](auto&& self, std::size_t start, double seed_cost) -> void {
    complete(eval.value(seed));
    if (seed.size() == static_cast<std::size_t>(d)) return;
    for (std::size_t k = start; k < elements.size(); ++k) {
      const Element& e = elements[k];
      if (!fits_within(seed_cost + e.cost, instance.capacity())) continue;
      seed.push_back(e.id);
      self(self, k + 1, seed_cost + e.cost);
      seed.pop_back();
    }
  };
  enumerate(enumerate, 0, 0.0);

  result.report.solution = std::move(*best);
  result.report.passes = 1;
  result.report.rounds = 1;
  meter.finish(result.report);
  return result;
}

}  // namespace knapsub

#endif  // KNAPSUB_OFFLINE_HPP_
