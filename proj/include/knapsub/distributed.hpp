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

// In-process simulation of the massively-parallel computation model and the
// distributed thresholding algorithm built on it.
//
// Every thresholding round samples Γ, partitions the ground set over m
// machines, lets each machine filter Γ and its shard against the current
// threshold starting from the shared set T, and re-filters the union of the
// machines' new items into T on a central machine. A final round augments
// prefixes of T on every machine and the central machine keeps the best
// candidate. Machines within a round may run on parallel workers;
// their outputs are merged in machine-index order, so results depend only on
// (instance, parameters, seed).

#ifndef KNAPSUB_DISTRIBUTED_HPP_
#define KNAPSUB_DISTRIBUTED_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

#include "knapsub/core.hpp"
#include "knapsub/offline.hpp"
#include "knapsub/parallel.hpp"
#include "knapsub/streaming.hpp"

namespace knapsub {

class MemoryCapExceeded : public Error {
 public:
  MemoryCapExceeded(std::size_t machine, std::size_t load, std::size_t cap)
      : Error("machine " + std::to_string(machine) + " received " +
              std::to_string(load) + " elements, cap is " +
              std::to_string(cap)) {}
};

struct MpcConfig {
  std::size_t n = 0;
  std::size_t k_tilde = 1;
  std::size_t machines = 1;
  std::size_t memory_cap = 0;  // elements per machine per round
  std::uint64_t seed = 0;
  unsigned workers = 1;

  /// m = round(√(n/K̃)) unless `machines` is given, and
  /// s = max(⌈c_mem·√(n·K̃)⌉, ⌈n/m⌉) so that m·s ≥ n.
  static MpcConfig make(std::size_t n, std::size_t k_tilde, std::uint64_t seed,
                        double c_mem = 8.0, std::size_t machines = 0,
                        unsigned workers = 1) {
    MpcConfig config;
    config.n = n;
    config.k_tilde = std::max<std::size_t>(k_tilde, 1);
    const double kt = static_cast<double>(config.k_tilde);
    const double nn = static_cast<double>(n);
    config.machines =
        machines != 0
            ? machines
            : std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(nn / kt))));
    const auto by_formula = static_cast<std::size_t>(std::ceil(c_mem * std::sqrt(nn * kt)));
    const std::size_t by_share = (n + config.machines - 1) / config.machines;
    config.memory_cap = std::max<std::size_t>({by_formula, by_share, 1});
    config.seed = seed;
    config.workers = workers;
    return config;
  }
};

struct RoundEntry {
  int round = 0;
  double threshold = 0.0;  // 0 for the augmentation round
  std::size_t gamma_size = 0;
  std::vector<std::size_t> sent;  // per machine
  std::size_t central_received = 0;
  std::size_t t_size = 0;
  std::uint64_t queries = 0;
};

struct RoundLog {
  std::vector<RoundEntry> entries;

  void write_csv(std::ostream& out) const {
    out << "round,t,gamma_size,sent_total,T_size,queries\n";
    const auto old_precision = out.precision(17);
    for (const RoundEntry& r : entries) {
      out << r.round << ',' << r.threshold << ',' << r.gamma_size << ','
          << r.central_received << ',' << r.t_size << ',' << r.queries << '\n';
    }
    out.precision(old_precision);
  }
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Independent stream per (seed, round); draws are implemented here rather
// than through <random> distributions so they do not vary by stdlib.
class RoundRng {
 public:
  RoundRng(std::uint64_t seed, int round)
      : engine_(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(round) + 1))) {}

  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  std::size_t below(std::size_t bound) {
    return static_cast<std::size_t>(engine_() % bound);
  }

 private:
  std::mt19937_64 engine_;
};

// Random partition of [0, n) into m shards: shuffle, equal chunks of
// ⌊n/m⌋, leftovers dealt round-robin. Each shard is returned in stream order.
inline std::vector<std::vector<std::size_t>> random_partition(std::size_t n,
                                                              std::size_t m,
                                                              RoundRng& rng) {
  std::vector<std::size_t> perm(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t i = n; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
  std::vector<std::vector<std::size_t>> shards(m);
  const std::size_t chunk = n / m;
  std::size_t k = 0;
  for (std::size_t i = 0; i < m; ++i) {
    shards[i].assign(perm.begin() + static_cast<long>(k),
                     perm.begin() + static_cast<long>(k + chunk));
    k += chunk;
  }
  for (std::size_t i = 0; k < n; ++k, ++i) shards[i % m].push_back(perm[k]);
  for (auto& shard : shards) std::sort(shard.begin(), shard.end());
  return shards;
}

}  // namespace detail

/// Runs one synchronous round: checks every machine's input load against the
/// memory cap, executes machine(i) for all i in isolation and records the
/// per-machine message sizes (Out::message_size()) as a new log entry.
template <class Out, class Machine>
std::vector<Out> simulate_round(const MpcConfig& config,
                                std::span<const std::size_t> input_loads,
                                Machine&& machine, RoundLog& log) {
  if (input_loads.size() != config.machines) {
    throw InvalidArgument("one input load per machine expected");
  }
  for (std::size_t i = 0; i < input_loads.size(); ++i) {
    if (input_loads[i] > config.memory_cap) {
      throw MemoryCapExceeded(i, input_loads[i], config.memory_cap);
    }
  }
  std::vector<Out> outputs(config.machines);
  detail::parallel_for(config.machines, config.workers,
                       [&](std::size_t i) { outputs[i] = machine(i); });
  RoundEntry entry;
  entry.round = static_cast<int>(log.entries.size()) + 1;
  entry.sent.reserve(outputs.size());
  for (const Out& o : outputs) {
    entry.sent.push_back(o.message_size());
    entry.central_received += entry.sent.back();
  }
  log.entries.push_back(std::move(entry));
  return outputs;
}

/// T reordered as offline greedy would pick from it, with prefix costs and
/// values (index i describes the first i items).
struct GreedyOrder {
  IdSet order;
  std::vector<double> prefix_cost;
  std::vector<double> prefix_value;
};

template <SetFunction F>
GreedyOrder greedy_order(const Instance& instance, const IdSet& t,
                         const F& oracle, QueryLedger& ledger) {
  std::vector<Element> sub;
  sub.reserve(t.size());
  for (ElementId id : t) sub.push_back({id, instance.cost_of(id)});
  const Instance restricted(std::move(sub), instance.capacity(),
                            instance.base_set());
  Evaluator<F> eval(restricted, oracle, ledger);
  detail::GreedyRun run = detail::run_greedy_from_empty(eval, OfflineOptions{});
  GreedyOrder out;
  out.order = run.trace.order;
  for (const TraceStep& step : run.trace.steps) {
    out.prefix_cost.push_back(step.cum_cost);
    out.prefix_value.push_back(step.value);
  }
  return out;
}

/// Which prefixes of T the augmentation round extends: the order in which
/// the central machine accepted items, or T re-sorted by offline greedy.
enum class PrefixOrder { kAcceptance, kGreedy };

struct DistributedOptions {
  PrefixOrder prefix_order = PrefixOrder::kAcceptance;
};

struct DistributedResult {
  AlgoReport report;
  RoundLog log;
};

/// Distributed Sieve+Max. `params.lambda` plays the role of the α-approximate
/// optimum τ that seeds the threshold schedule.
template <SetFunction F>
DistributedResult distributed_sieve_plus_max(const Instance& instance,
                                             const F& oracle,
                                             QueryLedger& ledger,
                                             const StreamingParams& params,
                                             const MpcConfig& config,
                                             const DistributedOptions& options = {}) {
  detail::RunMeter meter(ledger);
  const ThresholdSchedule schedule(params.lambda, params.alpha, params.epsilon,
                                   instance.capacity());
  if (config.machines == 0) throw InvalidArgument("need at least one machine");
  Evaluator<F> eval(instance, oracle, ledger);
  const auto& elements = instance.elements();
  const std::size_t n = elements.size();
  const std::size_t m = config.machines;
  const double capacity = instance.capacity();
  const double sample_p =
      n == 0 ? 0.0
             : std::min(1.0, 4.0 * std::sqrt(static_cast<double>(config.k_tilde) /
                                             static_cast<double>(n)));

  DistributedResult result;
  IdSet t_set;
  double t_cost = 0.0;
  std::uint64_t round_start = ledger.query_count();
  double t_value = eval.value(t_set);
  GreedyOrder accepted{{}, {t_cost}, {t_value}};

  struct Filtered {
    IdSet new_items;
    std::size_t message_size() const { return new_items.size(); }
  };

  int round = 0;
  for (double t = schedule.initial(); schedule.active(t); t = schedule.next(t), ++round) {
    detail::RoundRng rng(config.seed, round);
    // With one machine Γ adds nothing: the machine already holds all of E.
    std::vector<std::size_t> gamma;
    if (m > 1) {
      for (std::size_t k = 0; k < n; ++k) {
        if (rng.uniform() < sample_p) gamma.push_back(k);
      }
    }
    const auto shards = detail::random_partition(n, m, rng);
    std::vector<std::size_t> loads(m);
    for (std::size_t i = 0; i < m; ++i) {
      loads[i] = shards[i].size() + gamma.size() + t_set.size();
    }

    const std::unordered_set<ElementId> in_t(t_set.begin(), t_set.end());
    auto outputs = simulate_round<Filtered>(
        config, loads,
        [&](std::size_t i) {
          Filtered out;
          IdSet x = t_set;
          std::unordered_set<ElementId> in_x = in_t;
          double x_cost = t_cost;
          double x_value = t_value;
          auto consider = [&](std::size_t k) {
            const Element& e = elements[k];
            if (in_x.contains(e.id) || !fits_within(x_cost + e.cost, capacity)) return;
            const double v = eval.value_with(x, x_cost, e.id);
            if ((v - x_value) / e.cost > t) {
              x.push_back(e.id);
              in_x.insert(e.id);
              x_cost += e.cost;
              x_value = v;
              out.new_items.push_back(e.id);
            }
          };
          for (std::size_t k : gamma) consider(k);
          for (std::size_t k : shards[i]) consider(k);
          return out;
        },
        result.log);

    std::unordered_set<ElementId> in_t_now = in_t;
    for (const Filtered& out : outputs) {
      for (ElementId id : out.new_items) {
        const double c = instance.cost_of(id);
        if (in_t_now.contains(id) || !fits_within(t_cost + c, capacity)) continue;
        const double v = eval.value_with(t_set, t_cost, id);
        if ((v - t_value) / c > t) {
          t_set.push_back(id);
          in_t_now.insert(id);
          t_cost += c;
          t_value = v;
          accepted.order.push_back(id);
          accepted.prefix_cost.push_back(t_cost);
          accepted.prefix_value.push_back(t_value);
        }
      }
    }
    RoundEntry& entry = result.log.entries.back();
    entry.threshold = t;
    entry.gamma_size = gamma.size();
    entry.t_size = t_set.size();
    entry.queries = ledger.query_count() - round_start;
    round_start = ledger.query_count();
    result.report.max_central_receipts =
        std::max<std::uint64_t>(result.report.max_central_receipts, entry.central_received);
  }

  // Augmentation round.
  const GreedyOrder prefixes = options.prefix_order == PrefixOrder::kGreedy
                                   ? greedy_order(instance, t_set, oracle, ledger)
                                   : accepted;
  detail::RoundRng rng(config.seed, round);
  const auto shards = detail::random_partition(n, m, rng);
  std::vector<std::size_t> loads(m);
  for (std::size_t i = 0; i < m; ++i) loads[i] = shards[i].size() + t_set.size();
  const std::unordered_set<ElementId> in_t(t_set.begin(), t_set.end());

  struct Candidate {
    std::size_t prefix = 0;
    std::optional<ElementId> item;
    double value = 0.0;
    std::size_t message_size() const { return 1; }
  };
  const std::size_t t_len = prefixes.order.size();
  auto candidates = simulate_round<Candidate>(
      config, loads,
      [&](std::size_t i) {
        std::vector<double> best = prefixes.prefix_value;
        std::vector<std::optional<ElementId>> augment(t_len + 1);
        for (std::size_t k : shards[i]) {
          const Element& e = elements[k];
          if (in_t.contains(e.id)) continue;
          auto it = std::upper_bound(
              prefixes.prefix_cost.begin(), prefixes.prefix_cost.end(), e.cost,
              [&](double c, double prefix) { return !fits_within(prefix + c, capacity); });
          if (it == prefixes.prefix_cost.begin()) continue;
          const auto j = static_cast<std::size_t>(it - prefixes.prefix_cost.begin()) - 1;
          const std::span<const ElementId> g_j(prefixes.order.data(), j);
          const double v = eval.value_with(g_j, prefixes.prefix_cost[j], e.id);
          if (best[j] < v) {
            best[j] = v;
            augment[j] = e.id;
          }
        }
        Candidate c;
        c.value = best[0];
        c.item = augment[0];
        for (std::size_t j = 1; j <= t_len; ++j) {
          if (best[j] > c.value) {
            c = {j, augment[j], best[j]};
          }
        }
        return c;
      },
      result.log);

  std::size_t winner = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (candidates[i].value > candidates[winner].value) winner = i;
  }
  const Candidate& best = candidates[winner];
  IdSet ids(prefixes.order.begin(), prefixes.order.begin() + static_cast<long>(best.prefix));
  double cost = prefixes.prefix_cost[best.prefix];
  if (best.item) {
    ids.push_back(*best.item);
    cost += instance.cost_of(*best.item);
  }
  RoundEntry& last = result.log.entries.back();
  last.t_size = t_set.size();
  last.queries = ledger.query_count() - round_start;

  result.report.algorithm = "distributed_sieve_plus_max";
  result.report.solution = {std::move(ids), best.value, cost};
  result.report.rounds = round + 1;
  result.report.passes = result.report.rounds;
  result.report.peak_retained = t_set.size();
  meter.finish(result.report);
  return result;
}

}  // namespace knapsub

#endif  // KNAPSUB_DISTRIBUTED_HPP_
