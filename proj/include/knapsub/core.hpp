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

// Ground set, instances, query accounting and the evaluation wrapper that
// every algorithm in this library goes through.

#ifndef KNAPSUB_CORE_HPP_
#define KNAPSUB_CORE_HPP_

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace knapsub {

using ElementId = std::uint32_t;
using IdSet = std::vector<ElementId>;

// Relative slack used when comparing a set cost against the capacity.
inline constexpr double kCostSlack = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InfeasibleQuery : public Error {
 public:
  InfeasibleQuery(double cost, double capacity)
      : Error("query on infeasible set: cost " + std::to_string(cost) +
              " > capacity " + std::to_string(capacity)) {}
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::uint64_t budget)
      : Error("query budget of " + std::to_string(budget) + " exceeded") {}
};

class TooLarge : public Error {
  using Error::Error;
};

class InvalidArgument : public Error {
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class InvalidLambda : public Error {
 public:
  explicit InvalidLambda(double lambda)
      : Error("lambda must be positive, got " + std::to_string(lambda)) {}
};

/// Anything that maps a set of element ids to a real value. Implementations
/// must be safe to call concurrently on a const object.
template <class F>
concept SetFunction = requires(const F& f, std::span<const ElementId> ids) {
  { f.value(ids) } -> std::convertible_to<double>;
};

struct Element {
  ElementId id = 0;
  double cost = 0.0;

  friend bool operator==(const Element&, const Element&) = default;
};

inline bool fits_within(double cost, double capacity) {
  return cost <= capacity + kCostSlack * std::max(1.0, capacity);
}

/// A knapsack instance: candidate elements, the capacity K and the set of
/// zero-cost ids that are folded into every evaluation.
class Instance {
 public:
  Instance() = default;

  Instance(std::vector<Element> elements, double capacity, IdSet base_set = {})
      : elements_(std::move(elements)),
        capacity_(capacity),
        base_set_(std::move(base_set)) {
    if (!(capacity_ > 0.0) || !std::isfinite(capacity_)) {
      throw InvalidArgument("capacity must be positive and finite");
    }
    cost_index_.reserve(elements_.size());
    for (const Element& e : elements_) {
      if (!(e.cost > 0.0) || !std::isfinite(e.cost)) {
        throw InvalidArgument("element " + std::to_string(e.id) +
                              " has non-positive cost");
      }
      if (!fits_within(e.cost, capacity_)) {
        throw InvalidArgument("element " + std::to_string(e.id) +
                              " does not fit into the knapsack");
      }
      if (!cost_index_.emplace(e.id, e.cost).second) {
        throw InvalidArgument("duplicate element id " + std::to_string(e.id));
      }
    }
    for (ElementId b : base_set_) {
      if (cost_index_.contains(b)) {
        throw InvalidArgument("base-set id " + std::to_string(b) +
                              " is also a candidate element");
      }
    }
    std::sort(base_set_.begin(), base_set_.end());
    base_set_.erase(std::unique(base_set_.begin(), base_set_.end()),
                    base_set_.end());
    k_tilde_ = static_cast<std::size_t>(std::min<double>(
        static_cast<double>(elements_.size()), std::floor(capacity_ + 1e-9)));
  }

  const std::vector<Element>& elements() const { return elements_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  double capacity() const { return capacity_; }
  std::size_t k_tilde() const { return k_tilde_; }
  const IdSet& base_set() const { return base_set_; }

  /// True when neither candidates nor base-set items remain.
  bool flagged_empty() const { return elements_.empty() && base_set_.empty(); }

  bool contains(ElementId id) const { return cost_index_.contains(id); }

  /// Cost of a candidate id; base-set ids cost nothing.
  double cost_of(ElementId id) const {
    auto it = cost_index_.find(id);
    if (it != cost_index_.end()) return it->second;
    if (std::binary_search(base_set_.begin(), base_set_.end(), id)) return 0.0;
    throw InvalidArgument("unknown element id " + std::to_string(id));
  }

  double cost_of(std::span<const ElementId> ids) const {
    double total = 0.0;
    for (ElementId id : ids) total += cost_of(id);
    return total;
  }

  bool feasible(std::span<const ElementId> ids) const {
    return fits_within(cost_of(ids), capacity_);
  }

 private:
  std::vector<Element> elements_;
  double capacity_ = 1.0;
  IdSet base_set_;
  std::size_t k_tilde_ = 0;
  std::unordered_map<ElementId, double> cost_index_;
};

/// Counts oracle evaluations. Counters are atomic so that concurrent sweeps
/// produce exact totals.
class QueryLedger {
 public:
  explicit QueryLedger(bool enforce_feasible = true, std::uint64_t budget = 0)
      : enforce_feasible_(enforce_feasible), budget_(budget) {}

  QueryLedger(const QueryLedger&) = delete;
  QueryLedger& operator=(const QueryLedger&) = delete;

  std::uint64_t query_count() const { return queries_.load(); }
  std::uint64_t infeasible_query_count() const { return infeasible_.load(); }
  bool enforce_feasible() const { return enforce_feasible_; }
  std::uint64_t budget() const { return budget_; }  // 0 = unlimited

  // Reserves one query slot. Throws when the budget is already used up, in
  // which case the counter is left untouched.
  void charge() {
    if (budget_ == 0) {
      queries_.fetch_add(1, std::memory_order_relaxed);
      return;
    }
    std::uint64_t current = queries_.load(std::memory_order_relaxed);
    do {
      if (current >= budget_) throw BudgetExceeded(budget_);
    } while (!queries_.compare_exchange_weak(current, current + 1,
                                             std::memory_order_relaxed));
  }

  void note_infeasible() { infeasible_.fetch_add(1, std::memory_order_relaxed); }

 private:
  bool enforce_feasible_;
  std::uint64_t budget_;
  std::atomic<std::uint64_t> queries_{0};
  std::atomic<std::uint64_t> infeasible_{0};
};

/// Binds an instance, an objective and a ledger. All algorithm queries are
/// routed through here so that feasibility and accounting are uniform.
template <SetFunction F>
class Evaluator {
 public:
  Evaluator(const Instance& instance, const F& oracle, QueryLedger& ledger)
      : instance_(&instance), oracle_(&oracle), ledger_(&ledger) {}

  const Instance& instance() const { return *instance_; }
  const F& oracle() const { return *oracle_; }
  QueryLedger& ledger() const { return *ledger_; }

  /// f(ids ∪ base_set); one query.
  double value(std::span<const ElementId> ids) const {
    check(instance_->cost_of(ids));
    return call(ids, std::nullopt);
  }

  /// f(ids ∪ {extra} ∪ base_set) when the caller already knows c(ids).
  double value_with(std::span<const ElementId> ids, double ids_cost,
                    ElementId extra) const {
    check(ids_cost + instance_->cost_of(extra));
    return call(ids, extra);
  }

  double value_with(std::span<const ElementId> ids, ElementId extra) const {
    return value_with(ids, instance_->cost_of(ids), extra);
  }

 private:
  void check(double cost) const {
    if (fits_within(cost, instance_->capacity())) return;
    if (ledger_->enforce_feasible()) {
      throw InfeasibleQuery(cost, instance_->capacity());
    }
    ledger_->note_infeasible();
  }

  double call(std::span<const ElementId> ids,
              std::optional<ElementId> extra) const {
    ledger_->charge();
    const IdSet& base = instance_->base_set();
    // Base-set items are already part of every evaluation.
    if (extra && std::binary_search(base.begin(), base.end(), *extra)) {
      extra.reset();
    }
    if (base.empty() && !extra) return oracle_->value(ids);
    IdSet full;
    full.reserve(base.size() + ids.size() + 1);
    full.insert(full.end(), base.begin(), base.end());
    full.insert(full.end(), ids.begin(), ids.end());
    if (extra) full.push_back(*extra);
    return oracle_->value(full);
  }

  const Instance* instance_;
  const F* oracle_;
  QueryLedger* ledger_;
};

template <SetFunction F>
double evaluate(const Instance& instance, const F& oracle,
                std::span<const ElementId> ids, QueryLedger& ledger) {
  return Evaluator<F>(instance, oracle, ledger).value(ids);
}

/// Δ(e|S). Pass `set_value` = f(S) to spend exactly one query.
template <SetFunction F>
double marginal_gain(const Instance& instance, const F& oracle, ElementId e,
                     std::span<const ElementId> set, QueryLedger& ledger,
                     std::optional<double> set_value = std::nullopt) {
  Evaluator<F> eval(instance, oracle, ledger);
  double base = set_value ? *set_value : eval.value(set);
  return eval.value_with(set, e) - base;
}

/// ρ(e|S) = Δ(e|S) / c(e).
template <SetFunction F>
double marginal_density(const Instance& instance, const F& oracle, ElementId e,
                        std::span<const ElementId> set, QueryLedger& ledger,
                        std::optional<double> set_value = std::nullopt) {
  return marginal_gain(instance, oracle, e, set, ledger, set_value) /
         instance.cost_of(e);
}

/// Rescales costs so the cheapest positive cost is 1, moves zero-cost items
/// into the base set and drops items that cannot fit on their own.
inline Instance normalize(const std::vector<Element>& raw, double capacity,
                          IdSet base_set = {}) {
  if (!(capacity > 0.0)) throw InvalidArgument("capacity must be positive");
  std::vector<Element> positive;
  positive.reserve(raw.size());
  double min_cost = std::numeric_limits<double>::infinity();
  for (const Element& e : raw) {
    if (e.cost < 0.0 || !std::isfinite(e.cost)) {
      throw InvalidArgument("element " + std::to_string(e.id) +
                            " has a negative or non-finite cost");
    }
    if (e.cost == 0.0) {
      base_set.push_back(e.id);
    } else {
      positive.push_back(e);
      min_cost = std::min(min_cost, e.cost);
    }
  }
  double scaled_capacity = capacity;
  if (!positive.empty() && min_cost != 1.0) {
    scaled_capacity = capacity / min_cost;
    for (Element& e : positive) e.cost /= min_cost;
  }
  std::erase_if(positive, [&](const Element& e) {
    return !fits_within(e.cost, scaled_capacity);
  });
  return Instance(std::move(positive), scaled_capacity, std::move(base_set));
}

inline Instance normalize(const Instance& instance) {
  return normalize(instance.elements(), instance.capacity(),
                   instance.base_set());
}

struct Solution {
  IdSet ids;
  double value = 0.0;
  double cost = 0.0;
};

/// One breakpoint of the piecewise-linear performance curve of a greedy or
/// thresholding run. `next_density` is the slope on the segment that starts
/// here (0 after the last pick).
struct TraceStep {
  double cum_cost = 0.0;
  double value = 0.0;
  double next_density = 0.0;
};

struct GreedyTrace {
  std::vector<TraceStep> steps;
  IdSet order;  // picked ids, in pick order
};

struct AlgoReport {
  std::string algorithm;
  Solution solution;
  std::uint64_t queries = 0;
  int passes = 0;
  int rounds = 0;
  std::uint64_t max_central_receipts = 0;
  std::size_t peak_retained = 0;
  std::chrono::nanoseconds wall_time{0};
  std::optional<GreedyTrace> trace;
};

namespace detail {

// Measures wall time and the ledger delta over a scope.
class RunMeter {
 public:
  explicit RunMeter(const QueryLedger& ledger)
      : ledger_(ledger),
        start_queries_(ledger.query_count()),
        start_(std::chrono::steady_clock::now()) {}

  void finish(AlgoReport& report) const {
    report.queries = ledger_.query_count() - start_queries_;
    report.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
        std::chrono::steady_clock::now() - start_);
  }

 private:
  const QueryLedger& ledger_;
  std::uint64_t start_queries_;
  std::chrono::steady_clock::time_point start_;
};

// Argmax with ties broken toward the smaller id.
inline bool better(double value, ElementId id, double best_value,
                   std::optional<ElementId> best_id) {
  if (!best_id) return true;
  if (value > best_value) return true;
  return value == best_value && id < *best_id;
}

}  // namespace detail

}  // namespace knapsub

#endif  // KNAPSUB_CORE_HPP_
