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

// Multi-pass streaming algorithms. Elements are only seen through a
// StreamSource, which counts full passes; the algorithms retain O(K̃)
// elements between passes.
//
//   sieve            thresholding stage alone, returns f(T)
//   sieve_or_max     thresholding plus the best singleton seen in pass 1
//   sieve_plus_max   thresholding followed by one augmentation pass in which
//                    every e ∉ T is tried against the longest prefix of T it
//                    still fits with
//   estimate_lambda  one-pass constant-factor estimate of f(OPT)

#ifndef KNAPSUB_STREAMING_HPP_
#define KNAPSUB_STREAMING_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "knapsub/core.hpp"

namespace knapsub {

/// Replayable element sequence, in memory or backed by an `id<TAB>cost`
/// file. Every call to pass() is one full traversal in identical order.
class StreamSource {
 public:
  explicit StreamSource(std::vector<Element> elements)
      : elements_(std::move(elements)) {}

  static StreamSource from_file(std::filesystem::path path) {
    StreamSource source({});
    source.file_ = std::move(path);
    if (!std::filesystem::exists(*source.file_)) {
      throw InvalidArgument("stream file not found: " + source.file_->string());
    }
    return source;
  }

  static StreamSource from_instance(const Instance& instance) {
    return StreamSource(instance.elements());
  }

  template <class Fn>
  void pass(Fn&& fn) {
    ++passes_;
    if (!file_) {
      for (const Element& e : elements_) fn(e);
      return;
    }
    std::ifstream in(*file_);
    if (!in) throw InvalidArgument("cannot open stream file " + file_->string());
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty() || line[0] == '#') continue;
      fn(parse_line(line, line_no));
    }
  }

  int pass_count() const { return passes_; }

  static Element parse_line(const std::string& line, std::size_t line_no) {
    const auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ParseError("expected id<TAB>cost", line_no);
    }
    Element e;
    try {
      std::size_t used = 0;
      const unsigned long id = std::stoul(line.substr(0, tab), &used);
      if (used != tab) throw ParseError("malformed id", line_no);
      e.id = static_cast<ElementId>(id);
      const std::string cost = line.substr(tab + 1);
      e.cost = std::stod(cost, &used);
      if (used != cost.size() && cost.find_first_not_of(" \r", used) != std::string::npos) {
        throw ParseError("malformed cost", line_no);
      }
    } catch (const std::logic_error&) {
      throw ParseError("malformed id or cost", line_no);
    }
    return e;
  }

  static void write_file(const std::filesystem::path& path,
                         const std::vector<Element>& elements) {
    std::ofstream out(path);
    out.precision(17);
    for (const Element& e : elements) out << e.id << '\t' << e.cost << '\n';
  }

 private:
  std::vector<Element> elements_;
  std::optional<std::filesystem::path> file_;
  int passes_ = 0;
};

/// Geometric threshold sequence: starts at λ/(αK), divides by (1+ε) after
/// every pass and stops once τ ≤ λ/(2K).
class ThresholdSchedule {
 public:
  ThresholdSchedule(double lambda, double alpha, double epsilon,
                    double capacity)
      : lambda_(lambda), alpha_(alpha), epsilon_(epsilon), capacity_(capacity) {
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw InvalidLambda(lambda);
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw InvalidArgument("alpha must lie in (0, 1]");
    }
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (!(capacity > 0.0)) throw InvalidArgument("capacity must be positive");
  }

  double lambda() const { return lambda_; }
  double alpha() const { return alpha_; }
  double epsilon() const { return epsilon_; }
  double initial() const { return lambda_ / (alpha_ * capacity_); }
  double stop() const { return lambda_ / (2.0 * capacity_); }
  bool active(double tau) const { return tau > stop(); }
  double next(double tau) const { return tau / (1.0 + epsilon_); }

  std::vector<double> thresholds() const {
    std::vector<double> out;
    for (double tau = initial(); active(tau); tau = next(tau)) out.push_back(tau);
    return out;
  }

  /// ⌈log_{1+ε}(2/α)⌉: the number of thresholding passes, since the
  /// schedule spans a factor of 2/α.
  static int pass_bound(double alpha, double epsilon) {
    return static_cast<int>(
        std::ceil(std::log(2.0 / alpha) / std::log1p(epsilon) - 1e-12));
  }

 private:
  double lambda_;
  double alpha_;
  double epsilon_;
  double capacity_;
};

struct StreamingParams {
  double lambda = 0.0;
  double alpha = 1.0;
  double epsilon = 0.1;
};

struct LambdaEstimate {
  double lambda = 0.0;
  double alpha = 0.0;
  int passes = 0;
  std::uint64_t queries = 0;
  std::size_t peak_retained = 0;
  std::size_t retained_cap = 0;
};

/// Bound on the elements estimate_lambda keeps at once: the live threshold
/// grid spans at most a factor 3K(1+ε)/2, each set holds at most K̃ items,
/// plus the best singleton.
inline std::size_t lambda_retained_cap(const Instance& instance,
                                       double epsilon_est) {
  const double span = 1.5 * instance.capacity() * (1.0 + epsilon_est);
  const auto grid = static_cast<std::size_t>(
      std::floor(std::log(span) / std::log1p(epsilon_est) + 1e-9) + 1);
  return instance.k_tilde() * grid + 1;
}

namespace detail {

struct ThresholdRun {
  IdSet order;                       // T in insertion order
  std::vector<double> prefix_cost;   // c(G_i), i = 0..|T|
  std::vector<double> prefix_value;  // f(G_i), i = 0..|T|
  GreedyTrace trace;
  std::optional<Solution> best_singleton;
  int passes = 0;
};

template <SetFunction F>
ThresholdRun run_thresholding(StreamSource& stream, const Evaluator<F>& eval,
                              const ThresholdSchedule& schedule,
                              bool track_singleton) {
  const Instance& instance = eval.instance();
  ThresholdRun run;
  std::unordered_set<ElementId> taken;
  double cost = 0.0;
  double value = eval.value(run.order);
  run.prefix_cost.push_back(cost);
  run.prefix_value.push_back(value);
  run.trace.steps.push_back({cost, value, 0.0});

  bool first_pass = true;
  for (double tau = schedule.initial(); schedule.active(tau);
       tau = schedule.next(tau)) {
    stream.pass([&](const Element& e) {
      const double c = instance.cost_of(e.id);
      if (track_singleton && first_pass && taken.empty()) {
        // Singleton value comes for free while T is still empty.
      } else if (track_singleton && first_pass) {
        const ElementId one[] = {e.id};
        const double v = eval.value(one);
        if (!run.best_singleton || v > run.best_singleton->value) {
          run.best_singleton = Solution{{e.id}, v, c};
        }
      }
      if (taken.contains(e.id) || !fits_within(cost + c, instance.capacity())) {
        return;
      }
      const double v = eval.value_with(run.order, cost, e.id);
      if (track_singleton && first_pass && taken.empty()) {
        if (!run.best_singleton || v > run.best_singleton->value) {
          run.best_singleton = Solution{{e.id}, v, c};
        }
      }
      const double density = (v - value) / c;
      if (density >= tau) {
        run.trace.steps.back().next_density = density;
        run.order.push_back(e.id);
        run.trace.order.push_back(e.id);
        taken.insert(e.id);
        cost += c;
        value = v;
        run.prefix_cost.push_back(cost);
        run.prefix_value.push_back(value);
        run.trace.steps.push_back({cost, value, 0.0});
      }
    });
    first_pass = false;
    ++run.passes;
  }
  return run;
}

inline AlgoReport threshold_report(std::string name, const ThresholdRun& run) {
  AlgoReport report;
  report.algorithm = std::move(name);
  report.solution = {run.order, run.prefix_value.back(), run.prefix_cost.back()};
  report.passes = run.passes;
  report.rounds = run.passes;
  report.peak_retained = run.order.size();
  report.trace = run.trace;
  return report;
}

}  // namespace detail

/// Thresholding stage alone.
template <SetFunction F>
AlgoReport sieve(StreamSource& stream, const Instance& instance,
                 const F& oracle, QueryLedger& ledger,
                 const StreamingParams& params) {
  detail::RunMeter meter(ledger);
  ThresholdSchedule schedule(params.lambda, params.alpha, params.epsilon,
                             instance.capacity());
  Evaluator<F> eval(instance, oracle, ledger);
  detail::ThresholdRun run =
      detail::run_thresholding(stream, eval, schedule, false);
  AlgoReport report = detail::threshold_report("sieve", run);
  meter.finish(report);
  return report;
}

/// Thresholding plus the best feasible singleton observed in the first pass.
template <SetFunction F>
AlgoReport sieve_or_max(StreamSource& stream, const Instance& instance,
                        const F& oracle, QueryLedger& ledger,
                        const StreamingParams& params) {
  detail::RunMeter meter(ledger);
  ThresholdSchedule schedule(params.lambda, params.alpha, params.epsilon,
                             instance.capacity());
  Evaluator<F> eval(instance, oracle, ledger);
  detail::ThresholdRun run =
      detail::run_thresholding(stream, eval, schedule, true);
  AlgoReport report = detail::threshold_report("sieve_or_max", run);
  if (run.best_singleton && run.best_singleton->value > report.solution.value) {
    report.solution = *run.best_singleton;
  }
  report.peak_retained += 1;
  meter.finish(report);
  return report;
}

/// Sieve+Max: thresholding stage, then one augmentation pass. For e ∉ T the
/// prefix index is j = max{i : c(G_i) + c(e) ≤ K} over insertion-order
/// prefixes of T, and s_j keeps the best f(G_j ∪ e). Returns the best
/// G_i ∪ s_i (s_i possibly empty).
template <SetFunction F>
AlgoReport sieve_plus_max(StreamSource& stream, const Instance& instance,
                          const F& oracle, QueryLedger& ledger,
                          const StreamingParams& params) {
  detail::RunMeter meter(ledger);
  ThresholdSchedule schedule(params.lambda, params.alpha, params.epsilon,
                             instance.capacity());
  Evaluator<F> eval(instance, oracle, ledger);
  detail::ThresholdRun run =
      detail::run_thresholding(stream, eval, schedule, false);

  const std::size_t m = run.order.size();
  std::vector<double> best_value = run.prefix_value;
  std::vector<std::optional<ElementId>> augment(m + 1);
  std::unordered_set<ElementId> in_t(run.order.begin(), run.order.end());
  std::size_t augment_count = 0;
  std::size_t peak = m;

  stream.pass([&](const Element& e) {
    if (in_t.contains(e.id)) return;
    const double c = instance.cost_of(e.id);
    // prefix_cost is strictly increasing; find the last i with
    // prefix_cost[i] + c <= K.
    auto it = std::upper_bound(
        run.prefix_cost.begin(), run.prefix_cost.end(), c,
        [&](double cost_e, double prefix) {
          return !fits_within(prefix + cost_e, instance.capacity());
        });
    if (it == run.prefix_cost.begin()) return;  // does not fit even alone
    const auto j = static_cast<std::size_t>(it - run.prefix_cost.begin()) - 1;
    const std::span<const ElementId> g_j(run.order.data(), j);
    const double v = eval.value_with(g_j, run.prefix_cost[j], e.id);
    if (best_value[j] < v) {
      if (!augment[j]) ++augment_count;
      best_value[j] = v;
      augment[j] = e.id;
      peak = std::max(peak, m + augment_count);
    }
  });

  std::size_t best_i = 0;
  for (std::size_t i = 1; i <= m; ++i) {
    if (best_value[i] > best_value[best_i]) best_i = i;
  }
  AlgoReport report;
  report.algorithm = "sieve_plus_max";
  IdSet ids(run.order.begin(), run.order.begin() + static_cast<long>(best_i));
  double cost = run.prefix_cost[best_i];
  if (augment[best_i]) {
    ids.push_back(*augment[best_i]);
    cost += instance.cost_of(*augment[best_i]);
  }
  report.solution = {std::move(ids), best_value[best_i], cost};
  report.passes = run.passes + 1;
  report.rounds = report.passes;
  report.peak_retained = peak;
  report.trace = std::move(run.trace);
  meter.finish(report);
  return report;
}

/// Single-pass estimate of f(OPT): parallel threshold sets S_τ over the grid
/// τ = (1+ε)^i with τ_min/(1+ε) ≤ τ ≤ Δ, where Δ is the best singleton so
/// far and τ_min = max(2·LB, 2Δ)/(3K). Returns λ with α = 1/3 − ε.
template <SetFunction F>
LambdaEstimate estimate_lambda(StreamSource& stream, const Instance& instance,
                               const F& oracle, QueryLedger& ledger,
                               double epsilon_est = 1.0 / 6.0) {
  if (!(epsilon_est > 0.0 && epsilon_est < 1.0 / 3.0)) {
    throw InvalidArgument("epsilon_est must lie in (0, 1/3)");
  }
  const std::uint64_t start_queries = ledger.query_count();
  const int start_passes = stream.pass_count();
  Evaluator<F> eval(instance, oracle, ledger);
  const double capacity = instance.capacity();
  const double base = 1.0 + epsilon_est;
  const double log_base = std::log(base);

  struct ThresholdSet {
    IdSet ids;
    double cost = 0.0;
    double value = 0.0;
  };
  std::map<int, ThresholdSet> sets;  // keyed by grid exponent

  const IdSet empty;
  const double empty_value = eval.value(empty);
  double delta = 0.0;
  double lower_bound = 0.0;
  std::size_t peak = 0;

  auto tau_of = [&](int i) { return std::pow(base, i); };

  stream.pass([&](const Element& e) {
    const double c = instance.cost_of(e.id);
    const ElementId one[] = {e.id};
    const double singleton = eval.value(one);
    delta = std::max(delta, singleton);
    const double tau_min = std::max(2.0 * lower_bound, 2.0 * delta) / (3.0 * capacity);

    std::erase_if(sets, [&](const auto& kv) { return tau_of(kv.first) < tau_min; });
    if (delta <= 0.0) return;

    const double low = tau_min / base;
    int lo = static_cast<int>(std::floor(std::log(low) / log_base));
    while (tau_of(lo) < low) ++lo;
    int hi = static_cast<int>(std::ceil(std::log(delta) / log_base));
    while (tau_of(hi) > delta) --hi;

    for (int i = lo; i <= hi; ++i) {
      ThresholdSet& s = sets.try_emplace(i, ThresholdSet{{}, 0.0, empty_value}).first->second;
      if (!(s.cost < capacity) || !fits_within(s.cost + c, capacity)) continue;
      const double v = s.ids.empty() ? singleton : eval.value_with(s.ids, s.cost, e.id);
      if ((v - s.value) / c >= tau_of(i)) {
        s.ids.push_back(e.id);
        s.cost += c;
        s.value = v;
        lower_bound = std::max(lower_bound, v);
      }
    }
    std::size_t retained = 1;
    for (const auto& [i, s] : sets) retained += s.ids.size();
    peak = std::max(peak, retained);
  });

  LambdaEstimate out;
  out.lambda = delta;
  for (const auto& [i, s] : sets) out.lambda = std::max(out.lambda, s.value);
  if (out.lambda <= 0.0) out.lambda = std::max(empty_value, 0.0);
  out.alpha = 1.0 / 3.0 - epsilon_est;
  out.passes = stream.pass_count() - start_passes;
  out.queries = ledger.query_count() - start_queries;
  out.peak_retained = peak;
  out.retained_cap = lambda_retained_cap(instance, epsilon_est);
  return out;
}

/// estimate_lambda followed by sieve_plus_max; passes and queries of both
/// stages are summed in the report.
template <SetFunction F>
AlgoReport sieve_plus_max_estimated(StreamSource& stream,
                                    const Instance& instance, const F& oracle,
                                    QueryLedger& ledger, double epsilon,
                                    double epsilon_est = 1.0 / 6.0) {
  detail::RunMeter meter(ledger);
  LambdaEstimate est = estimate_lambda(stream, instance, oracle, ledger, epsilon_est);
  AlgoReport report;
  if (est.lambda <= 0.0) {
    // Nothing has positive value: the empty set is optimal.
    Evaluator<F> eval(instance, oracle, ledger);
    const IdSet empty;
    report.algorithm = "sieve_plus_max";
    report.solution = {empty, eval.value(empty), 0.0};
  } else {
    report = sieve_plus_max(stream, instance, oracle, ledger,
                            {est.lambda, est.alpha, epsilon});
  }
  report.passes += est.passes;
  report.rounds = report.passes;
  report.peak_retained = std::max(report.peak_retained, est.peak_retained);
  meter.finish(report);
  return report;
}

}  // namespace knapsub

#endif  // KNAPSUB_STREAMING_HPP_
