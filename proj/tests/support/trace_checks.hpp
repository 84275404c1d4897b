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

// Post-hoc checks of the performance-curve inequalities on recorded traces.
// Values are normalized by f(OPT) and costs by c(OPT); o1 is the costliest
// item of the brute-forced optimum.

#ifndef KNAPSUB_TESTS_SUPPORT_TRACE_CHECKS_HPP_
#define KNAPSUB_TESTS_SUPPORT_TRACE_CHECKS_HPP_

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "knapsub/knapsub.hpp"

namespace knapsub::testing {

struct CheckResult {
  bool ok = true;
  int points = 0;  // breakpoints inside the valid range
  std::string failure;
};

struct OptSummary {
  double value = 0.0;
  double cost = 0.0;
  ElementId o1 = 0;
  double o1_cost = 0.0;
};

inline std::optional<OptSummary> summarize_opt(const Instance& instance,
                                               const Solution& opt) {
  if (opt.ids.empty() || !(opt.value > 0.0)) return std::nullopt;
  OptSummary s{opt.value, opt.cost, opt.ids.front(), 0.0};
  for (ElementId id : opt.ids) {
    const double c = instance.cost_of(id);
    if (c > s.o1_cost) {
      s.o1_cost = c;
      s.o1 = id;
    }
  }
  return s;
}

/// g(x) ≥ 1 − exp(−x/slack) at every breakpoint x ≤ 1 − c(o1). Use slack = 1
/// for greedy traces and 1 + ε for thresholding traces.
inline CheckResult check_exponential_bound(const GreedyTrace& trace,
                                           const OptSummary& opt, double slack,
                                           double tol = 1e-9) {
  CheckResult result;
  const double limit = 1.0 - opt.o1_cost / opt.cost;
  for (const TraceStep& step : trace.steps) {
    const double x = step.cum_cost / opt.cost;
    if (x > limit + 1e-12) break;
    ++result.points;
    const double g = step.value / opt.value;
    const double rhs = 1.0 - std::exp(-x / slack);
    if (g < rhs - tol) {
      std::ostringstream msg;
      msg << "g(" << x << ") = " << g << " < " << rhs;
      result.ok = false;
      result.failure = msg.str();
      return result;
    }
  }
  return result;
}

/// g1(x) + (1 − c(o1)) g'(x) ≥ 1, where g1(x) = f(G_j ∪ o1) and g' is the
/// density of the next greedy pick. Every breakpoint x ≤ 1 − c(o1) is
/// checked, which includes the narrower range x ≤ 1 − c(o1) − c* for any
/// c* ≥ 0.
template <SetFunction F>
CheckResult check_augmented_inequality(const Instance& instance, const F& f,
                                       const GreedyTrace& trace,
                                       const OptSummary& opt,
                                       double tol = 1e-9) {
  CheckResult result;
  QueryLedger ledger(false);
  Evaluator<F> eval(instance, f, ledger);
  const double o1_norm = opt.o1_cost / opt.cost;
  const double limit = 1.0 - o1_norm;
  IdSet prefix;
  for (std::size_t j = 0; j < trace.steps.size(); ++j) {
    const TraceStep& step = trace.steps[j];
    const double x = step.cum_cost / opt.cost;
    if (x > limit + 1e-12) break;
    ++result.points;
    const bool has_o1 = std::find(prefix.begin(), prefix.end(), opt.o1) != prefix.end();
    const double with_o1 = has_o1 ? step.value : eval.value_with(prefix, opt.o1);
    const double g1 = with_o1 / opt.value;
    const double g_prime = step.next_density * opt.cost / opt.value;
    const double lhs = g1 + (1.0 - o1_norm) * g_prime;
    if (lhs < 1.0 - tol) {
      std::ostringstream msg;
      msg << "at x = " << x << ": g1 = " << g1 << ", g' = " << g_prime
          << ", lhs = " << lhs;
      result.ok = false;
      result.failure = msg.str();
      return result;
    }
    if (j < trace.order.size()) prefix.push_back(trace.order[j]);
  }
  return result;
}

}  // namespace knapsub::testing

#endif  // KNAPSUB_TESTS_SUPPORT_TRACE_CHECKS_HPP_
