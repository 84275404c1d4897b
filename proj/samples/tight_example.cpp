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

// Runs every offline algorithm on the three-item instance where greedy
// augmentation is tight, and prints values against the exact optimum.

#include <cstdio>
#include <memory>

#include "knapsub/knapsub.hpp"

int main() {
  using namespace knapsub;
  const double eps = 0.1;
  const ModularObjective f({0.5, 0.5, 0.5 + eps});
  const Instance instance({{0, 1.0}, {1, 1.0}, {2, 1.0 + eps}}, 2.0);

  const Solution opt = brute_force_opt(instance, f);
  std::printf("optimum            %.4f\n", opt.value);
  auto show = [&](const AlgoReport& r) {
    std::printf("%-18s %.4f  ratio %.4f  queries %llu\n", r.algorithm.c_str(),
                r.solution.value, r.solution.value / opt.value,
                static_cast<unsigned long long>(r.queries));
  };
  {
    QueryLedger ledger;
    show(greedy(instance, f, ledger).report);
  }
  {
    QueryLedger ledger;
    show(greedy_or_max(instance, f, ledger).report);
  }
  {
    QueryLedger ledger;
    show(greedy_plus_max(instance, f, ledger).report);
  }
  {
    QueryLedger ledger;
    show(partial_enum_greedy(instance, f, 1, ledger).report);
  }
  {
    QueryLedger ledger;
    StreamSource stream = StreamSource::from_instance(instance);
    show(sieve_plus_max_estimated(stream, instance, f, ledger, 0.1));
  }
  QueryLedger bound_ledger(false);
  const OfflineResult g = greedy(instance, f, bound_ledger);
  std::printf("greedy-trace bound %.4f\n",
              upper_bound_opt(instance, f, *g.report.trace, bound_ledger));
  return 0;
}
