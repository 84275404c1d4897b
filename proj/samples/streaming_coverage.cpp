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

// Coverage on a synthetic social graph: offline, streaming and simulated
// distributed runs side by side, each with its own query ledger.

#include <cstdio>
#include <memory>

#include "knapsub/bench/bench.hpp"
#include "knapsub/knapsub.hpp"

int main() {
  using namespace knapsub;
  const bench::Dataset data = bench::coverage_dataset(
      "synthetic", bench::preferential_attachment_graph(3000, 4, 7));
  const double capacity = 20.0;
  const Instance instance = data.instance(capacity);
  const double bound = bench::greedy_upper_bound(instance, data.objective);
  std::printf("n=%zu K=%.1f upper bound %.4f\n", instance.size(), capacity, bound);

  auto show = [&](const AlgoReport& r) {
    std::printf("%-28s value %.4f  ratio>=%.3f  queries %8llu  passes %2d  rounds %2d\n",
                r.algorithm.c_str(), r.solution.value, r.solution.value / bound,
                static_cast<unsigned long long>(r.queries), r.passes, r.rounds);
  };
  {
    QueryLedger ledger;
    show(greedy_plus_max(instance, data.objective, ledger).report);
  }
  StreamSource stream = StreamSource::from_instance(instance);
  QueryLedger lambda_ledger;
  const LambdaEstimate est = estimate_lambda(stream, instance, data.objective, lambda_ledger);
  std::printf("lambda %.4f from one pass, %llu queries\n", est.lambda,
              static_cast<unsigned long long>(est.queries));
  {
    QueryLedger ledger;
    show(sieve_plus_max(stream, instance, data.objective, ledger,
                        {est.lambda, est.alpha, 0.1}));
  }
  {
    QueryLedger ledger;
    const MpcConfig config = MpcConfig::make(instance.size(), instance.k_tilde(), 1);
    const DistributedResult run = distributed_sieve_plus_max(
        instance, data.objective, ledger, {est.lambda, est.alpha, 0.1}, config);
    show(run.report);
    std::printf("machines %zu, memory cap %zu, peak central receipts %llu\n", config.machines,
                config.memory_cap,
                static_cast<unsigned long long>(run.report.max_central_receipts));
  }
  return 0;
}
