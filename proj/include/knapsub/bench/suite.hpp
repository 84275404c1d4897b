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

// Experiment driver: loads a dataset, runs every (algorithm, K) cell with a
// private budgeted ledger and reports instance-specific approximation
// ratios against the greedy-trace upper bound.

#ifndef KNAPSUB_BENCH_SUITE_HPP_
#define KNAPSUB_BENCH_SUITE_HPP_

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <istream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "knapsub/bench/config.hpp"
#include "knapsub/bench/ingest.hpp"
#include "knapsub/bench/synthetic.hpp"
#include "knapsub/distributed.hpp"
#include "knapsub/exact.hpp"
#include "knapsub/objectives.hpp"
#include "knapsub/offline.hpp"
#include "knapsub/parallel.hpp"
#include "knapsub/streaming.hpp"

namespace knapsub::bench {

/// Raw item costs (min 1, indexed by element id) and the objective.
struct Dataset {
  std::string name;
  std::vector<double> costs;
  AnyObjective objective;

  std::vector<Element> elements() const {
    std::vector<Element> out(costs.size());
    for (std::size_t i = 0; i < costs.size(); ++i) {
      out[i] = {static_cast<ElementId>(i), costs[i]};
    }
    return out;
  }

  Instance instance(double capacity) const { return normalize(elements(), capacity); }
};

/// Items (value, cost) = (1/2, 1), (1/2, 1), (1/2 + eps, 1 + eps): with
/// K = 2 greedy-type algorithms stop at the third item while {0, 1} is
/// optimal.
inline Dataset tight_example_dataset(double eps = 0.1) {
  Dataset data;
  data.name = "tight_example";
  data.costs = {1.0, 1.0, 1.0 + eps};
  data.objective = AnyObjective(std::make_shared<const ModularObjective>(
      std::vector<double>{0.5, 0.5, 0.5 + eps}));
  return data;
}

inline Dataset coverage_dataset(std::string name, Adjacency adjacency) {
  Dataset data;
  data.name = std::move(name);
  data.costs = coverage_costs(adjacency);
  data.objective = AnyObjective(
      std::make_shared<const CoverageObjective>(std::move(adjacency)));
  return data;
}

inline Dataset movie_dataset(std::string name, const MovieData& movies) {
  auto objective = std::make_shared<const MovieObjective>(movies.vectors);
  Dataset data;
  data.name = std::move(name);
  data.costs = movie_costs(*objective);
  data.objective = AnyObjective(std::move(objective));
  return data;
}

inline Dataset load_dataset(const ExperimentConfig& config) {
  Dataset data;
  switch (config.kind) {
    case DatasetKind::kExample:
      data = tight_example_dataset();
      break;
    case DatasetKind::kSnap:
      data = coverage_dataset(config.name, ingest_snap(config.dataset).adjacency);
      break;
    case DatasetKind::kSynthetic:
      data = coverage_dataset(config.name,
                              preferential_attachment_graph(config.synthetic_n,
                                                            config.synthetic_degree,
                                                            config.seed));
      break;
    case DatasetKind::kMovieLens:
      data = movie_dataset(config.name, ingest_movielens(config.dataset, config.max_movies,
                                                         config.max_users));
      break;
  }
  data.name = config.name;
  return data;
}

/// One CSV row. `status` is "ok" or the reason a cell was aborted; aborted
/// cells carry zeros in the measured columns. `value` is the mean over the
/// configured iterations and `value_stddev` their sample deviation.
struct ResultRow {
  std::string dataset;
  std::string algorithm;
  double k = 0.0;
  double value = 0.0;
  double upper_bound = 0.0;
  double approx_ratio = 0.0;
  std::uint64_t queries = 0;
  int passes = 0;
  int rounds = 0;
  double wall_time_ms = 0.0;
  std::string status = "ok";
  double value_stddev = 0.0;

  bool flagged() const { return status != "ok"; }
  bool operator==(const ResultRow&) const = default;
};

inline constexpr const char* kCsvHeader =
    "dataset,algorithm,K,value,upper_bound,approx_ratio,queries,passes,rounds,"
    "wall_time_ms,status,value_stddev";

namespace detail {

// Shortest round-trip-safe text for a double.
inline std::string format_real(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", x);
  return buffer;
}

inline std::string csv_line(const ResultRow& r, bool with_wall_time) {
  std::ostringstream out;
  out << r.dataset << ',' << r.algorithm << ',' << format_real(r.k) << ','
      << format_real(r.value) << ',' << format_real(r.upper_bound) << ','
      << format_real(r.approx_ratio) << ',' << r.queries << ',' << r.passes << ','
      << r.rounds << ',' << (with_wall_time ? format_real(r.wall_time_ms) : "") << ','
      << r.status << ',' << format_real(r.value_stddev);
  return out.str();
}

}  // namespace detail

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const ResultRow& r : rows) out << detail::csv_line(r, true) << '\n';
}

inline std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || detail::trim(line) != kCsvHeader) {
    throw ParseError("expected result header", line_no);
  }
  std::vector<ResultRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      f.push_back(line.substr(start, comma == std::string::npos ? std::string::npos
                                                                 : comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 12) throw ParseError("expected 12 fields", line_no);
    ResultRow r;
    r.dataset = f[0];
    r.algorithm = f[1];
    r.status = std::string(detail::trim(f[10]));
    const bool ok = detail::parse_number(f[2], r.k) && detail::parse_number(f[3], r.value) &&
                    detail::parse_number(f[4], r.upper_bound) &&
                    detail::parse_number(f[5], r.approx_ratio) &&
                    detail::parse_number(f[6], r.queries) &&
                    detail::parse_number(f[7], r.passes) &&
                    detail::parse_number(f[8], r.rounds) &&
                    detail::parse_number(f[9], r.wall_time_ms) &&
                    detail::parse_number(f[11], r.value_stddev);
    if (!ok) throw ParseError("malformed numeric field", line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

/// FNV-1a over the CSV text with the wall-time column blanked, so equal
/// digests mean byte-identical results up to timing.
inline std::uint64_t determinism_digest(const std::vector<ResultRow>& rows) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&](const std::string& text) {
    for (unsigned char ch : text) {
      hash ^= ch;
      hash *= 0x100000001b3ULL;
    }
    hash ^= '\n';
    hash *= 0x100000001b3ULL;
  };
  mix(kCsvHeader);
  for (const ResultRow& r : rows) mix(detail::csv_line(r, false));
  return hash;
}

/// The per-(dataset, K) certificate: greedy trace plus the derived bound.
/// Its queries go to a private unbudgeted ledger and are not charged to
/// any cell.
inline double greedy_upper_bound(const Instance& instance, const AnyObjective& f) {
  QueryLedger ledger(false);
  const OfflineResult run = greedy(instance, f, ledger);
  return upper_bound_opt(instance, f, *run.report.trace, ledger);
}

/// Runs one algorithm once on a fresh ledger with the config's budget.
/// `iteration` varies the seed of randomized algorithms.
inline AlgoReport run_algorithm(const std::string& algorithm, const Instance& instance,
                                const AnyObjective& f, const ExperimentConfig& config,
                                int iteration, QueryLedger& ledger) {
  if (algorithm == "greedy") return greedy(instance, f, ledger).report;
  if (algorithm == "greedy_or_max") return greedy_or_max(instance, f, ledger).report;
  if (algorithm == "greedy_plus_max") return greedy_plus_max(instance, f, ledger).report;
  if (algorithm == "partial_enum") {
    return partial_enum_greedy(instance, f, config.d, ledger).report;
  }
  if (algorithm == "sieve_plus_max") {
    StreamSource stream = StreamSource::from_instance(instance);
    return sieve_plus_max_estimated(stream, instance, f, ledger, config.epsilon,
                                    config.lambda_epsilon);
  }
  // The remaining algorithms take λ from one estimation pass, which is
  // charged to the cell and counted as an extra pass or round.
  knapsub::detail::RunMeter meter(ledger);
  StreamSource stream = StreamSource::from_instance(instance);
  const LambdaEstimate est =
      estimate_lambda(stream, instance, f, ledger, config.lambda_epsilon);
  AlgoReport report;
  if (est.lambda <= 0.0) {
    Evaluator<AnyObjective> eval(instance, f, ledger);
    const IdSet empty;
    report.algorithm = algorithm;
    report.solution = {empty, eval.value(empty), 0.0};
  } else if (algorithm == "sieve" || algorithm == "sieve_or_max") {
    const StreamingParams params{est.lambda, est.alpha, config.epsilon};
    report = algorithm == "sieve" ? sieve(stream, instance, f, ledger, params)
                                  : sieve_or_max(stream, instance, f, ledger, params);
  } else {
    const MpcConfig mpc = MpcConfig::make(instance.size(), instance.k_tilde(),
                                          config.seed + static_cast<std::uint64_t>(iteration),
                                          8.0, config.machines);
    report = distributed_sieve_plus_max(instance, f, ledger,
                                        {est.lambda, est.alpha, config.epsilon}, mpc)
                 .report;
  }
  report.passes += est.passes;
  report.rounds += est.passes;
  meter.finish(report);
  return report;
}

struct SuiteResult {
  std::vector<ResultRow> rows;
  bool any_flagged() const {
    for (const ResultRow& r : rows) {
      if (r.flagged()) return true;
    }
    return false;
  }
};

/// Runs every (K, algorithm) cell in config order. A cell that exceeds its
/// query budget or fails is reported with a status and the suite moves on.
inline SuiteResult run_suite(const ExperimentConfig& config, const Dataset& data) {
  struct Cell {
    std::size_t k_index;
    std::string algorithm;
  };
  std::vector<Instance> instances;
  std::vector<double> bounds;
  for (double k : config.k_values) {
    instances.push_back(data.instance(k));
    bounds.push_back(config.algorithms.empty()
                         ? 0.0
                         : greedy_upper_bound(instances.back(), data.objective));
  }
  std::vector<Cell> cells;
  for (std::size_t ki = 0; ki < config.k_values.size(); ++ki) {
    for (const std::string& a : config.algorithms) cells.push_back({ki, a});
  }
  SuiteResult result;
  result.rows.resize(cells.size());
  knapsub::detail::parallel_for(cells.size(), config.workers, [&](std::size_t c) {
    const Cell& cell = cells[c];
    ResultRow& row = result.rows[c];
    row.dataset = data.name;
    row.algorithm = cell.algorithm;
    row.k = config.k_values[cell.k_index];
    const Instance& instance = instances[cell.k_index];
    std::vector<double> values;
    try {
      for (int it = 0; it < config.iterations; ++it) {
        QueryLedger ledger(true, config.budget);
        const AlgoReport report =
            run_algorithm(cell.algorithm, instance, data.objective, config, it, ledger);
        values.push_back(report.solution.value);
        row.queries = std::max(row.queries, report.queries);
        row.passes = std::max(row.passes, report.passes);
        row.rounds = std::max(row.rounds, report.rounds);
        row.wall_time_ms +=
            std::chrono::duration<double, std::milli>(report.wall_time).count() /
            config.iterations;
      }
    } catch (const BudgetExceeded&) {
      row = ResultRow{data.name, cell.algorithm, row.k};
      row.status = "budget_exceeded";
      return;
    } catch (const Error&) {
      row = ResultRow{data.name, cell.algorithm, row.k};
      row.status = "error";
      return;
    }
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) var += (v - mean) * (v - mean);
    row.value = mean;
    row.value_stddev =
        values.size() > 1 ? std::sqrt(var / static_cast<double>(values.size() - 1)) : 0.0;
    row.upper_bound = bounds[cell.k_index];
    // A zero bound means nothing has value, so every algorithm is optimal.
    row.approx_ratio = row.upper_bound > 0.0 ? row.value / row.upper_bound : 1.0;
  });
  return result;
}

inline SuiteResult run_suite(const ExperimentConfig& config) {
  return run_suite(config, load_dataset(config));
}

}  // namespace knapsub::bench

#endif  // KNAPSUB_BENCH_SUITE_HPP_
