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

// Benchmark command line:
//   bench run --config <file> [--iterations N] [--output <csv>] [--workers N]
//   bench brute --dataset <file> --k <K> [--kind auto|snap|movielens|example]
//   bench datasets verify <path> [--max-movies N] [--max-users N]
// Exit status: 0 on success, 1 on invalid input, 2 when a suite cell was
// aborted (budget exceeded or failed).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "knapsub/bench/bench.hpp"
#include "knapsub/exact.hpp"

namespace {

using namespace knapsub;
using namespace knapsub::bench;

// Movie similarity tables grow with movies²; above this size verification
// reports counts only.
constexpr std::size_t kVerifyMovieLimit = 5000;

bool looks_like_movielens(const std::filesystem::path& path) {
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    const auto text = knapsub::bench::detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    return text == knapsub::bench::detail::kMovieLensHeader;
  }
  return false;
}

int run_command(const std::string& config_path, int iterations, const std::string& output,
                unsigned workers) {
  ExperimentConfig config = load_config(config_path);
  if (iterations > 0) config.iterations = iterations;
  if (!output.empty()) config.output = output;
  if (workers > 0) config.workers = workers;
  config.validate();
  const SuiteResult result = run_suite(config);
  if (config.output.empty() || config.output == "-") {
    write_csv(std::cout, result.rows);
  } else {
    std::ofstream out(config.output);
    if (!out) throw InvalidArgument("cannot write " + config.output);
    write_csv(out, result.rows);
    std::cerr << "wrote " << result.rows.size() << " rows to " << config.output << '\n';
  }
  for (const ResultRow& row : result.rows) {
    if (row.flagged()) {
      std::cerr << "flagged: " << row.algorithm << " K=" << row.k << " (" << row.status
                << ")\n";
    }
  }
  return result.any_flagged() ? 2 : 0;
}

int brute_command(const std::string& dataset, double k, const std::string& kind) {
  Dataset data;
  const bool movielens =
      kind == "movielens" || (kind == "auto" && dataset != "example" && looks_like_movielens(dataset));
  if (kind == "example" || dataset == "example") {
    data = tight_example_dataset();
  } else if (movielens) {
    data = movie_dataset(dataset, ingest_movielens(dataset));
  } else {
    data = coverage_dataset(dataset, ingest_snap(dataset).adjacency);
  }
  const Instance instance = data.instance(k);
  const Solution opt = brute_force_opt(instance, data.objective);
  std::printf("n=%zu K=%.17g\nopt_value=%.17g\nopt_cost=%.17g\nopt_ids=", instance.size(),
              instance.capacity(), opt.value, opt.cost);
  for (std::size_t i = 0; i < opt.ids.size(); ++i) {
    std::printf("%s%u", i ? " " : "", opt.ids[i]);
  }
  std::printf("\n");
  return 0;
}

int verify_command(const std::string& path, std::size_t max_movies, std::size_t max_users) {
  if (looks_like_movielens(path)) {
    const MovieData data = ingest_movielens(path, max_movies, max_users);
    std::printf("format=movielens\nratings=%zu\nkept=%zu\nmovies=%zu\nusers=%zu\nmean=%.17g\n",
                data.ratings_parsed, data.ratings_kept, data.movie_ids.size(),
                data.user_ids.size(), data.global_mean);
    bool finite = true;
    for (const auto& movie : data.vectors.movies) {
      double norm = 0.0;
      for (auto [u, dev] : movie) norm += dev * dev;
      finite = finite && std::isfinite(norm);
    }
    std::printf("norms_finite=%s\n", finite ? "yes" : "no");
    bool costs_ok = true;
    if (data.movie_ids.size() <= kVerifyMovieLimit) {
      const MovieObjective objective(data.vectors);
      for (double c : movie_costs(objective)) costs_ok = costs_ok && c >= 1.0;
      std::printf("costs_at_least_one=%s\n", costs_ok ? "yes" : "no");
    } else {
      std::printf("costs_at_least_one=skipped (use --max-movies <= %zu)\n", kVerifyMovieLimit);
    }
    return finite && costs_ok ? 0 : 1;
  }
  const SnapGraph graph = ingest_snap(path);
  const std::vector<double> costs = coverage_costs(graph.adjacency);
  bool costs_ok = true;
  for (double c : costs) costs_ok = costs_ok && c >= 1.0;
  std::printf("format=snap\nvertices=%zu\nedges=%zu\ncosts_at_least_one=%s\n",
              graph.vertex_count(), graph.edge_count, costs_ok ? "yes" : "no");
  return costs_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Knapsack-constrained submodular maximization benchmarks"};
  app.require_subcommand(1);

  std::string config_path;
  int iterations = 0;
  std::string output;
  unsigned workers = 0;
  auto* run = app.add_subcommand("run", "Run an experiment suite and write CSV results");
  run->add_option("--config", config_path, "Experiment config file")->required();
  run->add_option("--iterations", iterations, "Repetitions per cell (overrides config)");
  run->add_option("--output", output, "CSV path, '-' for stdout (overrides config)");
  run->add_option("--workers", workers, "Cells run concurrently (overrides config)");

  std::string dataset;
  double k = 0.0;
  std::string kind = "auto";
  auto* brute = app.add_subcommand("brute", "Exact optimum of a small dataset");
  brute->add_option("--dataset", dataset, "Edge list, ratings CSV or 'example'")->required();
  brute->add_option("--k", k, "Knapsack capacity")->required()->check(CLI::PositiveNumber);
  brute->add_option("--kind", kind, "Dataset format")
      ->check(CLI::IsMember({"auto", "snap", "movielens", "example"}));

  std::string verify_path;
  std::size_t max_movies = 0;
  std::size_t max_users = 0;
  auto* datasets = app.add_subcommand("datasets", "Dataset utilities");
  datasets->require_subcommand(1);
  auto* verify = datasets->add_subcommand("verify", "Ingest a dataset and report counts");
  verify->add_option("path", verify_path, "Dataset file")->required()->check(CLI::ExistingFile);
  verify->add_option("--max-movies", max_movies, "Keep the most-rated movies (0 = all)");
  verify->add_option("--max-users", max_users, "Keep the most active users (0 = all)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return run_command(config_path, iterations, output, workers);
    if (*brute) return brute_command(dataset, k, kind);
    if (*verify) return verify_command(verify_path, max_movies, max_users);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
