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

// Experiment configuration: a flat `key = value` text file. Lines starting
// with '#' and blank lines are ignored; lists are comma separated.
//
//   name = ego-facebook           label written to the dataset column
//   kind = snap                   snap | movielens | synthetic | example
//   dataset = data/facebook_combined.txt
//   algorithms = greedy, greedy_plus_max, sieve_plus_max
//   k = 5, 10, 20
//   epsilon = 0.1                 threshold step of the streaming algorithms
//   lambda_epsilon = 0.1666667    slack of the lambda estimator
//   d = 1                         partial enumeration depth
//   seed = 1                      partitions in the distributed simulation
//   budget = 100000000            query budget per cell
//   iterations = 1                repetitions averaged into value
//   output = results.csv          '-' or empty writes to stdout
//   workers = 1                   cells run concurrently
//   machines = 0                  distributed machines, 0 = sqrt(n / K)
//   max_movies = 0, max_users = 0 MovieLens truncation, 0 = keep all
//   synthetic_n = 2000, synthetic_degree = 5

#ifndef KNAPSUB_BENCH_CONFIG_HPP_
#define KNAPSUB_BENCH_CONFIG_HPP_

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "knapsub/bench/ingest.hpp"
#include "knapsub/core.hpp"

namespace knapsub::bench {

enum class DatasetKind { kSnap, kMovieLens, kSynthetic, kExample };

inline const std::vector<std::string>& known_algorithms() {
  static const std::vector<std::string> names = {
      "greedy",         "greedy_or_max", "greedy_plus_max",
      "partial_enum",   "sieve",         "sieve_or_max",
      "sieve_plus_max", "distributed_sieve_plus_max"};
  return names;
}

struct ExperimentConfig {
  std::string name;
  DatasetKind kind = DatasetKind::kExample;
  std::filesystem::path dataset;
  std::vector<std::string> algorithms;
  std::vector<double> k_values;
  double epsilon = 0.1;
  double lambda_epsilon = 1.0 / 6.0;
  int d = 1;
  std::uint64_t seed = 0;
  std::uint64_t budget = 100'000'000;
  int iterations = 1;
  std::string output;
  unsigned workers = 1;
  std::size_t machines = 0;
  std::size_t max_movies = 0;
  std::size_t max_users = 0;
  std::size_t synthetic_n = 2000;
  std::size_t synthetic_degree = 5;

  /// Throws InvalidArgument when a field is out of range.
  void validate() const {
    for (double k : k_values) {
      if (!(k > 0.0)) throw InvalidArgument("every K must be positive");
    }
    if (budget == 0) throw InvalidArgument("budget must be positive");
    if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
    if (!(lambda_epsilon > 0.0 && lambda_epsilon < 1.0 / 3.0)) {
      throw InvalidArgument("lambda_epsilon must lie in (0, 1/3)");
    }
    if (d < 0 || d > 3) throw InvalidArgument("d must lie in [0, 3]");
    if (iterations < 1) throw InvalidArgument("iterations must be at least 1");
    if (workers < 1) throw InvalidArgument("workers must be at least 1");
    if (name.find_first_of(",\"\n") != std::string::npos) {
      throw InvalidArgument("name must not contain commas, quotes or newlines");
    }
    for (const std::string& a : algorithms) {
      bool known = false;
      for (const std::string& k : known_algorithms()) known = known || k == a;
      if (!known) throw InvalidArgument("unknown algorithm '" + a + "'");
    }
    if ((kind == DatasetKind::kSnap || kind == DatasetKind::kMovieLens) &&
        dataset.empty()) {
      throw InvalidArgument("dataset path is required for this kind");
    }
  }
};

namespace detail {

inline std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const std::string_view item =
        trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                 : comma - start));
    if (!item.empty()) out.emplace_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
T parse_field(const std::string& key, const std::string& value, std::size_t line_no) {
  T out{};
  if (!parse_number(value, out)) {
    throw ParseError("invalid value for '" + key + "': " + value, line_no);
  }
  return out;
}

}  // namespace detail

inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    const std::string key(detail::trim(text.substr(0, eq)));
    const std::string value(detail::trim(text.substr(eq + 1)));
    if (!seen.insert(key).second) throw ParseError("duplicate key '" + key + "'", line_no);
    if (key == "name") {
      config.name = value;
    } else if (key == "kind") {
      if (value == "snap") config.kind = DatasetKind::kSnap;
      else if (value == "movielens") config.kind = DatasetKind::kMovieLens;
      else if (value == "synthetic") config.kind = DatasetKind::kSynthetic;
      else if (value == "example") config.kind = DatasetKind::kExample;
      else throw ParseError("unknown kind '" + value + "'", line_no);
    } else if (key == "dataset") {
      config.dataset = value;
    } else if (key == "algorithms") {
      config.algorithms = detail::split_list(value);
    } else if (key == "k") {
      config.k_values.clear();
      for (const std::string& item : detail::split_list(value)) {
        config.k_values.push_back(detail::parse_field<double>(key, item, line_no));
      }
    } else if (key == "epsilon") {
      config.epsilon = detail::parse_field<double>(key, value, line_no);
    } else if (key == "lambda_epsilon") {
      config.lambda_epsilon = detail::parse_field<double>(key, value, line_no);
    } else if (key == "d") {
      config.d = detail::parse_field<int>(key, value, line_no);
    } else if (key == "seed") {
      config.seed = detail::parse_field<std::uint64_t>(key, value, line_no);
    } else if (key == "budget") {
      config.budget = detail::parse_field<std::uint64_t>(key, value, line_no);
    } else if (key == "iterations") {
      config.iterations = detail::parse_field<int>(key, value, line_no);
    } else if (key == "output") {
      config.output = value;
    } else if (key == "workers") {
      config.workers = detail::parse_field<unsigned>(key, value, line_no);
    } else if (key == "machines") {
      config.machines = detail::parse_field<std::size_t>(key, value, line_no);
    } else if (key == "max_movies") {
      config.max_movies = detail::parse_field<std::size_t>(key, value, line_no);
    } else if (key == "max_users") {
      config.max_users = detail::parse_field<std::size_t>(key, value, line_no);
    } else if (key == "synthetic_n") {
      config.synthetic_n = detail::parse_field<std::size_t>(key, value, line_no);
    } else if (key == "synthetic_degree") {
      config.synthetic_degree = detail::parse_field<std::size_t>(key, value, line_no);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no);
    }
  }
  if (config.name.empty()) {
    config.name = config.kind == DatasetKind::kExample     ? "tight_example"
                  : config.kind == DatasetKind::kSynthetic ? "synthetic"
                                                           : config.dataset.stem().string();
  }
  config.validate();
  return config;
}

inline ExperimentConfig parse_config_text(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

/// A relative dataset path resolves against the config file's folder; a
/// relative output path resolves against the working directory.
inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in = detail::open_or_throw(path);
  ExperimentConfig config = parse_config(in);
  const auto base = path.parent_path();
  if (!config.dataset.empty() && config.dataset.is_relative()) {
    config.dataset = base / config.dataset;
  }
  return config;
}

}  // namespace knapsub::bench

#endif  // KNAPSUB_BENCH_CONFIG_HPP_
