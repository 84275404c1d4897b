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

// Objective functions: neighbourhood coverage, movie similarity, modular
// values and the hidden-pair construction used to probe query lower bounds.

#ifndef KNAPSUB_OBJECTIVES_HPP_
#define KNAPSUB_OBJECTIVES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "knapsub/core.hpp"

namespace knapsub {

using Adjacency = std::vector<std::vector<ElementId>>;

/// f(Z) = |Z ∪ N(Z)| / |V| on an undirected graph.
class CoverageObjective {
 public:
  explicit CoverageObjective(Adjacency adjacency)
      : adjacency_(std::move(adjacency)) {
    for (ElementId v = 0; v < adjacency_.size(); ++v) {
      for (ElementId u : adjacency_[v]) {
        if (u >= adjacency_.size()) {
          throw InvalidArgument("neighbour id out of range");
        }
      }
    }
  }

  std::size_t n_vertices() const { return adjacency_.size(); }
  const Adjacency& adjacency() const { return adjacency_; }

  double value(std::span<const ElementId> ids) const {
    if (adjacency_.empty()) return 0.0;
    // Stamp-based membership so repeated calls need no clearing.
    thread_local std::vector<std::uint32_t> stamp;
    thread_local std::uint32_t epoch = 0;
    if (stamp.size() < adjacency_.size()) stamp.assign(adjacency_.size(), 0);
    if (++epoch == 0) {
      std::fill(stamp.begin(), stamp.end(), 0);
      epoch = 1;
    }
    std::size_t covered = 0;
    auto mark = [&](ElementId v) {
      if (stamp[v] != epoch) {
        stamp[v] = epoch;
        ++covered;
      }
    };
    for (ElementId z : ids) {
      mark(z);
      for (ElementId u : adjacency_[z]) mark(u);
    }
    return static_cast<double>(covered) /
           static_cast<double>(adjacency_.size());
  }

 private:
  Adjacency adjacency_;
};

/// Vertex costs proportional to (deg(v) - alpha) / |V|, scaled so the
/// cheapest vertex costs exactly 1. Isolated vertices get the minimum cost.
inline std::vector<double> coverage_costs(const Adjacency& adjacency,
                                          double alpha = 1.0 / 20.0) {
  const double n = static_cast<double>(adjacency.size());
  std::vector<double> raw(adjacency.size());
  double min_positive = std::numeric_limits<double>::infinity();
  for (std::size_t v = 0; v < adjacency.size(); ++v) {
    raw[v] = (static_cast<double>(adjacency[v].size()) - alpha) / n;
    if (raw[v] > 0.0) min_positive = std::min(min_positive, raw[v]);
  }
  if (!std::isfinite(min_positive)) return std::vector<double>(raw.size(), 1.0);
  std::vector<double> costs(raw.size());
  for (std::size_t v = 0; v < raw.size(); ++v) {
    costs[v] = raw[v] > 0.0 ? raw[v] / min_positive : 1.0;
  }
  return costs;
}

/// Sparse per-movie rating deviations: entries (user index, r - r_avg),
/// sorted by user index.
struct RatingVectors {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> movies;
  std::size_t n_users = 0;
};

inline double sparse_dot(
    const std::vector<std::pair<std::uint32_t, double>>& a,
    const std::vector<std::pair<std::uint32_t, double>>& b) {
  double sum = 0.0;
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      sum += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  return sum;
}

/// f_X(Z) = Σ_{x∈X} max(0, max_{z∈Z} <v_z, v_x>). Similarities are
/// precomputed into a |X| x |movies| table.
class MovieObjective {
 public:
  /// `targets` empty means every movie is a target.
  explicit MovieObjective(const RatingVectors& vectors, IdSet targets = {})
      : n_movies_(vectors.movies.size()), targets_(std::move(targets)) {
    if (targets_.empty()) {
      targets_.resize(n_movies_);
      for (std::size_t i = 0; i < n_movies_; ++i) {
        targets_[i] = static_cast<ElementId>(i);
      }
    }
    for (ElementId x : targets_) {
      if (x >= n_movies_) throw InvalidArgument("target movie out of range");
    }
    // Scatter one target at a time into a user-indexed buffer so the
    // precompute costs O(|X| · nnz) time and O(users) extra memory.
    std::vector<double> scatter(vectors.n_users, 0.0);
    similarity_.assign(targets_.size() * n_movies_, 0.0);
    for (std::size_t xi = 0; xi < targets_.size(); ++xi) {
      const auto& vx = vectors.movies[targets_[xi]];
      for (auto [u, dev] : vx) {
        if (u >= vectors.n_users) throw InvalidArgument("user index out of range");
        scatter[u] = dev;
      }
      for (std::size_t z = 0; z < n_movies_; ++z) {
        double dot = 0.0;
        for (auto [u, dev] : vectors.movies[z]) {
          if (u < vectors.n_users) dot += dev * scatter[u];
        }
        similarity_[xi * n_movies_ + z] = dot;
      }
      for (auto [u, dev] : vx) scatter[u] = 0.0;
    }
  }

  std::size_t n_movies() const { return n_movies_; }
  const IdSet& targets() const { return targets_; }

  double similarity(std::size_t target_index, ElementId movie) const {
    return similarity_[target_index * n_movies_ + movie];
  }

  double value(std::span<const ElementId> ids) const {
    double total = 0.0;
    for (std::size_t xi = 0; xi < targets_.size(); ++xi) {
      const double* row = similarity_.data() + xi * n_movies_;
      double best = 0.0;
      for (ElementId z : ids) best = std::max(best, row[z]);
      total += best;
    }
    return total;
  }

 private:
  std::size_t n_movies_;
  IdSet targets_;
  std::vector<double> similarity_;
};

/// c(x) proportional to f_X({x}); cheapest valued movie costs 1 and movies
/// with zero singleton value cost 1.
inline std::vector<double> movie_costs(const MovieObjective& objective) {
  std::vector<double> singleton(objective.n_movies());
  double min_positive = std::numeric_limits<double>::infinity();
  for (ElementId m = 0; m < objective.n_movies(); ++m) {
    const ElementId one[] = {m};
    singleton[m] = objective.value(one);
    if (singleton[m] > 0.0) min_positive = std::min(min_positive, singleton[m]);
  }
  std::vector<double> costs(singleton.size(), 1.0);
  if (!std::isfinite(min_positive)) return costs;
  for (std::size_t m = 0; m < costs.size(); ++m) {
    if (singleton[m] > 0.0) costs[m] = singleton[m] / min_positive;
  }
  return costs;
}

/// f(S) = Σ_{e∈S} value[e].
class ModularObjective {
 public:
  explicit ModularObjective(std::vector<double> values)
      : values_(std::move(values)) {
    for (double v : values_) {
      if (v < 0.0) throw InvalidArgument("modular values must be non-negative");
    }
  }

  const std::vector<double>& values() const { return values_; }

  double value(std::span<const ElementId> ids) const {
    double total = 0.0;
    for (ElementId id : ids) total += values_.at(id);
    return total;
  }

 private:
  std::vector<double> values_;
};

/// f(∅) = 0, f(S) = 1/2 for non-empty S, except f({i, j}) = 1 for a hidden
/// pair. The monotone variant also assigns 1 to every set larger than two.
class HiddenPairObjective {
 public:
  HiddenPairObjective(std::size_t n,
                      std::optional<std::pair<ElementId, ElementId>> pair,
                      bool monotone = false)
      : n_(n), pair_(pair), monotone_(monotone) {
    if (pair_) {
      auto [i, j] = *pair_;
      if (i == j || i >= n || j >= n) {
        throw InvalidArgument("hidden pair must be two distinct ids < n");
      }
      if (j < i) pair_ = std::make_pair(j, i);
    }
  }

  std::size_t size() const { return n_; }
  const std::optional<std::pair<ElementId, ElementId>>& pair() const {
    return pair_;
  }
  bool monotone() const { return monotone_; }

  double value(std::span<const ElementId> ids) const {
    if (ids.empty()) return 0.0;
    if (!pair_) return 0.5;
    if (ids.size() == 2) {
      auto lo = std::min(ids[0], ids[1]);
      auto hi = std::max(ids[0], ids[1]);
      if (lo == pair_->first && hi == pair_->second) return 1.0;
    }
    if (monotone_ && ids.size() > 2) return 1.0;
    return 0.5;
  }

  /// Every item costs half the capacity, so feasible sets hold at most two.
  static std::vector<Element> elements(std::size_t n, double capacity) {
    std::vector<Element> out(n);
    for (std::size_t i = 0; i < n; ++i) {
      out[i] = {static_cast<ElementId>(i), capacity / 2.0};
    }
    return out;
  }

 private:
  std::size_t n_;
  std::optional<std::pair<ElementId, ElementId>> pair_;
  bool monotone_;
};

/// Type-erased objective for code that picks the objective at runtime.
class AnyObjective {
 public:
  AnyObjective() = default;

  template <SetFunction F>
  explicit AnyObjective(std::shared_ptr<const F> f)
      : impl_(std::make_shared<Model<F>>(std::move(f))) {}

  double value(std::span<const ElementId> ids) const {
    return impl_->value(ids);
  }

  explicit operator bool() const { return impl_ != nullptr; }

 private:
  struct Concept {
    virtual ~Concept() = default;
    virtual double value(std::span<const ElementId> ids) const = 0;
  };
  template <class F>
  struct Model final : Concept {
    explicit Model(std::shared_ptr<const F> f) : f(std::move(f)) {}
    double value(std::span<const ElementId> ids) const override {
      return f->value(ids);
    }
    std::shared_ptr<const F> f;
  };
  std::shared_ptr<const Concept> impl_;
};

}  // namespace knapsub

#endif  // KNAPSUB_OBJECTIVES_HPP_
