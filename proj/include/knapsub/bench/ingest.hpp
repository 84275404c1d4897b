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

// Dataset ingestion: SNAP-style edge lists and MovieLens rating CSVs.

#ifndef KNAPSUB_BENCH_INGEST_HPP_
#define KNAPSUB_BENCH_INGEST_HPP_

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <memory>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "knapsub/core.hpp"
#include "knapsub/objectives.hpp"

namespace knapsub::bench {

class EmptyData : public Error {
 public:
  explicit EmptyData(const std::string& what) : Error(what) {}
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

template <class T>
bool parse_number(std::string_view text, T& out) {
  text = trim(text);
  if (text.empty()) return false;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

inline std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  return in;
}

}  // namespace detail

/// Undirected simple graph with compact vertex ids. `original_ids[v]` is the
/// id vertex v carried in the input file.
struct SnapGraph {
  Adjacency adjacency;
  std::vector<std::uint64_t> original_ids;
  std::size_t edge_count = 0;

  std::size_t vertex_count() const { return adjacency.size(); }

  /// Writes the compact-to-original id map, one `compact<TAB>original` line
  /// per vertex.
  void write_id_map(const std::filesystem::path& path) const {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    for (std::size_t v = 0; v < original_ids.size(); ++v) {
      out << v << '\t' << original_ids[v] << '\n';
    }
  }
};

/// Parses `u<whitespace>v` lines; '#' lines and blank lines are skipped.
/// Self-loops are dropped, duplicate and reversed edges merged, and vertex
/// ids compacted to 0..|V|-1 in increasing order of their original id.
inline SnapGraph ingest_snap(std::istream& in) {
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
  std::vector<std::uint64_t> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = detail::trim(line);
    if (text.empty() || text.front() == '#') continue;
    const auto split = text.find_first_of(" \t");
    if (split == std::string_view::npos) {
      throw ParseError("expected two vertex ids", line_no);
    }
    std::uint64_t u = 0;
    std::uint64_t v = 0;
    if (!detail::parse_number(text.substr(0, split), u) ||
        !detail::parse_number(text.substr(split + 1), v)) {
      throw ParseError("malformed vertex id", line_no);
    }
    ids.push_back(u);
    ids.push_back(v);
    if (u == v) continue;
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

  std::unordered_map<std::uint64_t, ElementId> compact;
  compact.reserve(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    compact.emplace(ids[i], static_cast<ElementId>(i));
  }
  SnapGraph graph;
  graph.adjacency.resize(ids.size());
  for (auto [u, v] : edges) {
    const ElementId a = compact.at(u);
    const ElementId b = compact.at(v);
    graph.adjacency[a].push_back(b);
    graph.adjacency[b].push_back(a);
  }
  for (auto& neighbours : graph.adjacency) {
    std::sort(neighbours.begin(), neighbours.end());
  }
  graph.original_ids = std::move(ids);
  graph.edge_count = edges.size();
  return graph;
}

inline SnapGraph ingest_snap(const std::filesystem::path& path) {
  std::ifstream in = detail::open_or_throw(path);
  return ingest_snap(in);
}

/// Centered rating vectors plus the original ids behind the compact movie
/// and user indices.
struct MovieData {
  RatingVectors vectors;
  std::vector<std::uint64_t> movie_ids;
  std::vector<std::uint64_t> user_ids;
  double global_mean = 0.0;
  std::size_t ratings_parsed = 0;
  std::size_t ratings_kept = 0;
};

namespace detail {

inline constexpr std::string_view kMovieLensHeader = "userId,movieId,rating,timestamp";

struct Rating {
  std::uint64_t user = 0;
  std::uint64_t movie = 0;
  double rating = 0.0;
};

inline Rating parse_rating(std::string_view text, std::size_t line_no) {
  std::string_view fields[4];
  std::size_t start = 0;
  for (int f = 0; f < 4; ++f) {
    const auto comma = text.find(',', start);
    if (f < 3 && comma == std::string_view::npos) {
      throw ParseError("expected 4 comma-separated fields", line_no);
    }
    fields[f] = text.substr(start, f < 3 ? comma - start : std::string_view::npos);
    start = comma + 1;
  }
  Rating r;
  if (!parse_number(fields[0], r.user)) throw ParseError("malformed userId", line_no);
  if (!parse_number(fields[1], r.movie)) throw ParseError("malformed movieId", line_no);
  if (!parse_number(fields[2], r.rating)) throw ParseError("malformed rating", line_no);
  return r;
}

// Calls fn(rating) for every data line after validating the header.
template <class Fn>
void scan_ratings(std::istream& in, Fn&& fn) {
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (!header_seen) {
      if (text != kMovieLensHeader) {
        throw ParseError("expected header " + std::string(kMovieLensHeader), line_no);
      }
      header_seen = true;
      continue;
    }
    if (text.empty()) continue;
    fn(parse_rating(text, line_no));
  }
  if (!header_seen) throw EmptyData("ratings file is empty");
}

// The `limit` keys with the largest counts (ties toward the smaller key),
// returned in increasing key order; limit 0 keeps everything.
inline std::vector<std::uint64_t> top_keys(
    const std::unordered_map<std::uint64_t, std::size_t>& counts,
    std::size_t limit) {
  std::vector<std::pair<std::uint64_t, std::size_t>> ranked(counts.begin(), counts.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (limit != 0 && ranked.size() > limit) ranked.resize(limit);
  std::vector<std::uint64_t> keys;
  keys.reserve(ranked.size());
  for (const auto& [key, count] : ranked) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace detail

/// Two passes over `userId,movieId,rating,timestamp` data. The first pass
/// gathers the global mean rating and the per-movie and per-user counts; the
/// second keeps ratings of the `max_movies` most-rated movies by the
/// `max_users` most active users (0 = no limit) as deviations from the
/// global mean. `reopen()` must return a fresh stream each call.
template <class Reopen>
MovieData ingest_movielens_from(Reopen&& reopen, std::size_t max_movies,
                                std::size_t max_users) {
  std::unordered_map<std::uint64_t, std::size_t> movie_counts;
  std::unordered_map<std::uint64_t, std::size_t> user_counts;
  double sum = 0.0;
  std::size_t parsed = 0;
  {
    auto in = reopen();
    detail::scan_ratings(*in, [&](const detail::Rating& r) {
      sum += r.rating;
      ++parsed;
      ++movie_counts[r.movie];
      ++user_counts[r.user];
    });
  }
  if (parsed == 0) throw EmptyData("ratings file has no data rows");

  MovieData data;
  data.global_mean = sum / static_cast<double>(parsed);
  data.ratings_parsed = parsed;
  data.movie_ids = detail::top_keys(movie_counts, max_movies);
  data.user_ids = detail::top_keys(user_counts, max_users);
  std::unordered_map<std::uint64_t, std::uint32_t> movie_index;
  std::unordered_map<std::uint64_t, std::uint32_t> user_index;
  for (std::size_t i = 0; i < data.movie_ids.size(); ++i) {
    movie_index.emplace(data.movie_ids[i], static_cast<std::uint32_t>(i));
  }
  for (std::size_t i = 0; i < data.user_ids.size(); ++i) {
    user_index.emplace(data.user_ids[i], static_cast<std::uint32_t>(i));
  }
  data.vectors.n_users = data.user_ids.size();
  data.vectors.movies.resize(data.movie_ids.size());
  {
    auto in = reopen();
    detail::scan_ratings(*in, [&](const detail::Rating& r) {
      const auto m = movie_index.find(r.movie);
      const auto u = user_index.find(r.user);
      if (m == movie_index.end() || u == user_index.end()) return;
      data.vectors.movies[m->second].emplace_back(u->second, r.rating - data.global_mean);
      ++data.ratings_kept;
    });
  }
  for (auto& movie : data.vectors.movies) {
    std::stable_sort(movie.begin(), movie.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    // A repeated (user, movie) rating keeps the last one read.
    auto last = std::unique(movie.rbegin(), movie.rend(), [](const auto& a, const auto& b) {
      return a.first == b.first;
    });
    movie.erase(movie.begin(), last.base());
  }
  return data;
}

inline MovieData ingest_movielens(const std::filesystem::path& path,
                                  std::size_t max_movies = 0,
                                  std::size_t max_users = 0) {
  return ingest_movielens_from(
      [&] { return std::make_unique<std::ifstream>(detail::open_or_throw(path)); },
      max_movies, max_users);
}

inline MovieData ingest_movielens_text(const std::string& text,
                                       std::size_t max_movies = 0,
                                       std::size_t max_users = 0) {
  return ingest_movielens_from(
      [&] { return std::make_unique<std::istringstream>(text); }, max_movies, max_users);
}

}  // namespace knapsub::bench

#endif  // KNAPSUB_BENCH_INGEST_HPP_
