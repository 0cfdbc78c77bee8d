#pragma once

// Shared fixtures: terse constructors, random instances, and a literal
// greedy path partition used as an independent reference.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "pebbling/pebbling.hpp"

namespace testing_support {

using namespace pebbling;

inline Tree tree(const std::string& text) { return parse_tree(text); }

template <typename Values>
Values values(const Tree& t, const std::vector<std::pair<std::string, std::int64_t>>& entries) {
  Values out(t.size());
  for (const auto& [name, k] : entries) out.set(t.at(name), k);
  return out;
}

inline WeightFunction weights(const Tree& t,
                              const std::vector<std::pair<std::string, std::int64_t>>& e) {
  return values<WeightFunction>(t, e);
}

inline Distribution dist(const Tree& t, const std::vector<std::pair<std::string, std::int64_t>>& e) {
  return values<Distribution>(t, e);
}

/// Star with center `c` and the given leaves.
inline Tree star(const std::string& c, const std::vector<std::string>& leaves) {
  std::string text;
  for (const auto& l : leaves) text += c + " " + l + "\n";
  return tree(text);
}

/// Spreads `total` pebbles uniformly at random over the vertices.
inline std::vector<std::int64_t> random_counts(std::mt19937_64& gen, std::size_t n,
                                               std::int64_t total) {
  std::vector<std::int64_t> out(n, 0);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  for (std::int64_t i = 0; i < total; ++i) ++out[pick(gen)];
  return out;
}

/// Random connected sink: grow from a random vertex by random neighbors.
inline Subtree random_subtree(std::mt19937_64& gen, const Tree& t) {
  std::uniform_int_distribution<std::size_t> pick(0, t.size() - 1);
  const Vertex start = pick(gen);
  const std::size_t target = std::uniform_int_distribution<std::size_t>(1, t.size())(gen);
  Subtree s{std::vector<bool>(t.size(), false), {}};
  s.member[start] = true;
  std::size_t count = 1;
  while (count < target) {
    std::vector<Edge> frontier;
    for (auto e : t.edges()) {
      if (s.member[e.u] != s.member[e.v]) frontier.push_back(e);
    }
    const auto e = frontier[std::uniform_int_distribution<std::size_t>(0, frontier.size() - 1)(gen)];
    s.member[e.u] = s.member[e.v] = true;
    s.edges.push_back(e);
    ++count;
  }
  std::sort(s.edges.begin(), s.edges.end());
  return s;
}

/// Repeatedly removes a longest remaining directed path. With `gen`, ties
/// are broken at random; without it, by smallest vertex sequence.
inline std::vector<std::vector<Vertex>> literal_greedy(const DirectedForest& f,
                                                       std::mt19937_64* gen = nullptr) {
  const std::size_t n = f.vertex_count();
  std::vector<bool> used(n, false);  // arc out of v removed
  std::vector<std::vector<Vertex>> out;
  for (;;) {
    std::vector<std::vector<Vertex>> best;
    for (Vertex x = 0; x < n; ++x) {
      std::vector<Vertex> walk{x};
      Vertex y = x;
      while (f.head(y) && !used[y]) {
        y = *f.head(y);
        walk.push_back(y);
      }
      if (walk.size() < 2) continue;
      if (best.empty() || walk.size() > best.front().size()) {
        best = {walk};
      } else if (walk.size() == best.front().size()) {
        best.push_back(walk);
      }
    }
    if (best.empty()) break;
    std::sort(best.begin(), best.end());
    const auto& chosen =
        gen ? best[std::uniform_int_distribution<std::size_t>(0, best.size() - 1)(*gen)] : best[0];
    for (std::size_t i = 0; i + 1 < chosen.size(); ++i) used[chosen[i]] = true;
    out.push_back(chosen);
  }
  return out;
}

/// A uniformly chosen way of threading paths: at each vertex with an
/// outgoing arc, at most one incoming arc continues through it.
inline std::vector<std::int64_t> random_partition_sizes(std::mt19937_64& gen,
                                                        const DirectedForest& f) {
  const std::size_t n = f.vertex_count();
  std::vector<std::vector<Vertex>> incoming(n);
  for (auto a : f.arcs()) incoming[a.to].push_back(a.from);
  std::vector<std::optional<Vertex>> through(n);
  for (Vertex x = 0; x < n; ++x) {
    if (!f.head(x) || incoming[x].empty()) continue;
    const auto k = std::uniform_int_distribution<std::size_t>(0, incoming[x].size())(gen);
    if (k < incoming[x].size()) through[x] = incoming[x][k];
  }
  // A path ends at x for each incoming arc not continued through x.
  std::vector<std::int64_t> sizes;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y : incoming[x]) {
      if (f.head(x) && through[x] == y) continue;
      std::int64_t len = 1;
      for (auto z = through[y]; z; z = through[*z]) ++len;
      sizes.push_back(len);
    }
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

}  // namespace testing_support
