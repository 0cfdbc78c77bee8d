#pragma once

/**
 * @file path_partition.hpp
 * @brief Maximum path partitions of in-forests, the majorization order on
 * their size sequences, and the t-pebbling score of a partition.
 *
 * The maximum partition is defined greedily: take a longest directed path,
 * delete its arcs, repeat. Among equally long candidates the one whose vertex
 * sequence is lexicographically smallest (by name) wins.
 *
 * Because every vertex has at most one outgoing arc, that greedy process
 * coincides with a long-path decomposition: at each vertex the incoming arc
 * from the tallest subtree continues the path through it (ties go to the
 * subtree whose deepest source has the smallest name), and every other
 * incoming arc ends a path there. The decomposition is computed in one pass
 * and the paths are emitted in greedy extraction order.
 */

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "pebbling/error.hpp"
#include "pebbling/tree.hpp"

namespace pebbling {

struct PathPartition {
  /// Each path runs from its source (farthest from the sink) to its end.
  std::vector<std::vector<Vertex>> paths;
  /// Edge counts, nonincreasing; sizes[i] == paths[i].size() - 1.
  std::vector<std::int64_t> sizes;
};

inline PathPartition max_path_partition(const DirectedForest& f) {
  const std::size_t n = f.vertex_count();
  std::vector<std::vector<Vertex>> incoming(n);
  std::vector<Vertex> roots;
  for (Vertex v = 0; v < n; ++v) {
    if (auto h = f.head(v)) {
      incoming[*h].push_back(v);
    } else {
      roots.push_back(v);
    }
  }

  // Children are finished before parents in reversed BFS order from roots.
  std::vector<Vertex> order = roots;
  for (std::size_t i = 0; i < order.size(); ++i) {
    for (Vertex y : incoming[order[i]]) order.push_back(y);
  }

  std::vector<std::int64_t> height(n, 0);
  std::vector<Vertex> source(n);
  std::vector<std::optional<Vertex>> heavy(n);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Vertex x = *it;
    source[x] = x;
    for (Vertex y : incoming[x]) {
      if (!heavy[x] || height[y] > height[*heavy[x]] ||
          (height[y] == height[*heavy[x]] && source[y] < source[*heavy[x]])) {
        heavy[x] = y;
      }
    }
    if (heavy[x]) {
      height[x] = height[*heavy[x]] + 1;
      source[x] = source[*heavy[x]];
    }
  }

  // A path ends at every root with incoming arcs and at every vertex for each
  // of its non-heavy incoming arcs.
  auto climb = [&](Vertex bottom, Vertex first) {
    std::vector<Vertex> path{bottom};
    std::optional<Vertex> x = first;
    while (x) {
      path.push_back(*x);
      x = heavy[*x];
    }
    std::reverse(path.begin(), path.end());
    return path;
  };

  PathPartition out;
  for (Vertex x = 0; x < n; ++x) {
    for (Vertex y : incoming[x]) {
      const bool continues = heavy[x] == y && f.head(x).has_value();
      if (!continues) out.paths.push_back(climb(x, y));
    }
  }
  std::sort(out.paths.begin(), out.paths.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() > b.size();
    return a < b;
  });
  for (const auto& p : out.paths) out.sizes.push_back(static_cast<std::int64_t>(p.size()) - 1);
  return out;
}

namespace detail {
inline void require_nonincreasing(std::span<const std::int64_t> s) {
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i] > s[i - 1]) {
      throw Error(ErrorCode::kInvalidArgument, "size sequence is not nonincreasing");
    }
  }
}
}  // namespace detail

/// Lexicographic comparison with the shorter sequence padded by zeros;
/// `greater` means x majorizes y.
inline std::strong_ordering majorize_cmp(std::span<const std::int64_t> x,
                                         std::span<const std::int64_t> y) {
  detail::require_nonincreasing(x);
  detail::require_nonincreasing(y);
  const std::size_t n = std::max(x.size(), y.size());
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t a = i < x.size() ? x[i] : 0;
    const std::int64_t b = i < y.size() ? y[i] : 0;
    if (a != b) return a <=> b;
  }
  return std::strong_ordering::equal;
}

/// t * 2^{a_1} + sum_{i>=2} 2^{a_i} - n + 1.
inline std::int64_t partition_score(std::span<const std::int64_t> sizes, std::int64_t t) {
  if (sizes.empty()) throw Error(ErrorCode::kInvalidArgument, "empty size sequence");
  if (t < 1) throw Error(ErrorCode::kInvalidArgument, "t must be positive");
  detail::require_nonincreasing(sizes);
  std::int64_t score = checked::mul(t, checked::pow2(sizes[0]));
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    score = checked::add(score, checked::pow2(sizes[i]));
  }
  return checked::add(checked::sub(score, static_cast<std::int64_t>(sizes.size())), 1);
}

/// sum_i 2^{a_i} - n: the pebbles a forest can hold without pushing one
/// pebble into its sink.
inline std::int64_t forest_capacity(std::span<const std::int64_t> sizes) {
  std::int64_t sum = 0;
  for (auto a : sizes) sum = checked::add(sum, checked::pow2(a) - 1);
  return sum;
}

}  // namespace pebbling
