#pragma once

/**
 * @file cover.hpp
 * @brief Closed forms: t-pebbling numbers of trees and the cover pebbling
 * number for nonnegative demands, plus the matching extremal distribution.
 *
 * For a root v, let T_w(v) be the smallest subtree spanning v and the support
 * W of the demand, and orient every other edge toward it. Then
 *
 *   s(v) = sum_{u in W} w(u) 2^{d(u,v)} + sum_i (2^{a_i} - 1)
 *
 * where (a_i) is the maximum path partition of the oriented remainder, and the
 * cover pebbling number is max_v s(v). With a single demand vertex this is the
 * t-pebbling number of that vertex.
 */

#include <cstdint>
#include <optional>
#include <vector>

#include "pebbling/error.hpp"
#include "pebbling/path_partition.hpp"
#include "pebbling/tree.hpp"

namespace pebbling {

struct TPebblingResult {
  std::int64_t value = 0;
  PathPartition partition;
};

struct CoverResult {
  std::int64_t gamma = 0;
  /// Absent for the zero demand, which every distribution covers.
  std::optional<Vertex> argmax_root;
  /// s(v) for every vertex; empty for the zero demand.
  std::vector<std::int64_t> per_vertex_s;

  bool degenerate() const { return !argmax_root.has_value(); }
};

/// The remainder forest outside T_w(v) together with its maximum partition.
struct RemainderPartition {
  Subtree core;
  DirectedForest forest;
  PathPartition partition;
};

inline RemainderPartition remainder_partition(const Tree& t, const WeightFunction& w, Vertex v) {
  const auto support = w.support();
  auto core = minimal_subtree(t, v, support);
  auto forest = orient_toward(t, core);
  auto partition = max_path_partition(forest);
  return {std::move(core), std::move(forest), std::move(partition)};
}

inline TPebblingResult t_pebbling_number(const Tree& t, Vertex v, std::int64_t k) {
  t.check_vertex(v);
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "t must be positive");
  Subtree sink{std::vector<bool>(t.size(), false), {}};
  sink.member[v] = true;
  TPebblingResult out;
  out.partition = max_path_partition(orient_toward(t, sink));
  out.value = out.partition.sizes.empty() ? k : partition_score(out.partition.sizes, k);
  return out;
}

struct TPebblingGlobal {
  std::int64_t value = 0;
  Vertex argmax = 0;
};

inline TPebblingGlobal t_pebbling_global(const Tree& t, std::int64_t k) {
  TPebblingGlobal best{-1, 0};
  for (Vertex v = 0; v < t.size(); ++v) {
    const auto value = t_pebbling_number(t, v, k).value;
    if (value > best.value) best = {value, v};
  }
  return best;
}

/// Demand term sum_{u in W} w(u) 2^{d(u,v)}.
inline std::int64_t demand_cost(const Tree& t, const WeightFunction& w, Vertex v) {
  const auto dist = t.distances_from(v);
  std::int64_t sum = 0;
  for (Vertex u : w.support()) {
    sum = checked::add(sum, checked::mul(w[u], checked::pow2(dist[u])));
  }
  return sum;
}

inline std::int64_t s_omega_at(const Tree& t, const WeightFunction& w, Vertex v) {
  t.check_vertex(v);
  if (w.size() != t.size()) throw Error(ErrorCode::kInvalidArgument, "weights do not match tree");
  if (w.is_zero()) throw Error(ErrorCode::kInvalidArgument, "demand has empty support");
  const auto rest = remainder_partition(t, w, v);
  return checked::add(demand_cost(t, w, v), forest_capacity(rest.partition.sizes));
}

inline CoverResult cover_pebbling_number(const Tree& t, const WeightFunction& w) {
  if (w.size() != t.size()) throw Error(ErrorCode::kInvalidArgument, "weights do not match tree");
  CoverResult out;
  if (w.is_zero()) return out;
  out.per_vertex_s.resize(t.size());
  for (Vertex v = 0; v < t.size(); ++v) {
    out.per_vertex_s[v] = s_omega_at(t, w, v);
    if (!out.argmax_root || out.per_vertex_s[v] > out.gamma) {
      out.gamma = out.per_vertex_s[v];
      out.argmax_root = v;
    }
  }
  return out;
}

/// An unsolvable distribution of size gamma - 1: 2^{a_i} - 1 pebbles on the
/// source of each remainder path and one pebble short of the demand cost on
/// the argmax root.
inline Distribution extremal_distribution(const Tree& t, const WeightFunction& w) {
  const auto cover = cover_pebbling_number(t, w);
  if (cover.degenerate()) {
    throw Error(ErrorCode::kInvalidArgument, "demand has empty support");
  }
  const Vertex root = *cover.argmax_root;
  const auto rest = remainder_partition(t, w, root);
  Distribution d(t.size());
  for (std::size_t i = 0; i < rest.partition.paths.size(); ++i) {
    d.add(rest.partition.paths[i].front(), checked::pow2(rest.partition.sizes[i]) - 1);
  }
  d.add(root, demand_cost(t, w, root) - 1);
  return d;
}

}  // namespace pebbling
