#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force ground truth for solvability and cover pebbling numbers.
 *
 * The engines never use the leaf-reduction calculus or path partitions. Two
 * independent engines are provided:
 *
 *  - Forward search: depth-first exploration of every distribution reachable
 *    by legal moves, plus enumeration of all distributions of a given size.
 *  - Backward coverability: the solvable distributions form an up-set. Its
 *    finite basis of minimal elements is saturated under reverse moves
 *    (X -> X - [X(v) >= 1] e_v + 2 e_u for every arc u->v), which are
 *    monotone, so dominated candidates can be dropped. The maximal
 *    unsolvable distributions are then the corners of the complement.
 *
 * The second engine reaches demands whose cover number is far beyond what
 * exhaustive enumeration of distributions can visit.
 *
 * verify_gamma borrows one thing from the closed form: the extremal
 * distribution, used as a pruning floor only after forward search confirms
 * it is unsolvable. A wrong formula cannot make the oracle agree with it.
 */

#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <queue>
#include <random>
#include <span>
#include <string>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "pebbling/cover.hpp"
#include "pebbling/error.hpp"
#include "pebbling/tree.hpp"

namespace pebbling::oracle {

struct Bounds {
  std::size_t max_vertices = 8;
  std::int64_t max_pebbles = 24;
  std::size_t max_states = 10'000'000;
  std::uint64_t max_distributions = 10'000'000;
};

// ---------------------------------------------------------------------------
// Forward search
// ---------------------------------------------------------------------------

/// True iff some sequence of legal moves from `d` reaches a distribution
/// that dominates `w` pointwise.
inline bool brute_solvable(const Tree& t, const Distribution& d, const WeightFunction& w,
                           const Bounds& bounds = {}) {
  const std::size_t n = t.size();
  if (d.size() != n || w.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "vertex map does not match the tree");
  }
  if (n > bounds.max_vertices) {
    throw Error(ErrorCode::kBoundsExceeded, "oracle limited to " +
                                                std::to_string(bounds.max_vertices) + " vertices");
  }
  const std::int64_t total = d.total();
  if (total > bounds.max_pebbles) {
    throw Error(ErrorCode::kBoundsExceeded,
                "oracle limited to " + std::to_string(bounds.max_pebbles) + " pebbles");
  }
  const std::int64_t demand = w.total();
  if (total < demand) return false;

  const int bits = std::max(1, static_cast<int>(std::bit_width(static_cast<std::uint64_t>(total))));
  if (static_cast<std::size_t>(bits) * n > 64) {
    throw Error(ErrorCode::kBoundsExceeded, "state does not pack into 64 bits");
  }
  const std::uint64_t mask = (std::uint64_t{1} << bits) - 1;
  auto pack = [&](std::span<const std::int64_t> s) {
    std::uint64_t key = 0;
    for (std::size_t i = 0; i < n; ++i) key |= static_cast<std::uint64_t>(s[i]) << (bits * i);
    return key;
  };
  auto unpack = [&](std::uint64_t key, std::vector<std::int64_t>& s) {
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<std::int64_t>((key >> (bits * i)) & mask);
  };

  std::vector<std::pair<Vertex, Vertex>> moves;  // sorted (from, to)
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : t.neighbors(u)) moves.emplace_back(u, v);
  }

  std::unordered_set<std::uint64_t> visited;
  std::vector<std::uint64_t> stack{pack(d.values())};
  visited.insert(stack.back());
  std::vector<std::int64_t> s(n);
  while (!stack.empty()) {
    const std::uint64_t key = stack.back();
    stack.pop_back();
    unpack(key, s);
    bool covers = true;
    std::int64_t size = 0;
    for (std::size_t i = 0; i < n; ++i) {
      covers = covers && s[i] >= w[i];
      size += s[i];
    }
    if (covers) return true;
    // Each move loses a pebble; a state already below the demand total is dead.
    if (size - 1 < demand) continue;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
      const auto [u, v] = *it;
      if (s[u] < 2) continue;
      s[u] -= 2;
      s[v] += 1;
      const std::uint64_t next = pack(s);
      s[u] += 2;
      s[v] -= 1;
      if (visited.insert(next).second) {
        if (visited.size() > bounds.max_states) {
          throw Error(ErrorCode::kBoundsExceeded,
                      "oracle state table exceeded " + std::to_string(bounds.max_states));
        }
        stack.push_back(next);
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// Distribution enumeration
// ---------------------------------------------------------------------------

/// C(n, k) with overflow detection.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) {
      throw Error(ErrorCode::kOverflow, "binomial coefficient overflow");
    }
  }
  return static_cast<std::uint64_t>(r);
}

/// Number of weak compositions of `size` into `parts` parts.
inline std::uint64_t composition_count(std::int64_t size, std::size_t parts) {
  if (parts == 0) return size == 0 ? 1 : 0;
  return binomial(static_cast<std::uint64_t>(size) + parts - 1, parts - 1);
}

/// Weak compositions of a total over k parts in decreasing lexicographic
/// order, starting from (total, 0, ..., 0).
class WeakCompositions {
 public:
  WeakCompositions(std::int64_t total, std::size_t parts) : parts_(parts, 0) {
    if (parts == 0) {
      done_ = total != 0;
    } else {
      parts_[0] = total;
    }
  }

  bool done() const { return done_; }
  const std::vector<std::int64_t>& current() const { return parts_; }

  void advance() {
    std::optional<std::size_t> pivot;
    for (std::size_t i = parts_.empty() ? 0 : parts_.size() - 1; i-- > 0;) {
      if (parts_[i] > 0) {
        pivot = i;
        break;
      }
    }
    if (!pivot) {
      done_ = true;
      return;
    }
    std::int64_t tail = 0;
    for (std::size_t i = *pivot + 1; i < parts_.size(); ++i) {
      tail += parts_[i];
      parts_[i] = 0;
    }
    --parts_[*pivot];
    parts_[*pivot + 1] = tail + 1;
  }

 private:
  std::vector<std::int64_t> parts_;
  bool done_ = false;
};

/// Calls `visit` with every distribution of `size` pebbles placed on
/// `support` (all vertices when absent), in decreasing lexicographic order.
/// `visit` returns false to stop early. Returns the number visited.
inline std::uint64_t enumerate_distributions(
    const Tree& t, std::int64_t size, std::optional<std::vector<Vertex>> support,
    const std::function<bool(const Distribution&)>& visit, std::uint64_t budget = 10'000'000) {
  if (size < 0) throw Error(ErrorCode::kInvalidArgument, "negative size");
  std::vector<Vertex> where;
  if (support) {
    where = *support;
    std::sort(where.begin(), where.end());
    where.erase(std::unique(where.begin(), where.end()), where.end());
    for (Vertex v : where) t.check_vertex(v);
  } else {
    where.resize(t.size());
    for (Vertex v = 0; v < t.size(); ++v) where[v] = v;
  }
  const auto count = composition_count(size, where.size());
  if (count > budget) {
    throw Error(ErrorCode::kBoundsExceeded, "enumeration of " + std::to_string(count) +
                                                " distributions exceeds budget " +
                                                std::to_string(budget));
  }
  std::uint64_t visited = 0;
  std::vector<std::int64_t> values(t.size(), 0);
  for (WeakCompositions it(size, where.size()); !it.done(); it.advance()) {
    for (std::size_t i = 0; i < where.size(); ++i) values[where[i]] = it.current()[i];
    ++visited;
    if (!visit(Distribution(values))) break;
  }
  return visited;
}

// ---------------------------------------------------------------------------
// Backward coverability
// ---------------------------------------------------------------------------

using State = std::vector<std::int64_t>;

inline bool dominates(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
  }
  return true;
}

inline std::int64_t state_size(std::span<const std::int64_t> s) {
  std::int64_t sum = 0;
  for (auto x : s) sum = checked::add(sum, x);
  return sum;
}

/// A trie over fixed-length integer vectors answering dominance queries:
/// is some stored vector <= y, is some stored vector >= y, and which stored
/// vectors are >= y. Each node keeps the count of live entries beneath it and
/// a bounding box of their remaining coordinates. Boxes only grow, so after
/// erasures they over-approximate, which keeps pruning sound.
class DominanceIndex {
 public:
  explicit DominanceIndex(std::size_t dims) : dims_(dims) { new_node(0); }

  std::size_t size() const { return nodes_[0].live; }

  void insert(std::span<const std::int64_t> y, std::uint32_t id) {
    std::uint32_t node = 0;
    for (std::size_t d = 0;; ++d) {
      auto& nd = nodes_[node];
      ++nd.live;
      for (std::size_t j = d; j < dims_; ++j) {
        auto& lo = bounds_[nd.box + 2 * (j - d)];
        auto& hi = bounds_[nd.box + 2 * (j - d) + 1];
        lo = std::min(lo, y[j]);
        hi = std::max(hi, y[j]);
      }
      if (d == dims_) {
        nd.id = id;
        return;
      }
      auto& kids = nd.children;
      auto it = std::lower_bound(kids.begin(), kids.end(), y[d],
                                 [](const auto& kid, std::int64_t key) { return kid.first < key; });
      if (it != kids.end() && it->first == y[d]) {
        node = it->second;
      } else {
        const auto child = static_cast<std::uint32_t>(nodes_.size());
        kids.insert(it, {y[d], child});
        new_node(d + 1);  // invalidates nd
        node = child;
      }
    }
  }

  /// Removes one stored copy of `y`, which must be present.
  void erase(std::span<const std::int64_t> y) {
    std::uint32_t node = 0;
    --nodes_[0].live;
    for (std::size_t d = 0; d < dims_; ++d) {
      const auto& kids = nodes_[node].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), y[d],
                                 [](const auto& kid, std::int64_t key) { return kid.first < key; });
      node = it->second;
      --nodes_[node].live;
    }
  }

  bool any_leq(std::span<const std::int64_t> y) const { return any_leq(0, 0, y); }
  bool any_geq(std::span<const std::int64_t> y) const { return any_geq(0, 0, y); }

  /// Ids of every stored vector >= y.
  std::vector<std::uint32_t> collect_geq(std::span<const std::int64_t> y) const {
    std::vector<std::uint32_t> out;
    collect_geq(0, 0, y, out);
    return out;
  }

 private:
  struct Node {
    std::vector<std::pair<std::int64_t, std::uint32_t>> children;  // sorted by key
    std::uint32_t live = 0;
    std::uint32_t id = 0;   // meaningful at depth dims
    std::size_t box = 0;    // offset of (lo, hi) pairs for coordinates d..dims-1
  };

  void new_node(std::size_t depth) {
    Node nd;
    nd.box = bounds_.size();
    for (std::size_t j = depth; j < dims_; ++j) {
      bounds_.push_back(std::numeric_limits<std::int64_t>::max());
      bounds_.push_back(std::numeric_limits<std::int64_t>::min());
    }
    nodes_.push_back(std::move(nd));
  }

  // The box test on a node only rules out the whole subtree when even its
  // extreme corner fails; the per-coordinate key test does the rest.
  bool possibly_leq(std::uint32_t node, std::size_t d, std::span<const std::int64_t> y) const {
    const std::size_t box = nodes_[node].box;
    for (std::size_t j = d; j < dims_; ++j) {
      if (bounds_[box + 2 * (j - d)] > y[j]) return false;
    }
    return true;
  }

  bool possibly_geq(std::uint32_t node, std::size_t d, std::span<const std::int64_t> y) const {
    const std::size_t box = nodes_[node].box;
    for (std::size_t j = d; j < dims_; ++j) {
      if (bounds_[box + 2 * (j - d) + 1] < y[j]) return false;
    }
    return true;
  }

  bool any_leq(std::uint32_t node, std::size_t d, std::span<const std::int64_t> y) const {
    if (nodes_[node].live == 0 || !possibly_leq(node, d, y)) return false;
    if (d == dims_) return true;
    for (const auto& [key, child] : nodes_[node].children) {
      if (key > y[d]) break;
      if (any_leq(child, d + 1, y)) return true;
    }
    return false;
  }

  bool any_geq(std::uint32_t node, std::size_t d, std::span<const std::int64_t> y) const {
    if (nodes_[node].live == 0 || !possibly_geq(node, d, y)) return false;
    if (d == dims_) return true;
    const auto& kids = nodes_[node].children;
    for (auto it = kids.rbegin(); it != kids.rend() && it->first >= y[d]; ++it) {
      if (any_geq(it->second, d + 1, y)) return true;
    }
    return false;
  }

  void collect_geq(std::uint32_t node, std::size_t d, std::span<const std::int64_t> y,
                   std::vector<std::uint32_t>& out) const {
    if (nodes_[node].live == 0 || !possibly_geq(node, d, y)) return;
    if (d == dims_) {
      out.push_back(nodes_[node].id);
      return;
    }
    const auto& kids = nodes_[node].children;
    for (auto it = kids.rbegin(); it != kids.rend() && it->first >= y[d]; ++it) {
      collect_geq(it->second, d + 1, y, out);
    }
  }

  std::size_t dims_;
  std::vector<Node> nodes_;
  std::vector<std::int64_t> bounds_;
};

namespace detail {

/// Coordinate order for the dominance tries: nearest the demand first. The
/// tries prune far better when the coordinates that vary least come first.
inline std::vector<Vertex> demand_order(const Tree& t, const WeightFunction& w) {
  std::vector<std::int64_t> near(t.size(), std::numeric_limits<std::int64_t>::max());
  for (Vertex u : w.support()) {
    const auto dist = t.distances_from(u);
    for (Vertex v = 0; v < t.size(); ++v) near[v] = std::min(near[v], dist[v]);
  }
  std::vector<Vertex> order(t.size());
  for (Vertex v = 0; v < t.size(); ++v) order[v] = v;
  std::stable_sort(order.begin(), order.end(),
                   [&](Vertex a, Vertex b) { return near[a] < near[b]; });
  return order;
}

inline State permute(const State& x, std::span<const Vertex> order) {
  State y(x.size());
  for (std::size_t i = 0; i < order.size(); ++i) y[i] = x[order[i]];
  return y;
}

inline State unpermute(const State& y, std::span<const Vertex> order) {
  State x(y.size());
  for (std::size_t i = 0; i < order.size(); ++i) x[order[i]] = y[i];
  return x;
}

inline void sort_by_size(std::vector<State>& v) {
  std::sort(v.begin(), v.end(), [](const State& a, const State& b) {
    const auto sa = state_size(a), sb = state_size(b);
    return sa != sb ? sa < sb : a < b;
  });
}

/// Minimal solvable basis in the coordinates given by `order`.
inline std::vector<State> ordered_basis(const Tree& t, const WeightFunction& w,
                                        std::span<const Vertex> order, const Bounds& bounds) {
  const std::size_t n = t.size();
  std::vector<std::size_t> pos(n);
  for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> arcs;  // (u, v): one pebble lands on v from u
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : t.neighbors(u)) arcs.emplace_back(pos[u], pos[v]);
  }
  DominanceIndex index(n);
  std::vector<State> found{permute(State(w.values().begin(), w.values().end()), order)};
  std::vector<bool> alive{true};
  index.insert(found.front(), 0);
  for (std::size_t next = 0; next < found.size(); ++next) {
    // A superseded entry's successors are dominated by its replacement's.
    if (!alive[next]) continue;
    for (auto [u, v] : arcs) {
      State y = found[next];
      if (y[v] >= 1) --y[v];
      y[u] = checked::add(y[u], 2);
      if (index.any_leq(y)) continue;
      for (auto id : index.collect_geq(y)) {
        index.erase(found[id]);
        alive[id] = false;
      }
      index.insert(y, static_cast<std::uint32_t>(found.size()));
      found.push_back(std::move(y));
      alive.push_back(true);
      if (found.size() > bounds.max_states) {
        throw Error(ErrorCode::kBoundsExceeded,
                    "coverability basis exceeded " + std::to_string(bounds.max_states));
      }
    }
  }
  std::vector<State> out;
  for (std::size_t i = 0; i < found.size(); ++i) {
    if (alive[i]) out.push_back(std::move(found[i]));
  }
  return out;
}

}  // namespace detail

/// The minimal solvable distributions: D covers `w` iff D dominates one of
/// them. Sorted by (size, values).
inline std::vector<State> minimal_solvable_basis(const Tree& t, const WeightFunction& w,
                                                 const Bounds& bounds = {}) {
  if (w.size() != t.size()) throw Error(ErrorCode::kInvalidArgument, "weights do not match tree");
  const auto order = detail::demand_order(t, w);
  auto out = detail::ordered_basis(t, w, order, bounds);
  for (auto& x : out) x = detail::unpermute(x, order);
  detail::sort_by_size(out);
  return out;
}

inline constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max() / 4;

/// Maximal elements of the complement of the up-set generated by `basis`,
/// i.e. the maximal distributions dominating no basis element. Only those of
/// size at least `min_size` are kept: every corner is carved out of a chain
/// of larger ones, so dropping small pieces early loses nothing above it.
inline std::vector<State> maximal_unsolvable(std::span<const State> basis, std::size_t n,
                                             const Bounds& bounds = {},
                                             std::int64_t min_size = 0) {
  DominanceIndex index(n);
  std::vector<State> corners{State(n, kUnbounded)};
  std::vector<bool> alive{true};
  index.insert(corners.front(), 0);
  for (const auto& b : basis) {
    std::vector<State> pieces;
    for (auto id : index.collect_geq(b)) {
      index.erase(corners[id]);
      alive[id] = false;
      for (std::size_t i = 0; i < n; ++i) {
        if (b[i] >= 1) {
          State piece = corners[id];
          piece[i] = b[i] - 1;
          pieces.push_back(std::move(piece));
        }
      }
    }
    // Untouched corners stay maximal; only the new pieces can be dominated,
    // and only by something at least as large, so admit the largest first.
    // Size counts unbounded coordinates first, then the finite sum.
    std::vector<std::tuple<std::int64_t, std::int64_t, std::size_t>> by_size;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      std::int64_t unbounded = 0, finite = 0;
      for (auto x : pieces[i]) (x >= kUnbounded ? unbounded : finite) += x >= kUnbounded ? 1 : x;
      by_size.emplace_back(-unbounded, -finite, i);
    }
    std::sort(by_size.begin(), by_size.end());
    for (auto [neg_unbounded, neg_finite, i] : by_size) {
      if (neg_unbounded == 0 && -neg_finite < min_size) break;
      if (index.any_geq(pieces[i])) continue;
      index.insert(pieces[i], static_cast<std::uint32_t>(corners.size()));
      corners.push_back(std::move(pieces[i]));
      alive.push_back(true);
    }
    if (index.size() > bounds.max_states || corners.size() > 8 * bounds.max_states) {
      throw Error(ErrorCode::kBoundsExceeded, "unsolvable corner set exceeded " +
                                                  std::to_string(bounds.max_states));
    }
  }
  std::vector<State> out;
  for (std::size_t i = 0; i < corners.size(); ++i) {
    if (alive[i]) out.push_back(std::move(corners[i]));
  }
  for (const auto& c : out) {
    for (auto x : c) {
      if (x >= kUnbounded) {
        throw Error(ErrorCode::kPrecondition, "unsolvable distributions are unbounded");
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct CoverabilityResult {
  std::int64_t gamma = 0;
  std::int64_t max_unsolvable = -1;       // -1: every distribution is solvable
  std::int64_t max_leaf_unsolvable = -1;  // same, restricted to leaf supports
  std::optional<Distribution> witness;    // unsolvable of size gamma - 1
  std::size_t basis_size = 0;
  std::size_t corner_count = 0;
};

/// Exact cover pebbling number from the coverability basis. The witness is
/// leaf-supported whenever some maximum-size unsolvable distribution is.
///
/// `floor` is the size of some distribution already known to be unsolvable;
/// corners below it are never built. The overall maximum is unaffected, and
/// max_leaf_unsolvable is exact whenever it reaches the floor.
inline CoverabilityResult coverability_gamma(const Tree& t, const WeightFunction& w,
                                             const Bounds& bounds = {}, std::int64_t floor = 0) {
  if (w.size() != t.size()) throw Error(ErrorCode::kInvalidArgument, "weights do not match tree");
  const auto order = detail::demand_order(t, w);
  auto basis = detail::ordered_basis(t, w, order, bounds);
  detail::sort_by_size(basis);
  auto corners = maximal_unsolvable(basis, t.size(), bounds, floor);
  for (auto& c : corners) c = detail::unpermute(c, order);
  std::sort(corners.begin(), corners.end());
  std::vector<bool> is_leaf(t.size(), false);
  for (Vertex v : leaves(t)) is_leaf[v] = true;

  CoverabilityResult out;
  out.basis_size = basis.size();
  out.corner_count = corners.size();
  std::optional<State> best, best_leaf;
  for (const auto& c : corners) {
    const auto size = state_size(c);
    std::int64_t leaf_size = 0;
    State restricted(c.size(), 0);
    for (Vertex v = 0; v < c.size(); ++v) {
      if (is_leaf[v]) {
        restricted[v] = c[v];
        leaf_size += c[v];
      }
    }
    if (size > out.max_unsolvable) {
      out.max_unsolvable = size;
      best = c;
    }
    if (leaf_size > out.max_leaf_unsolvable) {
      out.max_leaf_unsolvable = leaf_size;
      best_leaf = restricted;
    }
  }
  out.gamma = out.max_unsolvable + 1;
  if (best_leaf && out.max_leaf_unsolvable == out.max_unsolvable) {
    out.witness = Distribution(*best_leaf);
  } else if (best) {
    out.witness = Distribution(*best);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Enumerative cover number
// ---------------------------------------------------------------------------

struct EnumerationResult {
  std::int64_t gamma = 0;
  std::int64_t max_leaf_unsolvable = -1;
  std::optional<Distribution> witness;
  std::uint64_t distributions_checked = 0;
};

/// Smallest k such that every distribution of size k is solvable, by
/// forward search on every candidate. Unsolvable witnesses are first sought
/// among leaf-supported distributions, then universality is confirmed over
/// all vertices, moving upward while it fails.
inline EnumerationResult enumerative_gamma(const Tree& t, const WeightFunction& w,
                                           const Bounds& bounds = {}) {
  EnumerationResult out;
  const auto leaf_set = leaves(t);
  auto charge = [&](std::int64_t size, std::size_t parts) {
    out.distributions_checked += composition_count(size, parts);
    if (out.distributions_checked > bounds.max_distributions) {
      throw Error(ErrorCode::kBoundsExceeded,
                  "enumeration exceeded " + std::to_string(bounds.max_distributions) +
                      " distributions");
    }
  };
  auto find_unsolvable = [&](std::int64_t size,
                             std::optional<std::vector<Vertex>> support) -> std::optional<Distribution> {
    const std::size_t parts = support ? support->size() : t.size();
    charge(size, parts);
    std::optional<Distribution> found;
    enumerate_distributions(
        t, size, support,
        [&](const Distribution& d) {
          if (!brute_solvable(t, d, w, bounds)) found = d;
          return !found;
        },
        bounds.max_distributions);
    return found;
  };

  std::int64_t size = 0;
  while (auto d = find_unsolvable(size, leaf_set)) {
    out.max_leaf_unsolvable = size;
    out.witness = std::move(d);
    ++size;
  }
  while (auto d = find_unsolvable(size, std::nullopt)) {
    out.witness = std::move(d);
    ++size;
  }
  out.gamma = size;
  return out;
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

struct VerifyOptions {
  Bounds bounds{};
  /// Exhaustive enumeration also runs when the cover number is at most this.
  std::int64_t enumeration_max_pebbles = 16;
  /// Witnesses up to this size are confirmed unsolvable by forward search.
  std::int64_t witness_max_pebbles = 256;
};

enum class VerifyStatus { kPass, kMismatch };

struct VerificationReport {
  std::string tree_id;
  WeightFunction omega;
  std::int64_t formula_gamma = 0;
  std::int64_t oracle_gamma = 0;
  std::optional<Distribution> unsolvable_witness;
  bool witness_confirmed = false;
  std::int64_t max_unsolvable = -1;
  std::int64_t max_leaf_unsolvable = -1;
  std::size_t basis_size = 0;
  std::int64_t pruning_floor = 0;
  bool enumerated = false;
  std::int64_t enumerated_gamma = 0;
  std::uint64_t distributions_checked = 0;
  std::chrono::nanoseconds elapsed{0};
  VerifyStatus status = VerifyStatus::kMismatch;
  std::vector<std::string> failures;

  bool pass() const { return status == VerifyStatus::kPass; }
};

/// Comma-separated sorted edge list; stable across renaming-free runs.
inline std::string tree_id(const Tree& t) {
  if (t.size() == 1) return t.name(0);
  std::string out;
  for (const auto& e : t.edges()) {
    if (!out.empty()) out += ",";
    out += t.name(e.u) + "-" + t.name(e.v);
  }
  return out;
}

inline VerificationReport verify_gamma(const Tree& t, const WeightFunction& w,
                                       const VerifyOptions& options = {}) {
  const auto start = std::chrono::steady_clock::now();
  if (t.size() > options.bounds.max_vertices) {
    throw Error(ErrorCode::kBoundsExceeded, "oracle limited to " +
                                                std::to_string(options.bounds.max_vertices) +
                                                " vertices");
  }
  VerificationReport r;
  r.tree_id = tree_id(t);
  r.omega = w;
  r.formula_gamma = cover_pebbling_number(t, w).gamma;

  // The closed-form extremal distribution, once forward search confirms it
  // is unsolvable, bounds the corner search from below. Without that
  // confirmation the search runs unpruned.
  if (!w.is_zero()) {
    const auto hint = extremal_distribution(t, w);
    if (hint.total() <= options.witness_max_pebbles) {
      Bounds b = options.bounds;
      b.max_pebbles = options.witness_max_pebbles;
      if (!brute_solvable(t, hint, w, b)) r.pruning_floor = hint.total();
    }
  }
  const auto cov = coverability_gamma(t, w, options.bounds, r.pruning_floor);
  r.oracle_gamma = cov.gamma;
  r.max_unsolvable = cov.max_unsolvable;
  r.max_leaf_unsolvable = cov.max_leaf_unsolvable;
  r.basis_size = cov.basis_size;
  r.unsolvable_witness = cov.witness;

  if (r.unsolvable_witness) {
    if (r.unsolvable_witness->total() != r.oracle_gamma - 1) {
      r.failures.push_back("witness size differs from oracle gamma - 1");
    }
    if (r.unsolvable_witness->total() <= options.witness_max_pebbles) {
      Bounds b = options.bounds;
      b.max_pebbles = options.witness_max_pebbles;
      r.witness_confirmed = !brute_solvable(t, *r.unsolvable_witness, w, b);
      if (!r.witness_confirmed) r.failures.push_back("witness is solvable by forward search");
    }
  } else {
    // Zero demand: the empty distribution must already cover it.
    r.witness_confirmed = brute_solvable(t, Distribution(t.size()), w, options.bounds);
    if (!r.witness_confirmed) r.failures.push_back("empty distribution does not cover demand");
  }

  if (std::max(r.oracle_gamma, r.formula_gamma) <= options.enumeration_max_pebbles) {
    Bounds b = options.bounds;
    b.max_pebbles = std::max(b.max_pebbles, options.enumeration_max_pebbles);
    const auto en = enumerative_gamma(t, w, b);
    r.enumerated = true;
    r.enumerated_gamma = en.gamma;
    r.distributions_checked = en.distributions_checked;
    if (en.gamma != r.oracle_gamma) r.failures.push_back("enumeration disagrees with coverability");
  }

  if (r.formula_gamma != r.oracle_gamma) r.failures.push_back("formula disagrees with oracle");
  if (r.max_leaf_unsolvable != r.max_unsolvable) {
    r.failures.push_back("no maximum unsolvable distribution is leaf-supported");
  }
  r.status = r.failures.empty() ? VerifyStatus::kPass : VerifyStatus::kMismatch;
  r.elapsed = std::chrono::steady_clock::now() - start;
  return r;
}

/// Line-oriented record. Timing is omitted so repeated runs are byte-identical.
inline std::string format_report(const Tree& t, const VerificationReport& r) {
  std::string out = "# verification report\n";
  out += "tree " + r.tree_id + "\n";
  out += "omega";
  for (Vertex v = 0; v < t.size(); ++v) {
    if (r.omega[v] > 0) out += " " + t.name(v) + ":" + std::to_string(r.omega[v]);
  }
  out += "\n";
  out += std::string("status ") + (r.pass() ? "PASS" : "MISMATCH") + "\n";
  out += "formula_gamma " + std::to_string(r.formula_gamma) + "\n";
  out += "oracle_gamma " + std::to_string(r.oracle_gamma) + "\n";
  out += "max_unsolvable " + std::to_string(r.max_unsolvable) + "\n";
  out += "max_leaf_unsolvable " + std::to_string(r.max_leaf_unsolvable) + "\n";
  out += "basis_size " + std::to_string(r.basis_size) + "\n";
  if (r.enumerated) {
    out += "enumerated_gamma " + std::to_string(r.enumerated_gamma) + "\n";
  } else {
    out += "enumerated_gamma skipped\n";
  }
  out += "distributions_checked " + std::to_string(r.distributions_checked) + "\n";
  out += std::string("witness_confirmed ") + (r.witness_confirmed ? "yes" : "no") + "\n";
  if (r.unsolvable_witness) {
    out += "witness";
    for (Vertex v = 0; v < t.size(); ++v) {
      if ((*r.unsolvable_witness)[v] > 0) {
        out += " " + t.name(v) + ":" + std::to_string((*r.unsolvable_witness)[v]);
      }
    }
    out += "\n";
  }
  for (const auto& f : r.failures) out += "failure " + f + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Tree generation
// ---------------------------------------------------------------------------

namespace detail {

/// Uniform integer in [0, bound) by rejection; portable across standard
/// libraries because mt19937_64 output is fully specified.
inline std::uint64_t uniform_below(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = gen();
    if (x >= threshold) return x % bound;
  }
}

inline std::vector<std::string> numbered_names(std::size_t n) {
  const std::size_t width = std::to_string(n > 1 ? n - 1 : 0).size();
  std::vector<std::string> names(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto digits = std::to_string(i);
    names[i] = "v" + std::string(width - digits.size(), '0') + digits;
  }
  return names;
}

/// Decodes a Pruefer sequence over [0, n) into the edges of a labeled tree.
inline std::vector<std::pair<std::size_t, std::size_t>> pruefer_edges(
    std::span<const std::size_t> code, std::size_t n) {
  std::vector<std::size_t> degree(n, 1);
  for (auto x : code) ++degree[x];
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> leaves;
  for (std::size_t v = 0; v < n; ++v) {
    if (degree[v] == 1) leaves.push(v);
  }
  for (auto x : code) {
    const auto leaf = leaves.top();
    leaves.pop();
    edges.emplace_back(leaf, x);
    if (--degree[x] == 1) leaves.push(x);
  }
  const auto a = leaves.top();
  leaves.pop();
  const auto b = leaves.top();
  edges.emplace_back(a, b);
  return edges;
}

inline std::string rooted_code(const Tree& t, Vertex v, std::optional<Vertex> parent) {
  std::vector<std::string> parts;
  for (Vertex c : t.neighbors(v)) {
    if (c != parent) parts.push_back(rooted_code(t, c, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

}  // namespace detail

/// Uniform random labeled tree on vertices v0..v{n-1} from a seeded Pruefer
/// sequence.
inline Tree random_tree(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidArgument, "tree needs at least one vertex");
  auto names = detail::numbered_names(n);
  if (n == 1) return Tree::build(std::move(names), {});
  if (n == 2) return Tree::build(std::move(names), {{0, 1}});
  std::mt19937_64 gen(seed);
  std::vector<std::size_t> code(n - 2);
  for (auto& x : code) x = detail::uniform_below(gen, n);
  return Tree::build(std::move(names), detail::pruefer_edges(code, n));
}

/// Isomorphism-invariant encoding (AHU code rooted at the center).
inline std::string canonical_form(const Tree& t) {
  std::vector<std::size_t> degree(t.size());
  std::vector<Vertex> layer;
  for (Vertex v = 0; v < t.size(); ++v) {
    degree[v] = t.degree(v);
    if (degree[v] <= 1) layer.push_back(v);
  }
  std::size_t remaining = t.size();
  while (remaining > 2) {
    remaining -= layer.size();
    std::vector<Vertex> next;
    for (Vertex v : layer) {
      for (Vertex u : t.neighbors(v)) {
        if (--degree[u] == 1) next.push_back(u);
      }
    }
    layer = std::move(next);
  }
  std::string best;
  for (Vertex c : layer) {
    auto code = detail::rooted_code(t, c, std::nullopt);
    if (best.empty() || code < best) best = code;
  }
  return best;
}

/// One representative of every isomorphism class of trees on n vertices,
/// ordered by canonical form. Exhausts all Pruefer sequences, so n <= 9.
inline std::vector<Tree> nonisomorphic_trees(std::size_t n) {
  if (n == 0 || n > 9) throw Error(ErrorCode::kBoundsExceeded, "supported for 1 <= n <= 9");
  auto names = detail::numbered_names(n);
  if (n <= 2) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    if (n == 2) edges.emplace_back(0, 1);
    return {Tree::build(names, edges)};
  }
  std::map<std::string, Tree> classes;
  std::vector<std::size_t> code(n - 2, 0);
  for (;;) {
    auto t = Tree::build(names, detail::pruefer_edges(code, n));
    auto key = canonical_form(t);
    classes.try_emplace(std::move(key), std::move(t));
    std::size_t i = 0;
    while (i < code.size() && ++code[i] == n) code[i++] = 0;
    if (i == code.size()) break;
  }
  std::vector<Tree> out;
  for (auto& [key, t] : classes) out.push_back(std::move(t));
  return out;
}

}  // namespace pebbling::oracle
