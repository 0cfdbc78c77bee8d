#pragma once

/**
 * @file solvability.hpp
 * @brief Deciding whether a distribution can cover a demand on a tree.
 *
 * Work with C = D - omega. Deleting a leaf v with neighbor u folds v into u:
 * a surplus C(v) >= 0 sends floor(C(v)/2) pebbles to u, a deficit C(v) < 0
 * costs u 2*|C(v)| pebbles. Collapsing the whole tree onto a root leaves one
 * number, hat C(root); D covers omega iff that number is nonnegative for
 * some root. Folding a vertex only ever happens after all of its children
 * (relative to the root) are folded, so the value does not depend on which
 * leaf is deleted first.
 */

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pebbling/error.hpp"
#include "pebbling/tree.hpp"

namespace pebbling {

struct PebblingMove {
  Vertex from;
  Vertex to;
  friend auto operator<=>(const PebblingMove&, const PebblingMove&) = default;
};

struct SolvabilityCertificate {
  bool solvable = false;
  std::optional<Vertex> witness_root;
  std::vector<std::int64_t> hat_values;  // indexed by vertex
};

namespace detail {

/// Contribution of a folded vertex with value c to its neighbor.
inline std::int64_t fold_contribution(std::int64_t c) {
  return c >= 0 ? c / 2 : checked::mul(2, c);
}

inline void check_sizes(const Tree& t, std::size_t a, std::size_t b) {
  if (a != t.size() || b != t.size()) {
    throw Error(ErrorCode::kInvalidArgument, "vertex map does not match the tree");
  }
}

/// Post-order fold toward `root`; returns the folded value of every vertex.
inline std::vector<std::int64_t> fold_values(const GeneralizedDistribution& c,
                                             const RootedTree& rooted) {
  std::vector<std::int64_t> value(c.values().begin(), c.values().end());
  for (Vertex x : rooted.postorder()) {
    if (auto p = rooted.parent[x]) {
      value[*p] = checked::add(value[*p], fold_contribution(value[x]));
    }
  }
  return value;
}

}  // namespace detail

/// Deletes leaf `v` and folds its value into its neighbor. The returned
/// generalized distribution is indexed by the returned tree.
inline std::pair<Tree, GeneralizedDistribution> reduce_leaf(const GeneralizedDistribution& c,
                                                            const Tree& t, Vertex v) {
  detail::check_sizes(t, c.size(), c.size());
  t.check_vertex(v);
  if (t.size() < 2) throw Error(ErrorCode::kNotALeaf, "cannot reduce a single-vertex tree");
  if (t.degree(v) != 1) throw Error(ErrorCode::kNotALeaf, "'" + t.name(v) + "' is not a leaf");
  const Vertex u = t.neighbors(v).front();
  std::vector<std::int64_t> next;
  next.reserve(t.size() - 1);
  for (Vertex x = 0; x < t.size(); ++x) {
    if (x == v) continue;
    std::int64_t value = c[x];
    if (x == u) value = checked::add(value, detail::fold_contribution(c[v]));
    next.push_back(value);
  }
  return {remove_leaf(t, v), GeneralizedDistribution(std::move(next))};
}

/// hat C(root) for an explicit generalized distribution.
inline std::int64_t hat_c(const Tree& t, const GeneralizedDistribution& c, Vertex root) {
  detail::check_sizes(t, c.size(), c.size());
  const RootedTree rooted(t, root);
  return detail::fold_values(c, rooted)[root];
}

inline std::int64_t hat_c(const Tree& t, const Distribution& d, const WeightFunction& w,
                          Vertex root) {
  detail::check_sizes(t, d.size(), w.size());
  return hat_c(t, induced_generalized(d, w), root);
}

/// Evaluates hat C at every root. O(n^2).
inline SolvabilityCertificate is_solvable(const Tree& t, const Distribution& d,
                                          const WeightFunction& w) {
  detail::check_sizes(t, d.size(), w.size());
  const auto c = induced_generalized(d, w);
  SolvabilityCertificate cert;
  cert.hat_values.resize(t.size());
  for (Vertex v = 0; v < t.size(); ++v) {
    cert.hat_values[v] = hat_c(t, c, v);
    if (cert.hat_values[v] >= 0 && !cert.witness_root) cert.witness_root = v;
  }
  cert.solvable = cert.witness_root.has_value();
  return cert;
}

/// Unit moves realizing the fold toward `root`: surpluses travel inward in
/// post-order, then deficits are filled outward in preorder so every parent
/// holds its pebbles before it feeds a child.
inline std::vector<PebblingMove> solve_witness(const Tree& t, const Distribution& d,
                                               const WeightFunction& w, Vertex root) {
  detail::check_sizes(t, d.size(), w.size());
  const RootedTree rooted(t, root);
  const auto value = detail::fold_values(induced_generalized(d, w), rooted);
  if (value[root] < 0) {
    throw Error(ErrorCode::kPrecondition,
                "'" + t.name(root) + "' is not a witness root (hat value " +
                    std::to_string(value[root]) + ")");
  }
  std::vector<PebblingMove> moves;
  for (Vertex x : rooted.postorder()) {
    if (x == root || value[x] < 0) continue;
    moves.insert(moves.end(), static_cast<std::size_t>(value[x] / 2),
                 PebblingMove{x, *rooted.parent[x]});
  }
  for (Vertex x : rooted.preorder) {
    if (x == root || value[x] >= 0) continue;
    moves.insert(moves.end(), static_cast<std::size_t>(-value[x]),
                 PebblingMove{*rooted.parent[x], x});
  }
  return moves;
}

class IllegalMoveError : public Error {
 public:
  IllegalMoveError(std::size_t index, const std::string& reason)
      : Error(ErrorCode::kIllegalMove,
              "illegal move at index " + std::to_string(index) + ": " + reason),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Applies moves in order. Throws IllegalMoveError for the first move whose
/// source holds fewer than two pebbles or whose endpoints are not adjacent.
inline Distribution simulate(const Tree& t, const Distribution& d,
                             std::span<const PebblingMove> moves) {
  detail::check_sizes(t, d.size(), d.size());
  std::vector<std::int64_t> cur(d.values().begin(), d.values().end());
  for (std::size_t i = 0; i < moves.size(); ++i) {
    const auto [from, to] = moves[i];
    if (from >= t.size() || to >= t.size() || !t.adjacent(from, to)) {
      throw IllegalMoveError(i, "endpoints not adjacent");
    }
    if (cur[from] < 2) {
      throw IllegalMoveError(
          i, "'" + t.name(from) + "' holds " + std::to_string(cur[from]) + " pebble(s)");
    }
    cur[from] -= 2;
    cur[to] += 1;
  }
  return Distribution(std::move(cur));
}

/// Move lists serialize as "from to" lines.
inline std::string format_moves(const Tree& t, std::span<const PebblingMove> moves) {
  std::string out;
  for (auto m : moves) out += t.name(m.from) + " " + t.name(m.to) + "\n";
  return out;
}

inline std::vector<PebblingMove> parse_moves(const Tree& t, std::string_view text) {
  std::vector<PebblingMove> out;
  for (const auto& tokens : detail::tokenized_lines(text)) {
    if (tokens.size() != 2) throw Error(ErrorCode::kParse, "expected 'from to' move line");
    out.push_back({t.at(tokens[0]), t.at(tokens[1])});
  }
  return out;
}

}  // namespace pebbling
