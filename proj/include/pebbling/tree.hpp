#pragma once

/**
 * @file tree.hpp
 * @brief Trees on named vertices, vertex-valued maps, minimal subtrees and
 * orientation of the edges outside a subtree toward it.
 *
 * Vertices are arbitrary whitespace-free name tokens. They are mapped to dense
 * indices in sorted-name order at construction, so iterating indices in
 * increasing order is iterating names in increasing order. Every ordering the
 * library exposes (adjacency, edges, tables) follows from that.
 */

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pebbling/error.hpp"

namespace pebbling {

using Vertex = std::size_t;

struct Edge {
  Vertex u;  // u < v
  Vertex v;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

namespace detail {

inline std::vector<std::vector<std::string>> tokenized_lines(std::string_view text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> tokens;
    std::string tok;
    while (ls >> tok) tokens.push_back(tok);
    if (tokens.empty() || tokens.front().front() == '#') continue;
    out.push_back(std::move(tokens));
  }
  return out;
}

inline std::int64_t parse_nonnegative(const std::string& token) {
  std::int64_t value = 0;
  if (token.empty() || token.front() < '0' || token.front() > '9') {
    throw Error(ErrorCode::kParse, "expected a nonnegative integer, got '" + token + "'");
  }
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) {
    throw Error(ErrorCode::kOverflow, "value out of 64-bit range: '" + token + "'");
  }
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw Error(ErrorCode::kParse, "expected a nonnegative integer, got '" + token + "'");
  }
  return value;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Vertex-valued maps
// ---------------------------------------------------------------------------

struct DistributionTag {
  static constexpr bool kNonnegative = true;
  static constexpr const char* kWhat = "distribution";
};
struct WeightTag {
  static constexpr bool kNonnegative = true;
  static constexpr const char* kWhat = "weight function";
};
struct GeneralizedTag {
  static constexpr bool kNonnegative = false;
  static constexpr const char* kWhat = "generalized distribution";
};

/// Dense per-vertex integer values; the tag decides whether negatives are legal.
template <typename Tag>
class VertexValues {
 public:
  VertexValues() = default;
  explicit VertexValues(std::size_t vertex_count) : values_(vertex_count, 0) {}
  explicit VertexValues(std::vector<std::int64_t> values) : values_(std::move(values)) {
    for (auto x : values_) check(x);
  }

  std::size_t size() const noexcept { return values_.size(); }
  std::int64_t operator[](Vertex v) const { return values_.at(v); }
  std::span<const std::int64_t> values() const noexcept { return values_; }

  void set(Vertex v, std::int64_t value) {
    check(value);
    values_.at(v) = value;
  }
  void add(Vertex v, std::int64_t delta) { set(v, checked::add(values_.at(v), delta)); }

  std::int64_t total() const {
    std::int64_t sum = 0;
    for (auto x : values_) sum = checked::add(sum, x);
    return sum;
  }

  /// Vertices with a strictly positive value, in name order.
  std::vector<Vertex> support() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < values_.size(); ++v) {
      if (values_[v] > 0) out.push_back(v);
    }
    return out;
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](auto x) { return x == 0; });
  }

  friend bool operator==(const VertexValues&, const VertexValues&) = default;

 private:
  static void check(std::int64_t value) {
    if constexpr (Tag::kNonnegative) {
      if (value < 0) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(Tag::kWhat) + " values must be nonnegative");
      }
    }
  }

  std::vector<std::int64_t> values_;
};

using Distribution = VertexValues<DistributionTag>;
using WeightFunction = VertexValues<WeightTag>;
using GeneralizedDistribution = VertexValues<GeneralizedTag>;

/// C = D - omega.
inline GeneralizedDistribution induced_generalized(const Distribution& d,
                                                   const WeightFunction& w) {
  if (d.size() != w.size()) {
    throw Error(ErrorCode::kInvalidArgument, "distribution and weights differ in size");
  }
  std::vector<std::int64_t> c(d.size());
  for (Vertex v = 0; v < d.size(); ++v) c[v] = checked::sub(d[v], w[v]);
  return GeneralizedDistribution(std::move(c));
}

// ---------------------------------------------------------------------------
// Tree
// ---------------------------------------------------------------------------

class Tree {
 public:
  /// Validates and builds a tree. Names need not be sorted; edges refer to
  /// positions in `names`.
  static Tree build(std::vector<std::string> names,
                    const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    if (names.empty()) throw Error(ErrorCode::kParse, "empty tree (zero vertices)");
    const std::size_t n = names.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;

    Tree t;
    t.names_.reserve(n);
    for (auto i : order) t.names_.push_back(names[i]);
    for (std::size_t i = 0; i < n; ++i) {
      if (t.names_[i].empty()) throw Error(ErrorCode::kParse, "empty vertex name");
      if (i > 0 && t.names_[i] == t.names_[i - 1]) {
        throw Error(ErrorCode::kParse, "duplicate vertex name '" + t.names_[i] + "'");
      }
    }

    // Union-find distinguishes cycles from duplicates and disconnection.
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };

    t.adjacency_.assign(n, {});
    for (auto [a, b] : edges) {
      if (a >= n || b >= n) throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
      const Vertex u = rank[a], v = rank[b];
      if (u == v) throw Error(ErrorCode::kParse, "self-loop at '" + t.names_[u] + "'");
      const Edge e = make_edge(u, v);
      if (std::find(t.adjacency_[u].begin(), t.adjacency_[u].end(), v) != t.adjacency_[u].end()) {
        throw Error(ErrorCode::kParse,
                    "duplicate edge '" + t.names_[e.u] + " " + t.names_[e.v] + "'");
      }
      const auto ru = find(u), rv = find(v);
      if (ru == rv) {
        throw Error(ErrorCode::kParse, "cycle detected at edge '" + t.names_[e.u] + " " +
                                           t.names_[e.v] + "'");
      }
      parent[ru] = rv;
      t.adjacency_[u].push_back(v);
      t.adjacency_[v].push_back(u);
      t.edges_.push_back(e);
    }
    if (t.edges_.size() + 1 != n) {
      throw Error(ErrorCode::kParse, "disconnected: " + std::to_string(n) + " vertices but " +
                                         std::to_string(t.edges_.size()) + " edges");
    }
    for (auto& adj : t.adjacency_) std::sort(adj.begin(), adj.end());
    std::sort(t.edges_.begin(), t.edges_.end());
    return t;
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Vertex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::optional<Vertex> find(std::string_view name) const {
    auto it = std::lower_bound(names_.begin(), names_.end(), name);
    if (it == names_.end() || *it != name) return std::nullopt;
    return static_cast<Vertex>(it - names_.begin());
  }

  Vertex at(std::string_view name) const {
    if (auto v = find(name)) return *v;
    throw Error(ErrorCode::kUnknownVertex, "unknown vertex '" + std::string(name) + "'");
  }

  void check_vertex(Vertex v) const {
    if (v >= size()) {
      throw Error(ErrorCode::kUnknownVertex, "vertex index " + std::to_string(v) + " out of range");
    }
  }

  /// Neighbors in name order.
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  bool adjacent(Vertex u, Vertex v) const {
    const auto& adj = adjacency_.at(u);
    return std::binary_search(adj.begin(), adj.end(), v);
  }

  /// BFS distances from `source` to every vertex.
  std::vector<std::int64_t> distances_from(Vertex source) const {
    check_vertex(source);
    std::vector<std::int64_t> dist(size(), -1);
    std::vector<Vertex> queue{source};
    dist[source] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex x = queue[head];
      for (Vertex y : adjacency_[x]) {
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
      }
    }
    return dist;
  }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  Tree() = default;

  std::vector<std::string> names_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<Edge> edges_;
};

/// The tree hung from a root: parent pointers and a preorder in which the
/// children of every vertex appear in name order.
struct RootedTree {
  Vertex root;
  std::vector<std::optional<Vertex>> parent;
  std::vector<Vertex> preorder;

  RootedTree(const Tree& t, Vertex r) : root(r), parent(t.size()) {
    t.check_vertex(r);
    preorder.reserve(t.size());
    std::vector<Vertex> stack{r};
    std::vector<bool> seen(t.size(), false);
    seen[r] = true;
    while (!stack.empty()) {
      const Vertex x = stack.back();
      stack.pop_back();
      preorder.push_back(x);
      auto adj = t.neighbors(x);
      for (auto it = adj.rbegin(); it != adj.rend(); ++it) {
        if (!seen[*it]) {
          seen[*it] = true;
          parent[*it] = x;
          stack.push_back(*it);
        }
      }
    }
  }

  /// Children before parents; siblings in name order.
  std::vector<Vertex> postorder() const {
    // Walk the preorder keeping the stack of open ancestors; a vertex closes
    // once the walk leaves its subtree.
    std::vector<Vertex> out;
    out.reserve(preorder.size());
    std::vector<Vertex> open;
    for (Vertex v : preorder) {
      while (!open.empty() && (!parent[v] || open.back() != *parent[v])) {
        out.push_back(open.back());
        open.pop_back();
      }
      open.push_back(v);
    }
    while (!open.empty()) {
      out.push_back(open.back());
      open.pop_back();
    }
    return out;
  }
};

// ---------------------------------------------------------------------------
// Text formats
// ---------------------------------------------------------------------------

/// Parses an edge list: one "u v" per line, or a bare "v" declaring a vertex.
/// Blank lines and lines starting with '#' are ignored.
inline Tree parse_tree(std::string_view text) {
  std::map<std::string, std::size_t> ids;
  std::vector<std::string> names;
  auto id = [&](const std::string& name) {
    auto [it, inserted] = ids.emplace(name, names.size());
    if (inserted) names.push_back(name);
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& tokens : detail::tokenized_lines(text)) {
    if (tokens.size() == 1) {
      id(tokens[0]);
    } else if (tokens.size() == 2) {
      const auto a = id(tokens[0]);
      const auto b = id(tokens[1]);
      edges.emplace_back(a, b);
    } else {
      throw Error(ErrorCode::kParse, "edge line must name one or two vertices");
    }
  }
  return Tree::build(std::move(names), edges);
}

/// Edge list sorted by name; a single-vertex tree serializes as its bare name.
inline std::string serialize_tree(const Tree& t) {
  std::string out;
  if (t.size() == 1) return t.name(0) + "\n";
  for (const auto& e : t.edges()) out += t.name(e.u) + " " + t.name(e.v) + "\n";
  return out;
}

/// Parses "v k" lines into a map over the tree's vertices. Absent vertices
/// take 0; unknown or repeated vertices are errors.
template <typename Tag>
VertexValues<Tag> parse_vertex_map(const Tree& t, std::string_view text) {
  VertexValues<Tag> out(t.size());
  std::vector<bool> seen(t.size(), false);
  for (const auto& tokens : detail::tokenized_lines(text)) {
    if (tokens.size() != 2) throw Error(ErrorCode::kParse, "expected 'vertex value' line");
    const Vertex v = t.at(tokens[0]);
    if (seen[v]) throw Error(ErrorCode::kParse, "vertex '" + tokens[0] + "' listed twice");
    seen[v] = true;
    out.set(v, detail::parse_nonnegative(tokens[1]));
  }
  return out;
}

template <typename Tag>
std::string format_vertex_map(const Tree& t, const VertexValues<Tag>& values) {
  std::string out;
  for (Vertex v = 0; v < t.size(); ++v) {
    out += t.name(v) + " " + std::to_string(values[v]) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Elementary queries
// ---------------------------------------------------------------------------

inline std::int64_t distance(const Tree& t, Vertex u, Vertex v) {
  t.check_vertex(v);
  return t.distances_from(u)[v];
}

/// Degree-one vertices in name order; a single vertex counts as a leaf.
inline std::vector<Vertex> leaves(const Tree& t) {
  if (t.size() == 1) return {0};
  std::vector<Vertex> out;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (t.degree(v) == 1) out.push_back(v);
  }
  return out;
}

/// A connected vertex/edge subset of a host tree.
struct Subtree {
  std::vector<bool> member;
  std::vector<Edge> edges;

  std::size_t vertex_count() const {
    return static_cast<std::size_t>(std::count(member.begin(), member.end(), true));
  }
  bool contains(Vertex v) const { return v < member.size() && member[v]; }

  static Subtree whole(const Tree& t) { return {std::vector<bool>(t.size(), true), t.edges()}; }
};

/// Smallest connected subtree containing `v` and every vertex of `s`.
inline Subtree minimal_subtree(const Tree& t, Vertex v, std::span<const Vertex> s) {
  t.check_vertex(v);
  for (Vertex x : s) t.check_vertex(x);
  const RootedTree rooted(t, v);
  Subtree out{std::vector<bool>(t.size(), false), {}};
  out.member[v] = true;
  // A vertex belongs iff its hanging subtree holds a target; walk up from
  // each target until reaching something already included.
  for (Vertex x : s) {
    while (!out.member[x]) {
      out.member[x] = true;
      x = *rooted.parent[x];
    }
  }
  for (Vertex x = 0; x < t.size(); ++x) {
    if (out.member[x] && x != v) out.edges.push_back(make_edge(x, *rooted.parent[x]));
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

/// A forest of in-trees: every vertex has at most one outgoing arc, and
/// following arcs always ends in the sink set.
class DirectedForest {
 public:
  struct Arc {
    Vertex from;
    Vertex to;
    friend auto operator<=>(const Arc&, const Arc&) = default;
  };

  /// Builds a forest from explicit arcs; the sink set is the vertices without
  /// an outgoing arc.
  static DirectedForest from_arcs(std::size_t vertex_count, std::span<const Arc> arcs) {
    DirectedForest f;
    f.head_.assign(vertex_count, std::nullopt);
    for (auto a : arcs) {
      if (a.from >= vertex_count || a.to >= vertex_count || a.from == a.to) {
        throw Error(ErrorCode::kInvalidArgument, "invalid arc");
      }
      if (f.head_[a.from]) throw Error(ErrorCode::kInvalidArgument, "vertex with two outgoing arcs");
      f.head_[a.from] = a.to;
    }
    f.sink_.assign(vertex_count, false);
    for (Vertex v = 0; v < vertex_count; ++v) f.sink_[v] = !f.head_[v];
    // Every walk must terminate; a directed cycle would loop forever.
    std::vector<int> state(vertex_count, 0);  // 0 new, 1 on walk, 2 done
    for (Vertex v = 0; v < vertex_count; ++v) {
      std::vector<Vertex> walk;
      Vertex x = v;
      while (state[x] == 0) {
        state[x] = 1;
        walk.push_back(x);
        if (!f.head_[x]) break;
        x = *f.head_[x];
      }
      if (state[x] == 1 && f.head_[x]) {
        throw Error(ErrorCode::kInvalidArgument, "arcs contain a directed cycle");
      }
      for (Vertex y : walk) state[y] = 2;
    }
    return f;
  }

  std::size_t vertex_count() const noexcept { return head_.size(); }
  std::optional<Vertex> head(Vertex v) const { return head_.at(v); }
  bool in_sink(Vertex v) const { return sink_.at(v); }

  std::size_t arc_count() const {
    return static_cast<std::size_t>(
        std::count_if(head_.begin(), head_.end(), [](const auto& h) { return h.has_value(); }));
  }

  /// Arcs sorted by (from, to).
  std::vector<Arc> arcs() const {
    std::vector<Arc> out;
    for (Vertex v = 0; v < head_.size(); ++v) {
      if (head_[v]) out.push_back({v, *head_[v]});
    }
    return out;
  }

 private:
  friend DirectedForest orient_toward(const Tree& t, const Subtree& sink);

  std::vector<std::optional<Vertex>> head_;
  std::vector<bool> sink_;
};

/// Directs every edge of `t` outside `sink` toward `sink`.
inline DirectedForest orient_toward(const Tree& t, const Subtree& sink) {
  if (sink.member.size() != t.size()) {
    throw Error(ErrorCode::kInvalidArgument, "sink is not a subgraph of the tree");
  }
  const std::size_t k = sink.vertex_count();
  if (k == 0) throw Error(ErrorCode::kInvalidArgument, "sink is empty");
  std::vector<std::vector<Vertex>> inner(t.size());
  for (auto e : sink.edges) {
    if (e.u >= t.size() || e.v >= t.size() || !t.adjacent(e.u, e.v) || !sink.member[e.u] ||
        !sink.member[e.v]) {
      throw Error(ErrorCode::kInvalidArgument, "sink is not a subgraph of the tree");
    }
    inner[e.u].push_back(e.v);
    inner[e.v].push_back(e.u);
  }
  Vertex start = 0;
  while (!sink.member[start]) ++start;
  std::vector<bool> reached(t.size(), false);
  std::vector<Vertex> queue{start};
  reached[start] = true;
  for (std::size_t h = 0; h < queue.size(); ++h) {
    for (Vertex y : inner[queue[h]]) {
      if (!reached[y]) {
        reached[y] = true;
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != k || sink.edges.size() + 1 != k) {
    throw Error(ErrorCode::kInvalidArgument, "sink is not connected");
  }

  DirectedForest f;
  f.head_.assign(t.size(), std::nullopt);
  f.sink_ = sink.member;
  // Multi-source BFS outward from the sink; each discovered vertex points
  // back at the vertex it was discovered from.
  std::vector<Vertex> frontier;
  std::vector<bool> seen = sink.member;
  for (Vertex v = 0; v < t.size(); ++v) {
    if (sink.member[v]) frontier.push_back(v);
  }
  for (std::size_t h = 0; h < frontier.size(); ++h) {
    const Vertex x = frontier[h];
    for (Vertex y : t.neighbors(x)) {
      if (!seen[y]) {
        seen[y] = true;
        f.head_[y] = x;
        frontier.push_back(y);
      }
    }
  }
  return f;
}

/// Deletes leaf `v`, keeping all other names.
inline Tree remove_leaf(const Tree& t, Vertex v) {
  t.check_vertex(v);
  if (t.size() < 2) throw Error(ErrorCode::kNotALeaf, "cannot delete the only vertex");
  if (t.degree(v) != 1) throw Error(ErrorCode::kNotALeaf, "'" + t.name(v) + "' is not a leaf");
  std::vector<std::string> names;
  for (Vertex x = 0; x < t.size(); ++x) {
    if (x != v) names.push_back(t.name(x));
  }
  auto shift = [v](Vertex x) { return x > v ? x - 1 : x; };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (auto e : t.edges()) {
    if (e.u != v && e.v != v) edges.emplace_back(shift(e.u), shift(e.v));
  }
  return Tree::build(std::move(names), edges);
}

}  // namespace pebbling
