#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

using Color = int;
inline constexpr Color kUnmatched = -1;
inline constexpr Color kUncolored = -1;
/// Colors must stay below this for the bitmask search.
inline constexpr int kMaxColors = 64;

/// One chosen color per vertex; kUncolored marks vertices left open.
using Coloring = std::vector<Color>;

/// Color list per vertex, each sorted and duplicate-free.
class ListAssignment {
 public:
  ListAssignment() = default;
  explicit ListAssignment(std::vector<std::vector<Color>> lists) : lists_(std::move(lists)) {
    for (auto& l : lists_) {
      std::sort(l.begin(), l.end());
      l.erase(std::unique(l.begin(), l.end()), l.end());
      for (Color c : l)
        if (c < 0) throw Error(Errc::InvalidArgument, "negative color");
    }
  }

  /// L(v) = {0..k-1} for every vertex.
  static ListAssignment uniform(int n, int k) {
    std::vector<Color> base(k);
    for (int c = 0; c < k; ++c) base[c] = c;
    return ListAssignment(std::vector<std::vector<Color>>(n, base));
  }

  int vertex_count() const { return static_cast<int>(lists_.size()); }
  const std::vector<Color>& list(Vertex v) const { return lists_[v]; }
  const std::vector<std::vector<Color>>& lists() const { return lists_; }

  bool contains(Vertex v, Color c) const {
    return std::binary_search(lists_[v].begin(), lists_[v].end(), c);
  }

  /// Uniform list size, or -1 if sizes differ.
  int uniform_size() const {
    if (lists_.empty()) return 0;
    auto k = lists_[0].size();
    for (const auto& l : lists_)
      if (l.size() != k) return -1;
    return static_cast<int>(k);
  }

  /// One more than the largest color used.
  int palette() const {
    int p = 0;
    for (const auto& l : lists_)
      if (!l.empty()) p = std::max(p, l.back() + 1);
    return p;
  }

  friend bool operator==(const ListAssignment&, const ListAssignment&) = default;

 private:
  std::vector<std::vector<Color>> lists_;
};

/// Per-edge partial matchings between the color lists of its endpoints,
/// stored as partial permutation arrays for constant-time partner lookup.
/// For edge id e with endpoints u < v, `low(e)[a]` is the color at v matched
/// with color a at u (or kUnmatched), and `high(e)` is the inverse.
class MatchingAssignment {
 public:
  MatchingAssignment() = default;

  /// All matchings empty. Colors on every edge must be below `palette`.
  MatchingAssignment(const Graph& g, int palette)
      : edges_(g.edges()),
        palette_(palette),
        low_(g.size() * static_cast<std::size_t>(palette), kUnmatched),
        high_(g.size() * static_cast<std::size_t>(palette), kUnmatched) {
    if (palette < 0) throw Error(Errc::InvalidArgument, "negative palette");
  }

  /// Identity matching {(i,i)} on every edge.
  static MatchingAssignment identity(const Graph& g, int k) {
    MatchingAssignment m(g, k);
    for (int e = 0; e < g.size(); ++e) m.set_identity(e);
    return m;
  }

  int edge_count() const { return static_cast<int>(edges_.size()); }
  int palette() const { return palette_; }
  const Edge& edge(int e) const { return edges_[e]; }

  /// Partner at `to` of color c at `from` along edge e (one of its endpoints).
  Color partner(int e, Vertex from, Color c) const {
    if (c < 0 || c >= palette_) return kUnmatched;
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    return from == edges_[e].u ? low_[base + c] : high_[base + c];
  }

  /// Replaces the matching on edge e. Pairs are (color at `from`, color at the
  /// other endpoint).
  void set(int e, Vertex from, std::span<const std::pair<Color, Color>> pairs) {
    clear(e);
    const bool forward = from == edges_[e].u;
    if (!forward && from != edges_[e].v)
      throw Error(Errc::InvalidArgument, "vertex " + std::to_string(from) + " is not on edge");
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    for (auto [a, b] : pairs) {
      Color cu = forward ? a : b;
      Color cv = forward ? b : a;
      if (cu < 0 || cv < 0 || cu >= palette_ || cv >= palette_)
        throw Error(Errc::InvalidMatching, "color outside palette on edge " + describe(e));
      if (low_[base + cu] != kUnmatched || high_[base + cv] != kUnmatched) {
        clear(e);
        throw Error(Errc::InvalidMatching, "matching on edge " + describe(e) + " is not injective");
      }
      low_[base + cu] = cv;
      high_[base + cv] = cu;
    }
  }

  void set(int e, Vertex from, std::initializer_list<std::pair<Color, Color>> pairs) {
    set(e, from, std::span<const std::pair<Color, Color>>(pairs.begin(), pairs.size()));
  }

  void set(const Graph& g, Vertex from, Vertex to, std::span<const std::pair<Color, Color>> pairs) {
    int e = g.edge_id(from, to);
    if (e < 0)
      throw Error(Errc::InvalidMatching,
                  "no edge " + std::to_string(from) + "-" + std::to_string(to));
    set(e, from, pairs);
  }

  /// Full matching on edge e where color a at the low endpoint meets perm[a].
  void set_permutation(int e, std::span<const Color> perm) {
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    std::fill(low_.begin() + base, low_.begin() + base + palette_, kUnmatched);
    std::fill(high_.begin() + base, high_.begin() + base + palette_, kUnmatched);
    for (std::size_t a = 0; a < perm.size(); ++a) {
      low_[base + a] = perm[a];
      high_[base + perm[a]] = static_cast<Color>(a);
    }
  }

  void set_identity(int e) {
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    for (int a = 0; a < palette_; ++a) {
      low_[base + a] = a;
      high_[base + a] = a;
    }
  }

  void clear(int e) {
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    std::fill(low_.begin() + base, low_.begin() + base + palette_, kUnmatched);
    std::fill(high_.begin() + base, high_.begin() + base + palette_, kUnmatched);
  }

  /// Matched pairs on edge e as (color at u, color at v), u < v, by u-color.
  std::vector<std::pair<Color, Color>> pairs(int e) const {
    std::vector<std::pair<Color, Color>> out;
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    for (int a = 0; a < palette_; ++a)
      if (low_[base + a] != kUnmatched) out.emplace_back(a, low_[base + a]);
    return out;
  }

  std::size_t pair_count(int e) const { return pairs(e).size(); }

  bool is_identity(int e, int k) const {
    const std::size_t base = static_cast<std::size_t>(e) * palette_;
    for (int a = 0; a < palette_; ++a)
      if (low_[base + a] != (a < k ? a : kUnmatched)) return false;
    return true;
  }

  /// Throws InvalidMatching if any pair uses a color missing from a list or
  /// the graph's edge set differs.
  void validate(const Graph& g, const ListAssignment& lists) const {
    if (g.edges() != edges_) throw Error(Errc::InvalidMatching, "matching built for another graph");
    if (lists.vertex_count() != g.order())
      throw Error(Errc::InvalidMatching, "list assignment size differs from vertex count");
    for (int e = 0; e < edge_count(); ++e)
      for (auto [a, b] : pairs(e))
        if (!lists.contains(edges_[e].u, a) || !lists.contains(edges_[e].v, b))
          throw Error(Errc::InvalidMatching, "pair " + std::to_string(a) + "-" + std::to_string(b) +
                                                 " on edge " + describe(e) + " leaves the lists");
  }

  friend bool operator==(const MatchingAssignment&, const MatchingAssignment&) = default;

 private:
  std::string describe(int e) const {
    return std::to_string(edges_[e].u) + "-" + std::to_string(edges_[e].v);
  }

  std::vector<Edge> edges_;
  int palette_ = 0;
  std::vector<Color> low_;
  std::vector<Color> high_;
};

/// Cover graph: node (v, c) for each color c in L(v); cliques on each L_v
/// plus exactly the matching edges.
struct CoverGraph {
  std::vector<std::pair<Vertex, Color>> nodes;
  std::vector<std::pair<int, int>> edges;  // node indices, first < second
  std::vector<int> first_node;             // nodes of v are [first_node[v], first_node[v+1])

  int node_index(const ListAssignment& lists, Vertex v, Color c) const {
    const auto& l = lists.list(v);
    auto it = std::lower_bound(l.begin(), l.end(), c);
    if (it == l.end() || *it != c) return -1;
    return first_node[v] + static_cast<int>(it - l.begin());
  }
};

inline CoverGraph build_cover(const Graph& g, const ListAssignment& lists, const MatchingAssignment& m) {
  m.validate(g, lists);
  CoverGraph cover;
  cover.first_node.push_back(0);
  for (Vertex v = 0; v < g.order(); ++v) {
    for (Color c : lists.list(v)) cover.nodes.emplace_back(v, c);
    cover.first_node.push_back(static_cast<int>(cover.nodes.size()));
  }
  for (Vertex v = 0; v < g.order(); ++v)
    for (int i = cover.first_node[v]; i < cover.first_node[v + 1]; ++i)
      for (int j = i + 1; j < cover.first_node[v + 1]; ++j) cover.edges.emplace_back(i, j);
  for (int e = 0; e < g.size(); ++e)
    for (auto [a, b] : m.pairs(e)) {
      int x = cover.node_index(lists, g.edge(e).u, a);
      int y = cover.node_index(lists, g.edge(e).v, b);
      cover.edges.emplace_back(std::min(x, y), std::max(x, y));
    }
  return cover;
}

/// True if c picks a listed color at every vertex and no edge carries a
/// matched pair of chosen colors (an independent transversal of the cover).
inline bool is_valid_coloring(const Graph& g, const ListAssignment& lists, const MatchingAssignment& m,
                              const Coloring& c) {
  if (static_cast<int>(c.size()) != g.order()) return false;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!lists.contains(v, c[v])) return false;
  for (int e = 0; e < g.size(); ++e)
    if (m.partner(e, g.edge(e).u, c[g.edge(e).u]) == c[g.edge(e).v]) return false;
  return true;
}

/// Backtracking search for an M-coloring over a fixed graph, reusable across
/// many matching assignments (the adversary search mutates the matching and
/// calls solve() again).
///
/// Fail-first: the next vertex is the uncolored one with the fewest residual
/// colors (ties to the smallest index); colors are tried in increasing order.
/// Choosing c at v removes c's partners from the residual lists of uncolored
/// neighbors.
class CoverSearch {
 public:
  CoverSearch(const Graph& g, const ListAssignment& lists) : g_(g) {
    if (lists.vertex_count() != g.order())
      throw Error(Errc::InvalidArgument, "list assignment size differs from vertex count");
    if (lists.palette() > kMaxColors)
      throw Error(Errc::InvalidArgument, "colors must be below " + std::to_string(kMaxColors));
    initial_.resize(g.order());
    for (Vertex v = 0; v < g.order(); ++v) {
      std::uint64_t mask = 0;
      for (Color c : lists.list(v)) mask |= std::uint64_t{1} << c;
      initial_[v] = mask;
    }
  }

  std::optional<Coloring> solve(const MatchingAssignment& m) { return solve(m, initial_); }

  /// Same search with each vertex restricted to the colors set in `domains`.
  std::optional<Coloring> solve(const MatchingAssignment& m, const std::vector<std::uint64_t>& domains) {
    m_ = &m;
    const int n = g_.order();
    domain_ = domains;
    color_.assign(n, kUncolored);
    trail_.clear();
    nodes_ = 0;
    for (Vertex v = 0; v < n; ++v)
      if (domain_[v] == 0) return std::nullopt;
    if (search(0)) return color_;
    return std::nullopt;
  }

  const std::vector<std::uint64_t>& list_masks() const { return initial_; }

  /// Search nodes visited by the last solve().
  std::uint64_t nodes() const { return nodes_; }

 private:
  bool search(int colored) {
    ++nodes_;
    const int n = g_.order();
    if (colored == n) return true;
    Vertex v = -1;
    int best = kMaxColors + 1;
    for (Vertex u = 0; u < n; ++u) {
      if (color_[u] != kUncolored) continue;
      int size = std::popcount(domain_[u]);
      if (size < best) {
        best = size;
        v = u;
        if (size <= 1) break;
      }
    }
    auto nb = g_.neighbors(v);
    auto ids = g_.incident_edges(v);
    for (std::uint64_t rest = domain_[v]; rest != 0; rest &= rest - 1) {
      const Color c = std::countr_zero(rest);
      const std::size_t mark = trail_.size();
      bool dead = false;
      for (std::size_t i = 0; i < nb.size(); ++i) {
        Vertex w = nb[i];
        if (color_[w] != kUncolored) continue;
        Color p = m_->partner(ids[i], v, c);
        if (p == kUnmatched) continue;
        std::uint64_t bit = std::uint64_t{1} << p;
        if (domain_[w] & bit) {
          trail_.emplace_back(w, bit);
          domain_[w] &= ~bit;
          if (domain_[w] == 0) {
            dead = true;
            break;
          }
        }
      }
      if (!dead) {
        color_[v] = c;
        if (search(colored + 1)) return true;
        color_[v] = kUncolored;
      }
      while (trail_.size() > mark) {
        domain_[trail_.back().first] |= trail_.back().second;
        trail_.pop_back();
      }
    }
    return false;
  }

  const Graph& g_;
  const MatchingAssignment* m_ = nullptr;
  std::vector<std::uint64_t> initial_, domain_;
  Coloring color_;
  std::vector<std::pair<Vertex, std::uint64_t>> trail_;
  std::uint64_t nodes_ = 0;
};

/// The lexicographically least M-coloring (by vertex index), or nullopt when
/// none exists. Vertices are pinned one at a time to the smallest color that
/// keeps the rest satisfiable.
inline std::optional<Coloring> find_coloring(const Graph& g, const ListAssignment& lists,
                                             const MatchingAssignment& m) {
  m.validate(g, lists);
  CoverSearch search(g, lists);
  auto found = search.solve(m);
  if (!found) return std::nullopt;
  std::vector<std::uint64_t> domains = search.list_masks();
  for (Vertex v = 0; v < g.order(); ++v) {
    for (std::uint64_t rest = domains[v]; rest != 0; rest &= rest - 1) {
      const Color c = std::countr_zero(rest);
      if (c == (*found)[v]) {
        domains[v] = std::uint64_t{1} << c;
        break;
      }
      auto trial = domains;
      trial[v] = std::uint64_t{1} << c;
      if (auto better = search.solve(m, trial)) {
        found = better;
        domains = std::move(trial);
        break;
      }
    }
  }
  return found;
}

/// Matching-assignment form of an arbitrary k-list assignment: each list is
/// relabeled onto {0..k-1} in increasing order, and an edge matches the
/// relabeled colors that came from equal original colors.
struct ListReduction {
  ListAssignment lists;        // uniform {0..k-1}
  MatchingAssignment matching;
  std::vector<std::vector<Color>> original;  // original[v][i] is the color relabeled to i

  /// Maps a coloring of the reduced instance back to original colors.
  Coloring pull_back(const Coloring& c) const {
    Coloring out(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) out[v] = original[v][c[v]];
    return out;
  }
};

inline ListReduction from_list_assignment(const Graph& g, const ListAssignment& lists) {
  if (lists.vertex_count() != g.order())
    throw Error(Errc::InvalidArgument, "list assignment size differs from vertex count");
  const int k = lists.uniform_size();
  if (k < 0) throw Error(Errc::NonUniformLists, "lists have different sizes");
  ListReduction out;
  out.lists = ListAssignment::uniform(g.order(), k);
  out.original = lists.lists();
  out.matching = MatchingAssignment(g, k);
  for (int e = 0; e < g.size(); ++e) {
    const auto& lu = lists.list(g.edge(e).u);
    const auto& lv = lists.list(g.edge(e).v);
    std::vector<std::pair<Color, Color>> pairs;
    for (int i = 0, j = 0; i < k && j < k;) {
      if (lu[i] == lv[j]) pairs.emplace_back(i++, j++);
      else if (lu[i] < lv[j]) ++i;
      else ++j;
    }
    out.matching.set(e, g.edge(e).u, pairs);
  }
  return out;
}

/// Result of relabeling colors so that a spanning forest carries identity
/// matchings. relabel[v][old] = new.
struct GaugeResult {
  MatchingAssignment matching;
  std::vector<std::vector<Color>> relabel;

  /// Coloring of the normalized instance expressed in the original labels.
  Coloring to_original(const Coloring& c) const {
    Coloring out(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) {
      const auto& r = relabel[v];
      out[v] = static_cast<Color>(std::find(r.begin(), r.end(), c[v]) - r.begin());
    }
    return out;
  }
  Coloring from_original(const Coloring& c) const {
    Coloring out(c.size());
    for (std::size_t v = 0; v < c.size(); ++v) out[v] = relabel[v][c[v]];
    return out;
  }
};

/// Relabels colors per vertex (lists are {0..k-1}) so that every edge of the
/// spanning forest `tree` (edge ids) carries the identity matching. Tree edges
/// must hold full matchings. Colorability is unchanged because relabeling a
/// vertex's colors only renames cover-graph nodes.
inline GaugeResult gauge_normalize(const Graph& g, const MatchingAssignment& m, std::span<const int> tree,
                                   int k) {
  // tree must be a maximal acyclic edge set: n - components edges, no cycle
  int comps = 0;
  components(g, &comps);
  if (static_cast<int>(tree.size()) != g.order() - comps)
    throw Error(Errc::NotSpanningTree, "expected " + std::to_string(g.order() - comps) + " tree edges");
  std::vector<int> parent(g.order());
  for (Vertex v = 0; v < g.order(); ++v) parent[v] = v;
  auto find = [&](Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (int e = 0; e < m.edge_count(); ++e)
    for (auto [a, b] : m.pairs(e))
      if (a >= k || b >= k) throw Error(Errc::InvalidArgument, "colors must lie in 0..k-1");
  std::vector<std::vector<std::pair<Vertex, int>>> tree_adj(g.order());
  for (int e : tree) {
    if (e < 0 || e >= g.size()) throw Error(Errc::NotSpanningTree, "edge id out of range");
    Vertex a = find(g.edge(e).u), b = find(g.edge(e).v);
    if (a == b) throw Error(Errc::NotSpanningTree, "tree edges contain a cycle");
    parent[a] = b;
    if (m.pair_count(e) != static_cast<std::size_t>(k))
      throw Error(Errc::InvalidArgument, "tree edge without a full matching");
    tree_adj[g.edge(e).u].emplace_back(g.edge(e).v, e);
    tree_adj[g.edge(e).v].emplace_back(g.edge(e).u, e);
  }

  GaugeResult out;
  out.relabel.assign(g.order(), {});
  for (Vertex root = 0; root < g.order(); ++root) {
    if (!out.relabel[root].empty()) continue;
    out.relabel[root].resize(k);
    for (int c = 0; c < k; ++c) out.relabel[root][c] = c;
    std::vector<Vertex> stack{root};
    while (!stack.empty()) {
      Vertex p = stack.back();
      stack.pop_back();
      for (auto [u, e] : tree_adj[p]) {
        if (!out.relabel[u].empty()) continue;
        // color a at p meets m.partner(a) at u; make that pair (σp(a), σp(a))
        out.relabel[u].assign(k, 0);
        for (int a = 0; a < k; ++a) out.relabel[u][m.partner(e, p, a)] = out.relabel[p][a];
        stack.push_back(u);
      }
    }
  }

  out.matching = MatchingAssignment(g, m.palette());
  for (int e = 0; e < g.size(); ++e) {
    std::vector<std::pair<Color, Color>> pairs;
    for (auto [a, b] : m.pairs(e))
      pairs.emplace_back(out.relabel[g.edge(e).u][a], out.relabel[g.edge(e).v][b]);
    out.matching.set(e, g.edge(e).u, pairs);
  }
  return out;
}

}  // namespace dpcolor
