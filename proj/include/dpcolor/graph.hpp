#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "dpcolor/error.hpp"

namespace dpcolor {

using Vertex = int;

/// Undirected edge with u < v.
struct Edge {
  Vertex u;
  Vertex v;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
///
/// Edges are numbered in lexicographic order of (u, v) with u < v, and every
/// neighbor list is sorted; both orders are relied on for determinism.
class Graph {
 public:
  Graph() = default;

  Graph(int n, std::span<const std::pair<Vertex, Vertex>> pairs) : n_(n) {
    if (n < 0) throw Error(Errc::InvalidArgument, "negative vertex count");
    edges_.reserve(pairs.size());
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0 || a >= n || b >= n)
        throw Error(Errc::VertexOutOfRange,
                    "edge (" + std::to_string(a) + "," + std::to_string(b) + ") with n=" +
                        std::to_string(n));
      if (a == b) throw Error(Errc::SelfLoop, "vertex " + std::to_string(a));
      edges_.push_back(a < b ? Edge{a, b} : Edge{b, a});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adj_.assign(n_, {});
    for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
      adj_[edges_[id].u].push_back({edges_[id].v, id});
      adj_[edges_[id].v].push_back({edges_[id].u, id});
    }
    nbrs_.assign(n_, {});
    eids_.assign(n_, {});
    for (Vertex v = 0; v < n_; ++v) {
      std::sort(adj_[v].begin(), adj_[v].end());
      for (auto [w, id] : adj_[v]) {
        nbrs_[v].push_back(w);
        eids_[v].push_back(id);
      }
    }
  }

  Graph(int n, std::initializer_list<std::pair<Vertex, Vertex>> pairs)
      : Graph(n, std::span<const std::pair<Vertex, Vertex>>(pairs.begin(), pairs.size())) {}

  int order() const { return n_; }
  int size() const { return static_cast<int>(edges_.size()); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int id) const { return edges_[id]; }

  std::span<const Vertex> neighbors(Vertex v) const { return nbrs_[v]; }
  /// Edge ids parallel to neighbors(v).
  std::span<const int> incident_edges(Vertex v) const { return eids_[v]; }
  int degree(Vertex v) const { return static_cast<int>(nbrs_[v].size()); }

  /// Edge id of uv, or -1.
  int edge_id(Vertex u, Vertex v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) return -1;
    const auto& nb = nbrs_[u];
    auto it = std::lower_bound(nb.begin(), nb.end(), v);
    if (it == nb.end() || *it != v) return -1;
    return eids_[u][it - nb.begin()];
  }
  bool adjacent(Vertex u, Vertex v) const { return edge_id(u, v) >= 0; }

  int min_degree() const {
    int d = n_ == 0 ? 0 : degree(0);
    for (Vertex v = 1; v < n_; ++v) d = std::min(d, degree(v));
    return d;
  }
  int max_degree() const {
    int d = 0;
    for (Vertex v = 0; v < n_; ++v) d = std::max(d, degree(v));
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::pair<Vertex, int>>> adj_;
  std::vector<std::vector<Vertex>> nbrs_;
  std::vector<std::vector<int>> eids_;
};

/// Builds a graph whose vertex count is one more than the largest label seen.
inline Graph from_edge_list(std::span<const std::pair<Vertex, Vertex>> pairs) {
  int n = 0;
  for (auto [a, b] : pairs) n = std::max({n, a + 1, b + 1});
  return Graph(n, pairs);
}

inline Graph from_edge_list(std::initializer_list<std::pair<Vertex, Vertex>> pairs) {
  return from_edge_list(std::span<const std::pair<Vertex, Vertex>>(pairs.begin(), pairs.size()));
}

/// Induced subgraph on V \ S together with the vertex maps in both directions.
struct InducedSubgraph {
  Graph graph;
  std::vector<Vertex> old_to_new;  // -1 for deleted vertices
  std::vector<Vertex> new_to_old;
};

inline InducedSubgraph delete_vertices(const Graph& g, std::span<const Vertex> removed) {
  std::vector<bool> gone(g.order(), false);
  for (Vertex v : removed) {
    if (v < 0 || v >= g.order())
      throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
    gone[v] = true;
  }
  InducedSubgraph out;
  out.old_to_new.assign(g.order(), -1);
  for (Vertex v = 0; v < g.order(); ++v) {
    if (gone[v]) continue;
    out.old_to_new[v] = static_cast<Vertex>(out.new_to_old.size());
    out.new_to_old.push_back(v);
  }
  std::vector<std::pair<Vertex, Vertex>> kept;
  for (const Edge& e : g.edges())
    if (!gone[e.u] && !gone[e.v]) kept.emplace_back(out.old_to_new[e.u], out.old_to_new[e.v]);
  out.graph = Graph(static_cast<int>(out.new_to_old.size()), kept);
  return out;
}

/// Component label per vertex (labels are 0..c-1 in order of first vertex).
inline std::vector<int> components(const Graph& g, int* count = nullptr) {
  std::vector<int> comp(g.order(), -1);
  int c = 0;
  for (Vertex s = 0; s < g.order(); ++s) {
    if (comp[s] >= 0) continue;
    std::queue<Vertex> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      for (Vertex w : g.neighbors(v))
        if (comp[w] < 0) {
          comp[w] = c;
          q.push(w);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

inline bool is_connected(const Graph& g) {
  int c = 0;
  components(g, &c);
  return c <= 1;
}

/// Edge ids of a BFS spanning forest, rooted at the smallest vertex of each
/// component.
inline std::vector<int> spanning_forest(const Graph& g) {
  std::vector<int> tree;
  std::vector<bool> seen(g.order(), false);
  for (Vertex s = 0; s < g.order(); ++s) {
    if (seen[s]) continue;
    seen[s] = true;
    std::queue<Vertex> q;
    q.push(s);
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop();
      auto nb = g.neighbors(v);
      auto ids = g.incident_edges(v);
      for (std::size_t i = 0; i < nb.size(); ++i) {
        if (seen[nb[i]]) continue;
        seen[nb[i]] = true;
        tree.push_back(ids[i]);
        q.push(nb[i]);
      }
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

/// Degeneracy (max over the smallest-last order of the minimum degree) and the
/// smallest-last elimination order. Ties go to the smallest vertex index.
struct Degeneracy {
  int value = 0;
  std::vector<Vertex> order;  // removal order
};

inline Degeneracy degeneracy(const Graph& g) {
  Degeneracy out;
  std::vector<int> deg(g.order());
  std::vector<bool> removed(g.order(), false);
  for (Vertex v = 0; v < g.order(); ++v) deg[v] = g.degree(v);
  for (int step = 0; step < g.order(); ++step) {
    Vertex best = -1;
    for (Vertex v = 0; v < g.order(); ++v)
      if (!removed[v] && (best < 0 || deg[v] < deg[best])) best = v;
    out.value = std::max(out.value, deg[best]);
    removed[best] = true;
    out.order.push_back(best);
    for (Vertex w : g.neighbors(best))
      if (!removed[w]) --deg[w];
  }
  return out;
}

/// Size of a maximum clique (exact; intended for desk-scale graphs).
inline int clique_number(const Graph& g) {
  int best = g.order() > 0 ? 1 : 0;
  std::vector<Vertex> current;
  auto grow = [&](auto&& self, std::vector<Vertex> candidates) -> void {
    best = std::max(best, static_cast<int>(current.size()));
    if (current.size() + candidates.size() <= static_cast<std::size_t>(best)) return;
    while (!candidates.empty()) {
      if (current.size() + candidates.size() <= static_cast<std::size_t>(best)) return;
      Vertex v = candidates.back();
      candidates.pop_back();
      std::vector<Vertex> next;
      for (Vertex w : candidates)
        if (g.adjacent(v, w)) next.push_back(w);
      current.push_back(v);
      self(self, std::move(next));
      current.pop_back();
    }
  };
  std::vector<Vertex> all(g.order());
  std::iota(all.begin(), all.end(), 0);
  grow(grow, all);
  return best;
}

/// Common named graphs used across tests and tools.
namespace named {

inline Graph cycle(int m) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < m; ++i) e.emplace_back(i, (i + 1) % m);
  return Graph(m, e);
}

inline Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph complete(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

inline Graph complete_bipartite(int a, int b) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return Graph(a + b, e);
}

inline Graph petersen() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(5 + i, 5 + (i + 2) % 5);
  }
  return Graph(10, e);
}

inline Graph grid(int rows, int cols) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      int v = r * cols + c;
      if (c + 1 < cols) e.emplace_back(v, v + 1);
      if (r + 1 < rows) e.emplace_back(v, v + cols);
    }
  return Graph(rows * cols, e);
}

/// Triangular prism: triangles 0-1-2 and 3-4-5, rungs i -- i+3.
inline Graph prism() {
  return Graph(6, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}, {0, 3}, {1, 4}, {2, 5}});
}

inline Graph cube() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int v = 0; v < 8; ++v)
    for (int bit = 1; bit < 8; bit <<= 1)
      if ((v & bit) == 0) e.emplace_back(v, v | bit);
  return Graph(8, e);
}

/// Regular dodecahedron: outer 5-cycle 0..4, ring 5..14, inner 5-cycle 15..19.
inline Graph dodecahedron() {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, 5 + 2 * i);
    e.emplace_back(15 + i, 15 + (i + 1) % 5);
    e.emplace_back(15 + i, 6 + 2 * i);
  }
  for (int i = 0; i < 10; ++i) e.emplace_back(5 + i, 5 + (i + 1) % 10);
  return Graph(20, e);
}

}  // namespace named

}  // namespace dpcolor
