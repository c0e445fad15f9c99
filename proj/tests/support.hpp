#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include "dpcolor.hpp"

namespace testing_support {

using namespace dpcolor;

inline std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

inline std::vector<Graph> atlas_graphs(int max_n = 7) {
  std::vector<Graph> out;
  for (const auto& line : read_lines(std::string(DPCOLOR_TEST_DATA) + "/connected_upto7.g6")) {
    Graph g = parse_graph6(line);
    if (g.order() <= max_n) out.push_back(g);
  }
  return out;
}

// Cycle lengths found by testing every edge subset of size L for being a
// connected 2-regular subgraph.
inline std::set<int> brute_cycle_lengths(const Graph& g, int max_len) {
  std::set<int> out;
  const int m = g.size();
  for (int len = 3; len <= std::min(max_len, m); ++len) {
    std::vector<int> pick(len);
    std::iota(pick.begin(), pick.end(), 0);
    bool found = false;
    while (!found) {
      std::vector<int> deg(g.order(), 0);
      for (int e : pick) {
        ++deg[g.edge(e).u];
        ++deg[g.edge(e).v];
      }
      bool two_regular = true;
      int touched = 0, start = -1;
      for (int v = 0; v < g.order(); ++v) {
        if (deg[v] != 0 && deg[v] != 2) two_regular = false;
        if (deg[v] == 2) {
          ++touched;
          start = v;
        }
      }
      if (two_regular && touched == len) {
        // connected iff walking from start covers all picked edges
        std::vector<bool> used(len, false);
        int cur = start, steps = 0;
        while (true) {
          int next = -1;
          for (int i = 0; i < len; ++i) {
            if (used[i]) continue;
            const Edge& e = g.edge(pick[i]);
            if (e.u == cur || e.v == cur) {
              used[i] = true;
              next = e.u == cur ? e.v : e.u;
              break;
            }
          }
          if (next < 0) break;
          cur = next;
          ++steps;
        }
        if (steps == len) found = true;
      }
      int i = len - 1;
      while (i >= 0 && pick[i] == m - len + i) --i;
      if (i < 0) break;
      ++pick[i];
      for (int j = i + 1; j < len; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (found) out.insert(len);
  }
  return out;
}

// All injective maps pattern -> host checked one arrangement at a time.
inline std::vector<std::vector<Vertex>> naive_pattern_maps(const Graph& host, const ConfigPattern& p) {
  std::vector<std::vector<Vertex>> out;
  const int l = p.size(), n = host.order();
  if (l > n) return out;
  std::vector<int> chosen(n, 0);
  std::fill(chosen.end() - l, chosen.end(), 1);
  do {
    std::vector<Vertex> subset;
    for (int v = 0; v < n; ++v)
      if (chosen[v]) subset.push_back(v);
    do {
      bool ok = true;
      for (int i = 0; i < l && ok; ++i) ok = host.degree(subset[i]) == p.vertices[i].host_degree;
      for (auto [a, b] : p.edges)
        if (ok) ok = host.adjacent(subset[a], subset[b]);
      if (ok) out.push_back(subset);
    } while (std::next_permutation(subset.begin(), subset.end()));
  } while (std::next_permutation(chosen.begin(), chosen.end()));
  std::sort(out.begin(), out.end());
  return out;
}

// Checks every k^n coloring directly against the matching.
inline bool brute_dp_colorable(const Graph& g, const MatchingAssignment& m, int k) {
  const int n = g.order();
  std::vector<Color> c(n, 0);
  while (true) {
    bool ok = true;
    for (int e = 0; e < g.size() && ok; ++e) ok = m.partner(e, g.edge(e).u, c[g.edge(e).u]) != c[g.edge(e).v];
    if (ok) return true;
    int i = 0;
    while (i < n && ++c[i] == k) c[i++] = 0;
    if (i == n) return false;
  }
}

// Unrestricted DP-2-colorability: every edge independently takes one of the
// seven partial matchings between {0,1} and {0,1}; tracks the set of
// colorings that survive. Not colorable iff some choice kills all 2^n.
inline bool unrestricted_dp2_colorable(const Graph& g) {
  const int n = g.order();
  if (n > 6) throw std::runtime_error("oracle limited to 6 vertices");
  const int total = 1 << n;
  const std::uint64_t all = total == 64 ? ~0ull : ((1ull << total) - 1);
  // the seven partial matchings as sets of (color at u, color at v)
  const std::vector<std::vector<std::pair<int, int>>> options = {
      {}, {{0, 0}}, {{0, 1}}, {{1, 0}}, {{1, 1}}, {{0, 0}, {1, 1}}, {{0, 1}, {1, 0}}};
  std::unordered_set<std::uint64_t> alive{all};
  for (const Edge& e : g.edges()) {
    std::unordered_set<std::uint64_t> next;
    for (std::uint64_t mask : alive)
      for (const auto& opt : options) {
        std::uint64_t killed = 0;
        for (int col = 0; col < total; ++col) {
          int cu = (col >> e.u) & 1, cv = (col >> e.v) & 1;
          for (auto [a, b] : opt)
            if (a == cu && b == cv) killed |= 1ull << col;
        }
        next.insert(mask & ~killed);
      }
    alive = std::move(next);
    if (alive.count(0)) return false;
  }
  return !alive.count(0);
}

// Proper k-colorability and list colorability by plain enumeration.
inline bool brute_list_colorable(const Graph& g, const std::vector<std::vector<Color>>& lists) {
  const int n = g.order();
  std::vector<int> idx(n, 0);
  for (const auto& l : lists)
    if (l.empty()) return false;
  while (true) {
    bool ok = true;
    for (const Edge& e : g.edges())
      if (lists[e.u][idx[e.u]] == lists[e.v][idx[e.v]]) ok = false;
    if (ok) return true;
    int i = 0;
    while (i < n && ++idx[i] == static_cast<int>(lists[i].size())) idx[i++] = 0;
    if (i == n) return false;
  }
}

inline int brute_chi(const Graph& g) {
  for (int k = 1;; ++k) {
    std::vector<std::vector<Color>> lists(g.order());
    for (auto& l : lists)
      for (int c = 0; c < k; ++c) l.push_back(c);
    if (g.order() == 0 || brute_list_colorable(g, lists)) return k;
  }
}

// k-choosability by trying every k-subset of a pool of `pool` colors at
// every vertex.
inline bool brute_k_choosable(const Graph& g, int k, int pool) {
  std::vector<std::vector<Color>> subsets;
  std::vector<int> pick(pool, 0);
  std::fill(pick.end() - k, pick.end(), 1);
  do {
    std::vector<Color> s;
    for (int c = 0; c < pool; ++c)
      if (pick[c]) s.push_back(c);
    subsets.push_back(s);
  } while (std::next_permutation(pick.begin(), pick.end()));
  const int n = g.order();
  std::vector<int> idx(n, 0);
  while (true) {
    std::vector<std::vector<Color>> lists(n);
    for (int v = 0; v < n; ++v) lists[v] = subsets[idx[v]];
    if (!brute_list_colorable(g, lists)) return false;
    int i = 0;
    while (i < n && ++idx[i] == static_cast<int>(subsets.size())) idx[i++] = 0;
    if (i == n) return true;
  }
}

inline MatchingAssignment random_full_matching(const Graph& g, int k, std::mt19937_64& rng) {
  MatchingAssignment m(g, k);
  std::vector<Color> perm(k);
  for (int e = 0; e < g.size(); ++e) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    m.set_permutation(e, perm);
  }
  return m;
}

// Random partial matching: each color pair kept with probability 3/4.
inline MatchingAssignment random_matching(const Graph& g, int k, std::mt19937_64& rng) {
  MatchingAssignment m(g, k);
  std::vector<Color> perm(k);
  std::bernoulli_distribution keep(0.75);
  for (int e = 0; e < g.size(); ++e) {
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<std::pair<Color, Color>> pairs;
    for (Color c = 0; c < k; ++c)
      if (keep(rng)) pairs.emplace_back(c, perm[c]);
    m.set(e, g.edge(e).u, pairs);
  }
  return m;
}

inline Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  while (true) {
    std::vector<std::pair<Vertex, Vertex>> pairs;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (coin(rng)) pairs.emplace_back(u, v);
    Graph g(n, pairs);
    if (is_connected(g)) return g;
  }
}

// Valid DP-coloring of G - H (vertices outside `h`), found by randomized
// greedy passes; uncolored entries of H stay kUncolored.
inline std::optional<Coloring> random_partial_coloring(const Graph& g, const std::vector<Vertex>& h,
                                                       const ListAssignment& lists, const MatchingAssignment& m,
                                                       std::mt19937_64& rng) {
  std::vector<bool> in_h(g.order(), false);
  for (Vertex v : h) in_h[v] = true;
  std::vector<Vertex> rest;
  for (Vertex v = 0; v < g.order(); ++v)
    if (!in_h[v]) rest.push_back(v);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::shuffle(rest.begin(), rest.end(), rng);
    Coloring c(g.order(), kUncolored);
    bool ok = true;
    for (Vertex v : rest) {
      std::vector<Color> options;
      for (Color x : lists.list(v)) {
        bool free = true;
        auto nb = g.neighbors(v);
        for (std::size_t i = 0; i < nb.size() && free; ++i) {
          Vertex w = nb[i];
          if (c[w] == kUncolored) continue;
          free = m.partner(g.edge_id(v, w), v, x) != c[w];
        }
        if (free) options.push_back(x);
      }
      if (options.empty()) {
        ok = false;
        break;
      }
      c[v] = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    }
    if (ok) return c;
  }
  return std::nullopt;
}

// Conditions (1)-(3) for an order of H, judged on the actual residual lists,
// written out independently of the library's checker.
inline bool exact_conditions_hold(const Graph& g, const std::vector<Vertex>& order, int k,
                                  const std::vector<std::vector<Color>>& residual) {
  const std::size_t l = order.size();
  if (l < 2) return false;
  std::set<Vertex> h(order.begin(), order.end());
  const Vertex first = order.front(), last = order.back();
  if (!g.adjacent(first, last)) return false;
  if (!(residual[first].size() > residual[last].size() && !residual[last].empty())) return false;
  if (g.degree(last) > k) return false;
  bool outside = false;
  for (Vertex w : g.neighbors(last)) outside = outside || !h.count(w);
  if (!outside) return false;
  for (std::size_t i = 1; i + 1 < l; ++i) {
    int back = 0;
    for (Vertex w : g.neighbors(order[i])) {
      auto pos = std::find(order.begin(), order.end(), w);
      if (pos == order.end() || static_cast<std::size_t>(pos - order.begin()) < i) ++back;
    }
    if (back > k - 1) return false;
  }
  return true;
}

struct ExtensionInstance {
  Graph graph;
  std::vector<Vertex> order;
  ListAssignment lists;
  MatchingAssignment matching;
  Coloring partial;
};

// Random instance (n <= 8, lists {0..k-1}) whose exact conditions hold.
inline ExtensionInstance random_ordered_instance(int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(3, 8);
  while (true) {
    const int n = size(rng);
    Graph g = random_connected_graph(n, 0.35, rng);
    std::vector<Vertex> vs(n);
    std::iota(vs.begin(), vs.end(), 0);
    std::shuffle(vs.begin(), vs.end(), rng);
    const int l = std::uniform_int_distribution<int>(2, std::max(2, n - 1))(rng);
    std::vector<Vertex> order(vs.begin(), vs.begin() + l);
    auto lists = ListAssignment::uniform(n, k);
    auto m = std::bernoulli_distribution(0.5)(rng) ? random_full_matching(g, k, rng) : random_matching(g, k, rng);
    auto partial = random_partial_coloring(g, order, lists, m, rng);
    if (!partial) continue;
    std::vector<bool> in_h(n, false);
    for (Vertex v : order) in_h[v] = true;
    std::vector<std::vector<Color>> residual(n);
    for (Vertex v : order)
      for (Color x : lists.list(v)) {
        bool free = true;
        for (Vertex w : g.neighbors(v))
          if (!in_h[w] && m.partner(g.edge_id(v, w), v, x) == (*partial)[w]) free = false;
        if (free) residual[v].push_back(x);
      }
    if (exact_conditions_hold(g, order, k, residual)) return {g, order, lists, m, *partial};
  }
}

// Random instance for the minimum-degree extension: v has degree < k.
inline ExtensionInstance random_low_degree_instance(int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> size(2, 8);
  while (true) {
    const int n = size(rng);
    Graph g = random_connected_graph(n, 0.35, rng);
    std::vector<Vertex> low;
    for (Vertex v = 0; v < n; ++v)
      if (g.degree(v) < k) low.push_back(v);
    if (low.empty()) continue;
    Vertex v = low[std::uniform_int_distribution<std::size_t>(0, low.size() - 1)(rng)];
    auto lists = ListAssignment::uniform(n, k);
    auto m = random_full_matching(g, k, rng);
    auto partial = random_partial_coloring(g, {v}, lists, m, rng);
    if (!partial) continue;
    return {g, {v}, lists, m, *partial};
  }
}

// ---- straight-line plane graphs --------------------------------------------

inline std::int64_t orient(const Point& a, const Point& b, const Point& c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

// Closed segments ab and cd meet somewhere other than a shared endpoint.
inline bool segments_cross(const Point& a, const Point& b, const Point& c, const Point& d) {
  auto same = [](const Point& p, const Point& q) { return p.x == q.x && p.y == q.y; };
  const bool share = same(a, c) || same(a, d) || same(b, c) || same(b, d);
  auto on_segment = [](const Point& p, const Point& q, const Point& r) {
    return std::min(p.x, q.x) <= r.x && r.x <= std::max(p.x, q.x) && std::min(p.y, q.y) <= r.y &&
           r.y <= std::max(p.y, q.y);
  };
  const auto o1 = orient(a, b, c), o2 = orient(a, b, d), o3 = orient(c, d, a), o4 = orient(c, d, b);
  if (share) {
    // sharing an endpoint: overlap only if collinear and pointing the same way
    if (o1 != 0 || o2 != 0) return false;
    const Point& p = same(a, c) || same(a, d) ? a : b;
    const Point& q = same(a, c) || same(a, d) ? b : a;
    const Point& r = same(p, c) ? d : c;
    return (q.x - p.x) * (r.x - p.x) + (q.y - p.y) * (r.y - p.y) > 0;
  }
  if (((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0)) && ((o3 > 0 && o4 < 0) || (o3 < 0 && o4 > 0))) return true;
  if (o1 == 0 && on_segment(a, b, c)) return true;
  if (o2 == 0 && on_segment(a, b, d)) return true;
  if (o3 == 0 && on_segment(c, d, a)) return true;
  if (o4 == 0 && on_segment(c, d, b)) return true;
  return false;
}

inline bool is_straight_line_plane(const Graph& g, const std::vector<Point>& pts) {
  for (int e = 0; e < g.size(); ++e)
    for (int f = e + 1; f < g.size(); ++f) {
      const Edge &a = g.edge(e), &b = g.edge(f);
      if (segments_cross(pts[a.u], pts[a.v], pts[b.u], pts[b.v])) return false;
    }
  // no vertex in the interior of an edge
  for (const Edge& e : g.edges())
    for (Vertex v = 0; v < g.order(); ++v)
      if (v != e.u && v != e.v && orient(pts[e.u], pts[e.v], pts[v]) == 0 &&
          std::min(pts[e.u].x, pts[e.v].x) <= pts[v].x && pts[v].x <= std::max(pts[e.u].x, pts[e.v].x) &&
          std::min(pts[e.u].y, pts[e.v].y) <= pts[v].y && pts[v].y <= std::max(pts[e.u].y, pts[e.v].y))
        return false;
  return true;
}

struct PlaneSample {
  Graph graph;
  std::vector<Point> points;
};

// Random points in general position; edges offered in random order are kept
// with probability `density` when they cross nothing, then components are
// joined by further non-crossing edges.
inline PlaneSample random_plane_graph(int n, double density, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::int64_t> coord(0, 999);
  std::bernoulli_distribution keep(density);
  while (true) {
    std::vector<Point> pts;
    while (static_cast<int>(pts.size()) < n) {
      Point p{coord(rng), coord(rng)};
      bool ok = true;
      for (std::size_t i = 0; i < pts.size() && ok; ++i) {
        if (pts[i].x == p.x && pts[i].y == p.y) ok = false;
        for (std::size_t j = i + 1; j < pts.size() && ok; ++j)
          if (orient(pts[i], pts[j], p) == 0) ok = false;
      }
      if (ok) pts.push_back(p);
    }
    std::vector<std::pair<Vertex, Vertex>> candidates;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v) candidates.emplace_back(u, v);
    std::shuffle(candidates.begin(), candidates.end(), rng);
    std::vector<std::pair<Vertex, Vertex>> kept;
    auto crosses = [&](std::pair<Vertex, Vertex> c) {
      for (auto [a, b] : kept)
        if (segments_cross(pts[c.first], pts[c.second], pts[a], pts[b])) return true;
      return false;
    };
    for (auto c : candidates)
      if (keep(rng) && !crosses(c)) kept.push_back(c);
    std::vector<int> comp(n);
    std::iota(comp.begin(), comp.end(), 0);
    auto find = [&](int x) {
      while (comp[x] != x) x = comp[x] = comp[comp[x]];
      return x;
    };
    for (auto [a, b] : kept) comp[find(a)] = find(b);
    for (auto c : candidates)
      if (find(c.first) != find(c.second) && !crosses(c)) {
        kept.push_back(c);
        comp[find(c.first)] = find(c.second);
      }
    Graph g(n, kept);
    if (is_connected(g)) return {g, pts};
  }
}

inline PlaneEmbedding random_embedding(int n, double density, std::mt19937_64& rng) {
  auto s = random_plane_graph(n, density, rng);
  return embedding_from_coordinates(s.graph, s.points);
}

// ---- hand-built embeddings --------------------------------------------------

inline Point polar(double radius, double degrees) {
  const double t = degrees * 3.14159265358979323846 / 180.0;
  return {static_cast<std::int64_t>(std::llround(radius * std::cos(t))),
          static_cast<std::int64_t>(std::llround(radius * std::sin(t)))};
}

struct Drawing {
  std::vector<Point> points;
  std::vector<std::pair<Vertex, Vertex>> edges;

  Vertex add(Point p) {
    points.push_back(p);
    return static_cast<Vertex>(points.size() - 1);
  }
  void join(Vertex a, Vertex b) { edges.emplace_back(a, b); }
  Graph graph() const { return Graph(static_cast<int>(points.size()), edges); }
  bool plane() const { return is_straight_line_plane(graph(), points); }
  PlaneEmbedding embed() const { return embedding_from_coordinates(graph(), points); }
};

// An L-cycle c0..c(L-1) (vertices 0..L-1, counterclockwise) with a triangle
// apex outside every listed edge (ci, ci+1).
inline Drawing cycle_with_triangles(int len, const std::vector<int>& tri_edges) {
  Drawing d;
  for (int i = 0; i < len; ++i) d.add(polar(1000, 360.0 * i / len));
  for (int i = 0; i < len; ++i) d.join(i, (i + 1) % len);
  for (int i : tri_edges) {
    Vertex a = d.add(polar(1250, 360.0 * (i + 0.5) / len));
    d.join(i, a);
    d.join((i + 1) % len, a);
  }
  return d;
}

// Inner face of a 10-cycle whose edges alternate between 3-faces and the
// outer face.
inline Drawing alternating_ten_face() { return cycle_with_triangles(10, {0, 2, 4, 6, 8}); }

// 11-face with one 3-vertex path (two consecutive triangles) and four
// 2-vertex paths.
inline Drawing eleven_face_t3_t2() { return cycle_with_triangles(11, {0, 1, 3, 5, 7, 9}); }

// 10-face P0..P9 on 3-vertices sharing the (3,3)-edge P0P1 with a 13-face f
// whose walk runs wx, P0, P1, wy, R1..R6 (plus the closing edge); triangles
// P9 P0 wx and P1 P2 wy give the side condition at both ends.
struct GoodPoorLayout {
  Drawing drawing;
  Vertex p0 = 0, p1 = 1;
  Vertex wx = -1, wy = -1;
  std::vector<Vertex> ring;
};

inline GoodPoorLayout good_poor_configuration() {
  GoodPoorLayout out;
  Drawing& d = out.drawing;
  for (int k = 0; k < 10; ++k) d.add(polar(100, -18 + 36.0 * k));
  for (int k = 0; k < 10; ++k) d.join(k, (k + 1) % 10);
  out.wy = d.add(polar(170, 36));
  out.wx = d.add(polar(170, -36));
  d.join(1, out.wy);
  d.join(2, out.wy);
  d.join(9, out.wx);
  d.join(0, out.wx);
  // P3..P8 get degree 3 through an outer path Q3..Q8 tied to wy and wx
  std::vector<Vertex> q;
  for (int k = 3; k <= 8; ++k) {
    q.push_back(d.add(polar(220, -18 + 36.0 * k)));
    d.join(k, q.back());
  }
  for (std::size_t i = 0; i + 1 < q.size(); ++i) d.join(q[i], q[i + 1]);
  d.join(out.wy, q.front());
  d.join(out.wx, q.back());
  // the good face closes through R1..R6 on the right
  const std::vector<Point> r = {{220, 190}, {320, 150}, {380, 50}, {380, -50}, {320, -150}, {220, -190}};
  for (const Point& p : r) out.ring.push_back(d.add(p));
  d.join(out.wy, out.ring.front());
  for (std::size_t i = 0; i + 1 < out.ring.size(); ++i) d.join(out.ring[i], out.ring[i + 1]);
  d.join(out.ring.back(), out.wx);
  Vertex s1 = d.add({420, 250}), s2 = d.add({420, -250});
  d.join(s1, out.ring[0]);
  d.join(s1, out.ring[1]);
  d.join(s2, out.ring[4]);
  d.join(s2, out.ring[5]);
  return out;
}

// 10-cycle c0..c9 as outer face with a 4-vertex c0 whose two inner
// triangles c0 c1 b and c0 c9 c both border the outer face.
inline Drawing poor_vertex_fragment(bool second_triangle) {
  Drawing d;
  for (int i = 0; i < 10; ++i) d.add(polar(1000, 36.0 * i));
  for (int i = 0; i < 10; ++i) d.join(i, (i + 1) % 10);
  Vertex b = d.add(polar(700, 12));
  Vertex c = d.add(polar(700, -12));
  d.join(0, b);
  d.join(1, b);
  d.join(0, c);
  if (second_triangle) d.join(9, c);
  d.join(b, c);
  if (!second_triangle) d.join(c, 5);
  return d;
}

// x = 0, y = 1 joined by paths with 1, 2 and 4 edges: cycles of lengths 3, 5, 6.
inline Drawing theta_3_5_6() {
  Drawing d;
  Vertex x = d.add({0, 0}), y = d.add({400, 0});
  d.join(x, y);
  Vertex m = d.add({200, 150});
  d.join(x, m);
  d.join(m, y);
  Vertex a = d.add({100, -150}), b = d.add({200, -200}), c = d.add({300, -150});
  d.join(x, a);
  d.join(a, b);
  d.join(b, c);
  d.join(c, y);
  return d;
}

}  // namespace testing_support
