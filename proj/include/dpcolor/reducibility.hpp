#pragma once

#include <algorithm>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpcolor/dp_core.hpp"
#include "dpcolor/graph.hpp"

namespace dpcolor {

/// A(v) for the vertices of H: colors of L(v) not matched to the chosen color
/// of any colored neighbor. Indexed by host vertex; empty outside H.
struct ResidualLists {
  std::vector<std::vector<Color>> available;

  const std::vector<Color>& at(Vertex v) const { return available[v]; }
};

namespace detail {

inline std::vector<bool> membership(const Graph& g, std::span<const Vertex> h) {
  std::vector<bool> in(g.order(), false);
  for (Vertex v : h) {
    if (v < 0 || v >= g.order()) throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
    if (in[v]) throw Error(Errc::InvalidArgument, "vertex " + std::to_string(v) + " repeated");
    in[v] = true;
  }
  return in;
}

/// Throws InvalidPartial unless `partial` colors exactly V \ H validly.
inline void check_partial(const Graph& g, const std::vector<bool>& in_h, const ListAssignment& lists,
                          const MatchingAssignment& m, const Coloring& partial) {
  if (static_cast<int>(partial.size()) != g.order())
    throw Error(Errc::InvalidPartial, "coloring size differs from vertex count");
  for (Vertex v = 0; v < g.order(); ++v) {
    if (in_h[v] && partial[v] != kUncolored)
      throw Error(Errc::InvalidPartial, "vertex " + std::to_string(v) + " of H is colored");
    if (!in_h[v] && !lists.contains(v, partial[v]))
      throw Error(Errc::InvalidPartial, "vertex " + std::to_string(v) + " has no listed color");
  }
  for (int e = 0; e < g.size(); ++e) {
    auto [u, v] = g.edge(e);
    if (in_h[u] || in_h[v]) continue;
    if (m.partner(e, u, partial[u]) == partial[v])
      throw Error(Errc::InvalidPartial,
                  "edge " + std::to_string(u) + "-" + std::to_string(v) + " joins matched colors");
  }
}

/// Colors of L(v) not matched to any colored neighbor's color.
inline std::vector<Color> free_colors(const Graph& g, const ListAssignment& lists, const MatchingAssignment& m,
                                      const Coloring& c, Vertex v) {
  std::vector<Color> out;
  auto nb = g.neighbors(v);
  auto ids = g.incident_edges(v);
  for (Color x : lists.list(v)) {
    bool blocked = false;
    for (std::size_t i = 0; i < nb.size() && !blocked; ++i)
      if (c[nb[i]] != kUncolored && m.partner(ids[i], v, x) == c[nb[i]]) blocked = true;
    if (!blocked) out.push_back(x);
  }
  return out;
}

}  // namespace detail

inline ResidualLists residual_lists(const Graph& g, std::span<const Vertex> h, const ListAssignment& lists,
                                    const MatchingAssignment& m, const Coloring& partial) {
  m.validate(g, lists);
  auto in_h = detail::membership(g, h);
  detail::check_partial(g, in_h, lists, m, partial);
  ResidualLists out;
  out.available.assign(g.order(), {});
  for (Vertex v : h) out.available[v] = detail::free_colors(g, lists, m, partial, v);
  return out;
}

struct StructuralFailure {
  int condition;  // 1, 2 or 3
  int index;      // 1-based position in the order, 0 when not tied to one vertex
  std::string reason;
};

/// Outcome of the structural near-degenerate check on an ordering of H.
///
/// Condition (1) is judged in the worst case over all colorings of G - H: one
/// may assume full matchings, so each outside neighbor of v removes at most one
/// color and, when v has one, at least one. Hence
///   k - out(v) <= |A(v)| <= k - [out(v) > 0],
/// and (1) is guaranteed exactly when k - out(v1) > k - [out(vl) > 0] and
/// k - out(vl) >= 1.
struct StructuralCheck {
  bool holds = false;
  bool condition1_guaranteed = false;
  int outside_first = 0;
  int outside_last = 0;
  std::vector<StructuralFailure> failures;
};

inline StructuralCheck check_lemma2_structural(const Graph& g, std::span<const Vertex> order, int k) {
  auto in_h = detail::membership(g, order);
  StructuralCheck out;
  const int l = static_cast<int>(order.size());
  auto outside = [&](Vertex v) {
    int c = 0;
    for (Vertex w : g.neighbors(v)) c += in_h[w] ? 0 : 1;
    return c;
  };
  if (l < 2) {
    out.failures.push_back({1, 0, "H needs at least two vertices"});
    return out;
  }
  const Vertex first = order.front(), last = order.back();
  out.outside_first = outside(first);
  out.outside_last = outside(last);

  if (!g.adjacent(first, last)) out.failures.push_back({1, 0, "v1 and vl are not adjacent"});
  const int min_first = k - out.outside_first;
  const int max_last = k - (out.outside_last > 0 ? 1 : 0);
  const int min_last = k - out.outside_last;
  out.condition1_guaranteed = min_first > max_last && min_last >= 1;
  if (!out.condition1_guaranteed)
    out.failures.push_back({1, 0,
                            "|A(v1)| >= " + std::to_string(min_first) + " does not exceed |A(vl)| <= " +
                                std::to_string(max_last) + " (or |A(vl)| may be 0)"});

  if (g.degree(last) > k)
    out.failures.push_back({2, l, "d(vl) = " + std::to_string(g.degree(last)) + " > k"});
  if (out.outside_last == 0) out.failures.push_back({2, l, "vl has no neighbor outside H"});

  std::vector<bool> placed(g.order(), false);
  placed[first] = true;
  for (int i = 1; i + 1 < l; ++i) {
    const Vertex v = order[i];
    int back = 0;
    for (Vertex w : g.neighbors(v))
      if (!in_h[w] || placed[w]) ++back;
    if (back > k - 1)
      out.failures.push_back(
          {3, i + 1, "v" + std::to_string(i + 1) + " has " + std::to_string(back) + " earlier/outside neighbors"});
    placed[v] = true;
  }
  out.holds = out.failures.empty();
  return out;
}

/// Extends a coloring of G - H to G along the order v1..vl: v1 takes the
/// smallest available color whose partner across v1vl is not available at vl,
/// v2..v(l-1) are colored greedily, and vl takes what is left. Throws
/// ConditionsViolated when (1)-(3) fail for the actual residual lists.
inline Coloring extend_coloring(const Graph& g, std::span<const Vertex> order, const ListAssignment& lists,
                                const MatchingAssignment& m, const Coloring& partial) {
  const int k = lists.uniform_size();
  if (k < 0) throw Error(Errc::NonUniformLists, "extension needs lists of one size");
  ResidualLists a = residual_lists(g, order, lists, m, partial);
  const int l = static_cast<int>(order.size());
  if (l < 2) throw ConditionsViolated(1, 0, "H needs at least two vertices");
  const Vertex first = order.front(), last = order.back();
  auto in_h = detail::membership(g, order);

  const int edge = g.edge_id(first, last);
  if (edge < 0) throw ConditionsViolated(1, 0, "v1 and vl are not adjacent");
  const auto& a_first = a.at(first);
  const auto& a_last = a.at(last);
  if (!(a_first.size() > a_last.size() && !a_last.empty()))
    throw ConditionsViolated(1, 0,
                             "|A(v1)| = " + std::to_string(a_first.size()) + ", |A(vl)| = " +
                                 std::to_string(a_last.size()));
  if (g.degree(last) > k) throw ConditionsViolated(2, l, "d(vl) > k");
  bool has_outside = false;
  for (Vertex w : g.neighbors(last)) has_outside = has_outside || !in_h[w];
  if (!has_outside) throw ConditionsViolated(2, l, "vl has no neighbor outside H");
  {
    std::vector<bool> placed(g.order(), false);
    placed[first] = true;
    for (int i = 1; i + 1 < l; ++i) {
      int back = 0;
      for (Vertex w : g.neighbors(order[i]))
        if (!in_h[w] || placed[w]) ++back;
      if (back > k - 1) throw ConditionsViolated(3, i + 1, "too many earlier/outside neighbors");
      placed[order[i]] = true;
    }
  }

  Coloring c = partial;
  for (Color x : a_first) {
    Color p = m.partner(edge, first, x);
    if (p == kUnmatched || !std::binary_search(a_last.begin(), a_last.end(), p)) {
      c[first] = x;
      break;
    }
  }
  for (int i = 1; i < l; ++i) {
    auto options = detail::free_colors(g, lists, m, c, order[i]);
    if (options.empty())
      throw Error(Errc::ConditionsViolated, "internal: no color left at position " + std::to_string(i + 1));
    c[order[i]] = options.front();
  }
  return c;
}

/// Greedy extension to a vertex of degree below |L(v)|.
inline Coloring min_degree_extend(const Graph& g, Vertex v, const ListAssignment& lists,
                                  const MatchingAssignment& m, const Coloring& partial) {
  std::vector<Vertex> h{v};
  residual_lists(g, h, lists, m, partial);
  if (g.degree(v) >= static_cast<int>(lists.list(v).size()))
    throw Error(Errc::InvalidArgument, "vertex degree is not below its list size");
  Coloring c = partial;
  auto options = detail::free_colors(g, lists, m, c, v);
  c[v] = options.front();
  return c;
}

/// Reducible-configuration template: pattern graph H on vertices 0..l-1 with
/// the exact host degree each vertex must have, the number of its neighbors
/// expected outside H, and the designated order v1..vl (pattern indices).
struct ConfigPattern {
  struct PatternVertex {
    int host_degree = 0;
    int outside_neighbors = 0;
  };
  std::string name;
  std::vector<PatternVertex> vertices;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> order;

  int size() const { return static_cast<int>(vertices.size()); }

  Graph graph() const { return Graph(size(), edges); }

  /// Throws InvalidArgument unless degree-in-H + outside = host degree for
  /// every vertex and `order` is a permutation.
  void validate() const {
    Graph h = graph();
    for (int i = 0; i < size(); ++i)
      if (h.degree(i) + vertices[i].outside_neighbors != vertices[i].host_degree)
        throw Error(Errc::InvalidArgument, "pattern vertex " + std::to_string(i) +
                                               ": degree in H plus outside neighbors differs from host degree");
    std::vector<int> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < static_cast<int>(sorted.size()); ++i)
      if (sorted[i] != i || static_cast<int>(sorted.size()) != size())
        throw Error(Errc::InvalidArgument, "order is not a permutation of the pattern vertices");
  }
};

/// Every injective map of the pattern into G that sends pattern edges to host
/// edges and pattern vertex i to a host vertex of degree host_degree(i).
/// Results are sorted lexicographically; entry [i] is the image of pattern
/// vertex i.
inline std::vector<std::vector<Vertex>> find_pattern(const Graph& g, const ConfigPattern& p) {
  std::vector<std::vector<Vertex>> out;
  const int l = p.size();
  if (l == 0 || l > g.order()) return out;
  const Graph h = p.graph();

  // match pattern vertices in BFS order so each new one is constrained by an
  // already-placed neighbor whenever possible
  std::vector<int> seq;
  {
    std::vector<bool> seen(l, false);
    for (int s = 0; s < l; ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      seq.push_back(s);
      for (std::size_t i = seq.size() - 1; i < seq.size(); ++i)
        for (Vertex w : h.neighbors(seq[i]))
          if (!seen[w]) {
            seen[w] = true;
            seq.push_back(w);
          }
    }
  }

  std::vector<Vertex> image(l, -1);
  std::vector<bool> used(g.order(), false);
  auto go = [&](auto&& self, int depth) -> void {
    if (depth == l) {
      out.push_back(image);
      return;
    }
    const int pv = seq[depth];
    for (Vertex x = 0; x < g.order(); ++x) {
      if (used[x] || g.degree(x) != p.vertices[pv].host_degree) continue;
      bool ok = true;
      for (Vertex pw : h.neighbors(pv))
        if (image[pw] >= 0 && !g.adjacent(x, image[pw])) {
          ok = false;
          break;
        }
      if (!ok) continue;
      image[pv] = x;
      used[x] = true;
      self(self, depth + 1);
      used[x] = false;
      image[pv] = -1;
    }
  };
  go(go, 0);
  std::sort(out.begin(), out.end());
  return out;
}

struct PatternOccurrence {
  std::vector<Vertex> image;  // pattern index -> host vertex
  std::vector<Vertex> order;  // host vertices in the order that was checked
  bool reducible = false;
  StructuralCheck check;
};

struct CertifyReport {
  bool reducible = true;  // every occurrence extends (vacuous when none)
  std::vector<PatternOccurrence> occurrences;
};

struct CertifyOptions {
  /// Try every ordering of H (l <= 8) instead of only the designated one.
  bool search_order = false;
};

/// Checks, for every occurrence of the pattern, that H = image satisfies the
/// structural conditions with guaranteed (1) under the designated order (or
/// some order, with search_order). A single-vertex pattern is judged by the
/// minimum-degree argument instead: reducible iff its host degree is below k.
inline CertifyReport certify_reducible(const Graph& g, const ConfigPattern& p, int k,
                                       const CertifyOptions& opt = {}) {
  p.validate();
  CertifyReport report;
  for (auto& image : find_pattern(g, p)) {
    PatternOccurrence occ;
    occ.image = image;
    for (int idx : p.order) occ.order.push_back(image[idx]);
    if (p.size() == 1) {
      occ.reducible = g.degree(image[0]) < k;
    } else {
      occ.check = check_lemma2_structural(g, occ.order, k);
      occ.reducible = occ.check.holds;
      if (!occ.reducible && opt.search_order && p.size() <= 8) {
        std::vector<Vertex> perm = occ.order;
        std::sort(perm.begin(), perm.end());
        do {
          StructuralCheck c = check_lemma2_structural(g, perm, k);
          if (c.holds) {
            occ.order = perm;
            occ.check = c;
            occ.reducible = true;
            break;
          }
        } while (std::next_permutation(perm.begin(), perm.end()));
      }
    }
    report.reducible = report.reducible && occ.reducible;
    report.occurrences.push_back(std::move(occ));
  }
  return report;
}

}  // namespace dpcolor
