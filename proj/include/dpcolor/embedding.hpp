#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

/// Cyclic order of neighbors around each vertex.
using RotationSystem = std::vector<std::vector<Vertex>>;

/// A directed copy of an edge.
struct Dart {
  Vertex tail;
  Vertex head;
};

/// Facial walk. `darts[i]` leaves `vertices[i]`; the walk is closed.
struct Face {
  std::vector<int> darts;
  std::vector<Vertex> vertices;

  /// Number of boundary vertices counted with repetition.
  int length() const { return static_cast<int>(darts.size()); }
};

/// Connected plane graph given by a genus-0 rotation system.
///
/// Darts are numbered by tail vertex and then by position in the tail's
/// rotation. The face successor of dart (u,v) is the dart leaving v that
/// follows (v,u) in v's rotation.
class PlaneEmbedding {
 public:
  const Graph& graph() const { return graph_; }
  const RotationSystem& rotation() const { return rotation_; }
  const std::vector<Face>& faces() const { return faces_; }
  const Face& face(int f) const { return faces_[f]; }
  int face_count() const { return static_cast<int>(faces_.size()); }
  int face_length(int f) const { return faces_[f].length(); }

  int dart_count() const { return static_cast<int>(tail_.size()); }
  Dart dart(int d) const { return {tail_[d], head_[d]}; }
  int reverse(int d) const { return reverse_[d]; }
  int next_in_face(int d) const { return next_[d]; }
  int face_of_dart(int d) const { return face_of_[d]; }
  int edge_of_dart(int d) const { return graph_.edge_id(tail_[d], head_[d]); }

  /// Dart id of (u,v), or -1.
  int dart_id(Vertex u, Vertex v) const {
    for (int d = first_[u]; d < first_[u + 1]; ++d)
      if (head_[d] == v) return d;
    return -1;
  }

  /// Darts leaving v, in rotation order.
  std::span<const int> out_darts(Vertex v) const {
    return {out_.data() + first_[v], out_.data() + first_[v + 1]};
  }

  /// Faces at the corners of v, one per outgoing dart (so a face appears once
  /// per visit of its walk to v). An isolated single vertex sits on face 0.
  std::vector<int> corner_faces(Vertex v) const {
    std::vector<int> out;
    for (int d : out_darts(v)) out.push_back(face_of_[d]);
    if (out.empty() && !faces_.empty()) out.push_back(0);
    return out;
  }

  /// Distinct faces incident to v.
  std::vector<int> incident_faces(Vertex v) const {
    auto c = corner_faces(v);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
  }

  bool on_face(Vertex v, int f) const {
    const auto& vs = faces_[f].vertices;
    if (vs.empty()) return graph_.order() == 1 && v == 0;
    return std::find(vs.begin(), vs.end(), v) != vs.end();
  }

  /// The two faces on either side of an edge (equal across a bridge).
  std::pair<int, int> edge_faces(int edge_id) const {
    const Edge& e = graph_.edge(edge_id);
    int d = dart_id(e.u, e.v);
    return {face_of_[d], face_of_[reverse_[d]]};
  }

  friend PlaneEmbedding trace_faces(const Graph& g, const RotationSystem& rot);

 private:
  Graph graph_;
  RotationSystem rotation_;
  std::vector<int> first_;
  std::vector<Vertex> tail_, head_;
  std::vector<int> out_;
  std::vector<int> reverse_, next_, face_of_;
  std::vector<Face> faces_;
};

namespace detail {

inline void check_rotation(const Graph& g, const RotationSystem& rot) {
  if (static_cast<int>(rot.size()) != g.order())
    throw Error(Errc::InvalidRotation, "rotation has " + std::to_string(rot.size()) +
                                           " entries for " + std::to_string(g.order()) +
                                           " vertices");
  for (Vertex v = 0; v < g.order(); ++v) {
    std::vector<Vertex> sorted = rot[v];
    std::sort(sorted.begin(), sorted.end());
    auto nb = g.neighbors(v);
    if (!std::equal(sorted.begin(), sorted.end(), nb.begin(), nb.end()))
      throw Error(Errc::InvalidRotation,
                  "rotation at vertex " + std::to_string(v) + " is not a permutation of its neighbors");
  }
}

/// Dart successor table for a rotation; shared by trace_faces and the
/// brute-force embedder.
struct DartTables {
  std::vector<int> first;
  std::vector<Vertex> tail, head;
  std::vector<int> reverse, next;

  void build(const Graph& g, const RotationSystem& rot) {
    const int n = g.order();
    first.assign(n + 1, 0);
    for (Vertex v = 0; v < n; ++v) first[v + 1] = first[v] + static_cast<int>(rot[v].size());
    const int darts = first[n];
    tail.resize(darts);
    head.resize(darts);
    for (Vertex v = 0; v < n; ++v)
      for (int i = 0; i < static_cast<int>(rot[v].size()); ++i) {
        tail[first[v] + i] = v;
        head[first[v] + i] = rot[v][i];
      }
    reverse.assign(darts, -1);
    // position of u inside rot[v]
    for (int d = 0; d < darts; ++d) {
      Vertex v = head[d];
      for (int e = first[v]; e < first[v + 1]; ++e)
        if (head[e] == tail[d]) {
          reverse[d] = e;
          break;
        }
    }
    next.resize(darts);
    for (int d = 0; d < darts; ++d) {
      int r = reverse[d];
      Vertex v = tail[r];
      int deg = first[v + 1] - first[v];
      next[d] = first[v] + (r - first[v] + 1) % deg;
    }
  }

  int count_faces(std::vector<char>& seen) const {
    seen.assign(tail.size(), 0);
    int faces = 0;
    for (std::size_t d = 0; d < tail.size(); ++d) {
      if (seen[d]) continue;
      ++faces;
      for (int e = static_cast<int>(d); !seen[e]; e = next[e]) seen[e] = 1;
    }
    return faces;
  }
};

}  // namespace detail

/// Traces the facial walks of a rotation system and checks Euler's formula.
inline PlaneEmbedding trace_faces(const Graph& g, const RotationSystem& rot) {
  detail::check_rotation(g, rot);
  if (g.order() == 0) throw Error(Errc::InvalidArgument, "empty graph");
  if (!is_connected(g)) throw Error(Errc::Disconnected, "plane embeddings require a connected graph");

  PlaneEmbedding emb;
  emb.graph_ = g;
  emb.rotation_ = rot;
  detail::DartTables t;
  t.build(g, rot);
  emb.first_ = t.first;
  emb.tail_ = t.tail;
  emb.head_ = t.head;
  emb.reverse_ = t.reverse;
  emb.next_ = t.next;
  emb.out_.resize(t.tail.size());
  std::iota(emb.out_.begin(), emb.out_.end(), 0);

  emb.face_of_.assign(t.tail.size(), -1);
  for (int d = 0; d < static_cast<int>(t.tail.size()); ++d) {
    if (emb.face_of_[d] >= 0) continue;
    Face f;
    const int id = static_cast<int>(emb.faces_.size());
    for (int e = d; emb.face_of_[e] < 0; e = t.next[e]) {
      emb.face_of_[e] = id;
      f.darts.push_back(e);
      f.vertices.push_back(t.tail[e]);
    }
    emb.faces_.push_back(std::move(f));
  }
  if (g.size() == 0) emb.faces_.push_back(Face{});  // single vertex: one empty face

  const int euler = g.order() - g.size() + emb.face_count();
  if (euler != 2)
    throw Error(Errc::NotGenusZero,
                "V - E + F = " + std::to_string(g.order()) + " - " + std::to_string(g.size()) +
                    " + " + std::to_string(emb.face_count()) + " = " + std::to_string(euler));
  return emb;
}

/// For each boundary edge of face f (in walk order): the edge id and the face
/// on the other side of it.
inline std::vector<std::pair<int, int>> face_adjacency(const PlaneEmbedding& emb, int f) {
  std::vector<std::pair<int, int>> out;
  for (int d : emb.face(f).darts) out.emplace_back(emb.edge_of_dart(d), emb.face_of_dart(emb.reverse(d)));
  return out;
}

enum class VertexClass { Poor, SemiRich, Rich };

inline const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::Poor: return "poor";
    case VertexClass::SemiRich: return "semi-rich";
    case VertexClass::Rich: return "rich";
  }
  return "?";
}

/// Number of distinct 3-faces (other than f) that contain v and share an edge
/// with f.
inline int triangles_at_vertex_adjacent_to(const PlaneEmbedding& emb, Vertex v, int f) {
  std::set<int> adjacent;
  for (auto [edge, g] : face_adjacency(emb, f))
    if (g != f && emb.face_length(g) == 3) adjacent.insert(g);
  int count = 0;
  for (int g : emb.incident_faces(v))
    if (adjacent.count(g)) ++count;
  return count;
}

/// Poor / semi-rich / rich status of a 4+-vertex v with respect to a face f
/// it lies on: two or more, exactly one, or no 3-faces at v adjacent to f.
inline VertexClass classify_vertex(const PlaneEmbedding& emb, Vertex v, int f) {
  if (v < 0 || v >= emb.graph().order())
    throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v));
  if (!emb.on_face(v, f))
    throw Error(Errc::NotOnFace, "vertex " + std::to_string(v) + " is not on face " + std::to_string(f));
  if (emb.graph().degree(v) < 4)
    throw Error(Errc::InvalidArgument, "vertex " + std::to_string(v) + " has degree below 4");
  int t = triangles_at_vertex_adjacent_to(emb, v, f);
  return t >= 2 ? VertexClass::Poor : t == 1 ? VertexClass::SemiRich : VertexClass::Rich;
}

/// Exhaustive search over rotation systems for a genus-0 one. Each vertex's
/// cyclic orders are enumerated with its first neighbor pinned, so the search
/// space is the product of (d(v)-1)!.
inline PlaneEmbedding brute_force_embed(const Graph& g, int max_vertices = 9,
                                        std::uint64_t max_rotations = 50'000'000) {
  if (g.order() > max_vertices)
    throw Error(Errc::NonPlanarOrTooLarge,
                std::to_string(g.order()) + " vertices exceed the brute-force bound " +
                    std::to_string(max_vertices));
  if (g.order() == 0) throw Error(Errc::InvalidArgument, "empty graph");
  if (!is_connected(g)) throw Error(Errc::Disconnected, "plane embeddings require a connected graph");

  // Euler: a connected graph is planar iff some rotation has E - V + 2 faces.
  // Cheap necessary condition first.
  if (g.order() >= 3 && g.size() > 3 * g.order() - 6)
    throw Error(Errc::NonPlanarOrTooLarge, "too many edges to be planar");
  const int target = g.size() - g.order() + 2;

  RotationSystem rot(g.order());
  std::uint64_t total = 1;
  for (Vertex v = 0; v < g.order(); ++v) {
    auto nb = g.neighbors(v);
    rot[v].assign(nb.begin(), nb.end());
    for (int i = 2; i < g.degree(v); ++i) {
      if (total > max_rotations / static_cast<std::uint64_t>(i))
        throw Error(Errc::NonPlanarOrTooLarge, "rotation search space exceeds the limit");
      total *= static_cast<std::uint64_t>(i);
    }
  }

  detail::DartTables t;
  std::vector<char> seen;
  while (true) {
    t.build(g, rot);
    if (t.count_faces(seen) == target || g.size() == 0) return trace_faces(g, rot);
    // odometer over vertices; tails after the pinned first neighbor permute
    Vertex v = 0;
    for (; v < g.order(); ++v) {
      if (rot[v].size() > 2 && std::next_permutation(rot[v].begin() + 1, rot[v].end())) break;
    }
    if (v == g.order()) break;
  }
  throw Error(Errc::NonPlanarOrTooLarge, "no rotation system satisfies Euler's formula");
}

/// Integer point for straight-line drawings.
struct Point {
  std::int64_t x;
  std::int64_t y;
};

/// Rotation system induced by a straight-line drawing: neighbors sorted
/// counter-clockwise by direction from the vertex. The drawing must be
/// crossing-free for the result to be a plane embedding.
inline RotationSystem rotation_from_coordinates(const Graph& g, std::span<const Point> pts) {
  if (static_cast<int>(pts.size()) != g.order())
    throw Error(Errc::InvalidArgument, "one point per vertex is required");
  RotationSystem rot(g.order());
  for (Vertex v = 0; v < g.order(); ++v) {
    auto nb = g.neighbors(v);
    rot[v].assign(nb.begin(), nb.end());
    const Point o = pts[v];
    auto half = [&](Vertex w) {
      std::int64_t dx = pts[w].x - o.x, dy = pts[w].y - o.y;
      return (dy > 0 || (dy == 0 && dx > 0)) ? 0 : 1;
    };
    std::sort(rot[v].begin(), rot[v].end(), [&](Vertex a, Vertex b) {
      int ha = half(a), hb = half(b);
      if (ha != hb) return ha < hb;
      std::int64_t ax = pts[a].x - o.x, ay = pts[a].y - o.y;
      std::int64_t bx = pts[b].x - o.x, by = pts[b].y - o.y;
      return ax * by - ay * bx > 0;
    });
  }
  return rot;
}

inline PlaneEmbedding embedding_from_coordinates(const Graph& g, std::span<const Point> pts) {
  return trace_faces(g, rotation_from_coordinates(g, pts));
}

}  // namespace dpcolor
