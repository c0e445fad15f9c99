#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "dpcolor/cycles.hpp"
#include "dpcolor/embedding.hpp"
#include "dpcolor/reducibility.hpp"

namespace dpcolor {

/// Exact charge. Denominators stay small (products of face/corner counts).
using Charge = boost::rational<std::int64_t>;

/// "p/q" with q > 0; integers print as "p/1".
inline std::string to_fraction(const Charge& c) {
  return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

/// "p" for integers, "p/q" otherwise.
inline std::string to_short_fraction(const Charge& c) {
  if (c.denominator() == 1) return std::to_string(c.numerator());
  return to_fraction(c);
}

/// A vertex or a face of the embedding.
struct Element {
  enum class Kind { Vertex, Face };
  Kind kind = Kind::Vertex;
  int index = 0;

  static Element vertex(int v) { return {Kind::Vertex, v}; }
  static Element face(int f) { return {Kind::Face, f}; }

  std::string str() const { return (kind == Kind::Vertex ? "v" : "f") + std::to_string(index); }

  friend bool operator==(const Element&, const Element&) = default;
};

struct Transfer {
  int phase = 0;
  std::string rule;
  Element source;
  Element sink;
  Charge amount;
};

/// Charge of every vertex and face plus the log of every move made.
struct ChargeState {
  std::vector<Charge> vertex;
  std::vector<Charge> face;
  std::vector<Transfer> log;

  Charge& at(Element e) { return e.kind == Element::Kind::Vertex ? vertex[e.index] : face[e.index]; }
  const Charge& at(Element e) const {
    return e.kind == Element::Kind::Vertex ? vertex[e.index] : face[e.index];
  }

  Charge total() const {
    Charge s = 0;
    for (const auto& c : vertex) s += c;
    for (const auto& c : face) s += c;
    return s;
  }

  /// Moves a non-negative amount; zero amounts and self-moves are dropped.
  void move(int phase, const std::string& rule, Element from, Element to, const Charge& amount) {
    if (amount < 0) throw Error(Errc::ConservationViolated, "negative transfer under " + rule);
    if (amount.numerator() == 0 || from == to) return;
    at(from) -= amount;
    at(to) += amount;
    log.push_back({phase, rule, from, to, amount});
  }
};

/// mu(x) = d(x) - 4 for every vertex and face; the total must be -8.
inline ChargeState initial_charges(const PlaneEmbedding& emb) {
  ChargeState s;
  const Graph& g = emb.graph();
  for (Vertex v = 0; v < g.order(); ++v) s.vertex.emplace_back(g.degree(v) - 4);
  for (int f = 0; f < emb.face_count(); ++f) s.face.emplace_back(emb.face_length(f) - 4);
  if (s.total() != Charge(-8))
    throw Error(Errc::ChargeSumMismatch, "initial charges sum to " + to_short_fraction(s.total()));
  return s;
}

/// Two faces f (10+) and f' (a 10-face on ten 3-vertices) sharing a
/// (3,3)-edge whose ends both start a (3,4+,3+)-path of f with the side
/// condition on the second vertex. f is good to f'.
struct GoodPair {
  int good_face;
  int poor_face;
  int edge;
};

/// Per-vertex and per-face roles used by the rules.
struct RoleTables {
  /// 3-vertex incident to a 3-face.
  std::vector<bool> triangular;
  /// For 4+-vertices: status toward each distinct incident 10+-face.
  std::vector<std::vector<std::pair<int, VertexClass>>> big_face_class;
  /// Semi-rich to some 10+-face and rich to another.
  std::vector<bool> special;
  /// 5-face on five 3-vertices adjacent to exactly two 5-faces.
  std::vector<bool> bad_five;
  std::vector<GoodPair> good_pairs;
  /// Matches and ambiguities worth a human look.
  std::vector<std::string> review;

  std::optional<VertexClass> class_on(Vertex v, int f) const {
    for (auto [face, c] : big_face_class[v])
      if (face == f) return c;
    return std::nullopt;
  }
};

namespace detail {

/// Adjacent faces of f across its edges, with multiplicity, excluding f.
inline std::vector<int> neighbor_faces(const PlaneEmbedding& emb, int f) {
  std::vector<int> out;
  for (auto [edge, g] : face_adjacency(emb, f))
    if (g != f) out.push_back(g);
  return out;
}

inline int count_adjacent_of_length(const PlaneEmbedding& emb, int f, int length) {
  int c = 0;
  for (int g : neighbor_faces(emb, f)) c += emb.face_length(g) == length ? 1 : 0;
  return c;
}

inline bool faces_adjacent(const PlaneEmbedding& emb, int f, int g) {
  for (int h : neighbor_faces(emb, f))
    if (h == g) return true;
  return false;
}

/// (3,3,4+)- or (3,3,3,3,4+)-face: length 3 or 5 with exactly one 4+-vertex.
inline bool is_one_big_vertex_face(const PlaneEmbedding& emb, int g) {
  const int len = emb.face_length(g);
  if (len != 3 && len != 5) return false;
  int big = 0, three = 0;
  for (Vertex v : emb.face(g).vertices) {
    int d = emb.graph().degree(v);
    big += d >= 4 ? 1 : 0;
    three += d == 3 ? 1 : 0;
  }
  return big == 1 && three == len - 1;
}

}  // namespace detail

inline RoleTables classify_face_roles(const PlaneEmbedding& emb) {
  const Graph& g = emb.graph();
  RoleTables r;
  r.triangular.assign(g.order(), false);
  r.big_face_class.assign(g.order(), {});
  r.special.assign(g.order(), false);
  r.bad_five.assign(emb.face_count(), false);

  for (Vertex v = 0; v < g.order(); ++v) {
    const auto faces = emb.incident_faces(v);
    if (g.degree(v) == 3)
      for (int f : faces)
        if (emb.face_length(f) == 3) r.triangular[v] = true;
    if (g.degree(v) >= 4) {
      bool semi = false, rich = false;
      for (int f : faces) {
        if (emb.face_length(f) < 10) continue;
        VertexClass c = classify_vertex(emb, v, f);
        r.big_face_class[v].emplace_back(f, c);
        semi = semi || c == VertexClass::SemiRich;
        rich = rich || c == VertexClass::Rich;
      }
      r.special[v] = semi && rich;
    }
  }

  for (int f = 0; f < emb.face_count(); ++f) {
    if (emb.face_length(f) != 5) continue;
    bool all_three = true;
    for (Vertex v : emb.face(f).vertices) all_three = all_three && g.degree(v) == 3;
    r.bad_five[f] = all_three && detail::count_adjacent_of_length(emb, f, 5) == 2;
  }

  std::set<std::pair<int, int>> seen_pairs;
  for (int f = 0; f < emb.face_count(); ++f) {
    const Face& face = emb.face(f);
    const int len = face.length();
    if (len < 10) continue;
    auto at = [&](int i) { return face.vertices[((i % len) + len) % len]; };
    for (int i = 0; i < len; ++i) {
      const Vertex x = at(i), y = at(i + 1);
      if (g.degree(x) != 3 || g.degree(y) != 3) continue;
      const int poor = emb.face_of_dart(emb.reverse(face.darts[i]));
      if (poor == f || emb.face_length(poor) != 10) continue;
      bool all_three = true;
      for (Vertex v : emb.face(poor).vertices) all_three = all_three && g.degree(v) == 3;
      if (!all_three) continue;
      // (3, 4+, 3+) paths of f leaving the shared edge at either end
      auto end_ok = [&](Vertex second, Vertex third) {
        if (g.degree(second) < 4 || g.degree(third) < 3) return false;
        for (int h : emb.incident_faces(second))
          if (h != f && h != poor && detail::is_one_big_vertex_face(emb, h) &&
              detail::faces_adjacent(emb, h, f) && detail::faces_adjacent(emb, h, poor))
            return true;
        return false;
      };
      if (!end_ok(at(i - 1), at(i - 2)) || !end_ok(at(i + 2), at(i + 3))) continue;
      if (!seen_pairs.insert({f, poor}).second) continue;
      const int edge = emb.edge_of_dart(face.darts[i]);
      r.good_pairs.push_back({f, poor, edge});
      r.review.push_back("good/poor pair f" + std::to_string(f) + " -> f" + std::to_string(poor) +
                         " across edge " + std::to_string(g.edge(edge).u) + "-" +
                         std::to_string(g.edge(edge).v) + " (only the (3,4+,3+) prefix was checked)");
    }
  }
  return r;
}

/// t[i] for a 10+-face: maximal runs of boundary edges whose other side is a
/// 5--face give paths with i vertices; t[1] counts boundary positions on no
/// such path. A face whose every edge qualifies is one path with i = d(f).
/// Counts are over walk positions, so sum i*t[i] = d(f).
inline std::map<int, int> path_stats(const PlaneEmbedding& emb, int f) {
  const Face& face = emb.face(f);
  const int len = face.length();
  if (len < 10) throw Error(Errc::InvalidArgument, "path statistics are defined for 10+-faces");
  std::vector<bool> low(len);
  for (int i = 0; i < len; ++i) {
    int other = emb.face_of_dart(emb.reverse(face.darts[i]));
    low[i] = other != f && emb.face_length(other) <= 5;
  }
  std::map<int, int> t;
  int start = -1;
  for (int i = 0; i < len; ++i)
    if (!low[i]) {
      start = i;
      break;
    }
  if (start < 0) {
    t[len] = 1;
    return t;
  }
  // walk once around starting just after a non-qualifying edge
  int covered = 0;
  int run = 0;
  for (int step = 1; step <= len; ++step) {
    int i = (start + step) % len;
    if (low[i]) {
      ++run;
    } else {
      if (run > 0) {
        t[run + 1] += 1;
        covered += run + 1;
      }
      run = 0;
    }
  }
  if (len - covered > 0) t[1] += len - covered;
  int sum = 0;
  for (auto [i, c] : t) sum += i * c;
  if (sum != len) throw Error(Errc::InvalidArgument, "internal: path statistics do not cover the face");
  return t;
}

/// Local statistics of a face used by the budget formulas.
struct FaceStats {
  int length = 0;
  int s3 = 0;  // incident 3-vertices (walk positions)
  int r5 = 0;  // adjacent 5-faces (per shared edge)
  int b5 = 0;  // adjacent bad 5-faces (per shared edge)
  int s = 0;   // distinct semi-rich 4-vertices and 5+-vertices on the face
  std::map<int, int> t;  // 10+-faces only
  int x = 0;             // 2, 1, 0 for lengths 10, 11, 12+
};

inline int budget_slack(int d_f) { return d_f >= 12 ? 0 : d_f == 11 ? 1 : 2; }

inline FaceStats face_stats(const PlaneEmbedding& emb, const RoleTables& roles, int f) {
  const Graph& g = emb.graph();
  FaceStats st;
  st.length = emb.face_length(f);
  for (Vertex v : emb.face(f).vertices) st.s3 += g.degree(v) == 3 ? 1 : 0;
  for (int h : detail::neighbor_faces(emb, f)) {
    if (emb.face_length(h) != 5) continue;
    ++st.r5;
    st.b5 += roles.bad_five[h] ? 1 : 0;
  }
  std::set<Vertex> counted;
  for (Vertex v : emb.face(f).vertices) {
    if (counted.count(v)) continue;
    if (g.degree(v) >= 5 || (g.degree(v) == 4 && classify_vertex(emb, v, f) == VertexClass::SemiRich)) {
      counted.insert(v);
      ++st.s;
    }
  }
  if (st.length >= 10) {
    st.t = path_stats(emb, f);
    st.x = budget_slack(st.length);
  }
  return st;
}

namespace detail {

inline void check_t_vector(const std::map<int, int>& t, int d_f) {
  long sum = 0;
  for (auto [i, c] : t) {
    if (i < 1 || c < 0) throw Error(Errc::InvalidArgument, "t-vector entries must be t[i] >= 0 with i >= 1");
    sum += static_cast<long>(i) * c;
  }
  if (sum != d_f) throw Error(Errc::InvalidArgument, "sum of i*t[i] differs from d(f)");
}

}  // namespace detail

/// Lower bound on what a 10+-face can afford to give:
///   (1/3) sum i t_i + (2/3) sum_{i>=2} t_i + (1/3) t_1
///     + (1/3) sum_{i>=3} (i-2) t_i - x/3,
/// evaluated term by term and checked against its closed form (2/3) d - x/3.
inline Charge lemma5_bound(const std::map<int, int>& t, int d_f) {
  if (d_f < 10) throw Error(Errc::InvalidArgument, "defined for faces of length at least 10");
  detail::check_t_vector(t, d_f);
  const int x = budget_slack(d_f);
  Charge weighted = 0, paths = 0, singles = 0, long_excess = 0;
  for (auto [i, c] : t) {
    weighted += Charge(i) * c;
    if (i >= 2) paths += c;
    if (i == 1) singles += c;
    if (i >= 3) long_excess += Charge(i - 2) * c;
  }
  const Charge value =
      weighted / 3 + paths * 2 / 3 + singles / 3 + long_excess / 3 - Charge(x, 3);
  const Charge closed = Charge(2 * d_f, 3) - Charge(x, 3);
  if (value != closed)
    throw Error(Errc::InvalidArgument, "internal: long form " + to_fraction(value) + " != closed form " +
                                           to_fraction(closed));
  return value;
}

/// Upper bound on what a 10+-face needs to send:
///   (1/3) sum i t_i + (2/3) sum_{i>=2} t_i + (1/6) sum_{i>=6} (i-5) t_i
///     + (1/6) sum_{i>=3} t_i.
inline Charge lemma6_bound(const std::map<int, int>& t) {
  Charge weighted = 0, paths = 0, very_long = 0, long_paths = 0;
  for (auto [i, c] : t) {
    if (i < 1 || c < 0) throw Error(Errc::InvalidArgument, "t-vector entries must be t[i] >= 0 with i >= 1");
    weighted += Charge(i) * c;
    if (i >= 2) paths += c;
    if (i >= 6) very_long += Charge(i - 5) * c;
    if (i >= 3) long_paths += c;
  }
  return weighted / 3 + paths * 2 / 3 + very_long / 6 + long_paths / 6;
}

struct DischargeOptions {
  /// Refuse to run when the graph has a cycle length the variant forbids.
  bool strict = false;
};

struct PhaseSummary {
  int phase = 0;
  std::string name;
  std::size_t transfers = 0;
  Charge total;
};

struct DischargeResult {
  Variant variant = Variant::A;
  bool hypotheses_hold = true;  // cycle precondition of the variant
  ChargeState initial;
  ChargeState final_state;
  std::vector<PhaseSummary> phases;
  RoleTables roles;
  std::vector<std::string> notes;
};

namespace detail {

class RuleEngine {
 public:
  RuleEngine(const PlaneEmbedding& emb, const RoleTables& roles, ChargeState& state,
             std::vector<std::string>& notes)
      : emb_(emb), g_(emb.graph()), roles_(roles), s_(state), notes_(notes) {}

  // R1: 3-faces take 1/3 from each adjacent 5+-face; 5+-faces take 1/5 from
  // each incident 5+-vertex (per corner).
  void r1(int phase) {
    for (int t = 0; t < emb_.face_count(); ++t) {
      if (emb_.face_length(t) != 3) continue;
      for (int h : neighbor_faces(emb_, t))
        if (emb_.face_length(h) >= 5) s_.move(phase, "R1", Element::face(h), Element::face(t), Charge(1, 3));
    }
    for (int f = 0; f < emb_.face_count(); ++f) {
      if (emb_.face_length(f) < 5) continue;
      for (Vertex v : emb_.face(f).vertices)
        if (g_.degree(v) >= 5) s_.move(phase, "R1", Element::vertex(v), Element::face(f), Charge(1, 5));
    }
  }

  // R2: 10+-faces take 1/6 from each special vertex semi-rich to them and
  // give 1/3 to each rich 4-vertex on a 3-face.
  void r2(int phase) {
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (g_.degree(v) < 4) continue;
      bool on_triangle = false;
      for (int f : emb_.incident_faces(v)) on_triangle = on_triangle || emb_.face_length(f) == 3;
      for (auto [f, c] : roles_.big_face_class[v]) {
        if (roles_.special[v] && c == VertexClass::SemiRich)
          s_.move(phase, "R2", Element::vertex(v), Element::face(f), Charge(1, 6));
        if (g_.degree(v) == 4 && c == VertexClass::Rich && on_triangle)
          s_.move(phase, "R2", Element::face(f), Element::vertex(v), Charge(1, 3));
      }
    }
  }

  // R3: good face gives 1/6 to the poor face.
  void r3(int phase) {
    for (const GoodPair& p : roles_.good_pairs)
      s_.move(phase, "R3", Element::face(p.good_face), Element::face(p.poor_face), Charge(1, 6));
  }

  // R4a part 1: gifts of 1/3 to 5-faces sharing a (3,3)- or (3,4+)-edge with a
  // 3-face.
  void r4a_gifts(int phase) {
    for (int f = 0; f < emb_.face_count(); ++f) {
      if (emb_.face_length(f) != 5) continue;
      const Face& face = emb_.face(f);
      bool shares_33 = false;
      for (int i = 0; i < 5; ++i) {
        const int d = face.darts[i];
        const int t = emb_.face_of_dart(emb_.reverse(d));
        if (t == f || emb_.face_length(t) != 3) continue;
        const Vertex x = emb_.dart(d).tail, y = emb_.dart(d).head;
        const int dx = g_.degree(x), dy = g_.degree(y);
        if (dx == 3 && dy == 3) {
          shares_33 = true;
        } else if ((dx == 3) != (dy == 3) && std::max(dx, dy) >= 4 && std::min(dx, dy) == 3) {
          const Vertex z = dx == 3 ? x : y;
          std::vector<int> corners = emb_.corner_faces(z);
          auto drop = [&](int face_id) {
            auto it = std::find(corners.begin(), corners.end(), face_id);
            if (it != corners.end()) corners.erase(it);
          };
          drop(f);
          drop(t);
          if (corners.size() != 1) continue;
          const int h = corners.front();
          if (h == f || emb_.face_length(h) < 10) continue;
          notes_.push_back("R4a: 5-face f" + std::to_string(f) + " shares (3,4+)-edge " + std::to_string(x) + "-" +
                           std::to_string(y) + " with 3-face f" + std::to_string(t) + "; donor is f" +
                           std::to_string(h) + ", the remaining face at 3-vertex v" + std::to_string(z));
          s_.move(phase, "R4a", Element::face(h), Element::face(f), Charge(1, 3));
        }
      }
      if (shares_33)
        for (int h : neighbor_faces(emb_, f))
          if (emb_.face_length(h) >= 10) s_.move(phase, "R4a", Element::face(h), Element::face(f), Charge(1, 3));
    }
  }

  // R4a part 2: each 5-face sends 1 to every incident triangular 3-vertex.
  // (Its 1/3 to an adjacent 3-face is the R1 transfer.)
  void r4a_triangular(int phase) {
    for (int f = 0; f < emb_.face_count(); ++f) {
      if (emb_.face_length(f) != 5) continue;
      for (Vertex v : emb_.face(f).vertices)
        if (roles_.triangular[v]) s_.move(phase, "R4a", Element::face(f), Element::vertex(v), Charge(1));
    }
  }

  // R4a part 3: each 5-face splits its positive charge evenly over adjacent
  // 10-faces.
  void r4a_remaining(int phase) {
    for (int f = 0; f < emb_.face_count(); ++f) {
      if (emb_.face_length(f) != 5 || s_.face[f] <= 0) continue;
      std::vector<int> tens;
      for (int h : neighbor_faces(emb_, f))
        if (emb_.face_length(h) == 10) tens.push_back(h);
      if (tens.empty()) continue;
      const Charge share = s_.face[f] / static_cast<std::int64_t>(tens.size());
      for (int h : tens) s_.move(phase, "R4a", Element::face(f), Element::face(h), share);
    }
  }

  // R4a part 4: each 3-vertex draws what it still lacks evenly from its
  // incident 6+-faces (per corner).
  void r4a_needed(int phase) {
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (g_.degree(v) != 3 || s_.vertex[v] >= 0) continue;
      std::vector<int> donors;
      for (int f : emb_.corner_faces(v))
        if (emb_.face_length(f) >= 6) donors.push_back(f);
      if (donors.empty()) continue;
      const Charge share = -s_.vertex[v] / static_cast<std::int64_t>(donors.size());
      for (int f : donors) s_.move(phase, "R4a", Element::face(f), Element::vertex(v), share);
    }
  }

  // R4b part 1: each 3-vertex gets 1 split evenly over its incident 5+-faces
  // (per corner).
  void r4b_vertices(int phase) {
    for (Vertex v = 0; v < g_.order(); ++v) {
      if (g_.degree(v) != 3) continue;
      std::vector<int> donors;
      for (int f : emb_.corner_faces(v))
        if (emb_.face_length(f) >= 5) donors.push_back(f);
      if (donors.empty()) continue;
      const Charge share = Charge(1) / static_cast<std::int64_t>(donors.size());
      for (int f : donors) s_.move(phase, "R4b", Element::face(f), Element::vertex(v), share);
    }
  }

  // R4b part 2: each 5-face gets 1/6 from each adjacent 7+-face.
  void r4b_big_to_five(int phase) {
    for (int f = 0; f < emb_.face_count(); ++f) {
      if (emb_.face_length(f) != 5) continue;
      for (int h : neighbor_faces(emb_, f))
        if (emb_.face_length(h) >= 7) s_.move(phase, "R4b", Element::face(h), Element::face(f), Charge(1, 6));
    }
  }

  // R4b part 3: each bad 5-face gets 1/12 from each adjacent 5-face.
  void r4b_bad(int phase) {
    for (int f = 0; f < emb_.face_count(); ++f) {
      if (!roles_.bad_five[f]) continue;
      for (int h : neighbor_faces(emb_, f))
        if (emb_.face_length(h) == 5) s_.move(phase, "R4b", Element::face(h), Element::face(f), Charge(1, 12));
    }
  }

  // R4b part 4: one synchronous pass; each 5-face with positive charge splits
  // it evenly over its adjacent 5-faces, amounts fixed before any move.
  void r4b_surplus(int phase) {
    std::vector<std::pair<int, Charge>> plan;
    for (int f = 0; f < emb_.face_count(); ++f)
      if (emb_.face_length(f) == 5 && s_.face[f] > 0) plan.emplace_back(f, s_.face[f]);
    for (auto [f, surplus] : plan) {
      std::vector<int> fives;
      for (int h : neighbor_faces(emb_, f))
        if (emb_.face_length(h) == 5) fives.push_back(h);
      if (fives.empty()) continue;
      const Charge share = surplus / static_cast<std::int64_t>(fives.size());
      for (int h : fives) s_.move(phase, "R4b", Element::face(f), Element::face(h), share);
    }
  }

 private:
  const PlaneEmbedding& emb_;
  const Graph& g_;
  const RoleTables& roles_;
  ChargeState& s_;
  std::vector<std::string>& notes_;
};

}  // namespace detail

/// Runs the discharging rules in a fixed phase order and checks after every
/// phase that the total is still -8.
///
/// Variant A:  R1, R2, R4a gifts to 5-faces, 5-face -> triangular 3-vertex,
///             5-face remainder -> 10-faces, 3-vertex top-up from 6+-faces, R3.
/// Variant B:  R1, R2, 3-vertex <- 5+-faces, 7+-face -> 5-face,
///             5-face -> bad 5-face, synchronous 5-face surplus pass, R3.
inline DischargeResult apply_rules(const PlaneEmbedding& emb, Variant variant, const DischargeOptions& opt = {}) {
  DischargeResult out;
  out.variant = variant;
  out.hypotheses_hold = satisfies(cycle_spectrum(emb.graph(), 9), variant);
  if (opt.strict && !out.hypotheses_hold)
    throw Error(Errc::PreconditionFailed, "graph has a cycle length in " + variant_label(variant));
  if (!out.hypotheses_hold)
    out.notes.push_back("lab mode: graph has a cycle length in " + variant_label(variant));

  out.initial = initial_charges(emb);
  out.roles = classify_face_roles(emb);
  for (const auto& r : out.roles.review) out.notes.push_back(r);
  for (int f = 0; f < emb.face_count(); ++f) {
    std::map<int, int> seen;
    for (auto [edge, h] : face_adjacency(emb, f)) ++seen[h];
    for (auto [h, c] : seen) {
      if (h == f) out.notes.push_back("face f" + std::to_string(f) + " borders itself across a bridge");
      else if (c > 1 && f < h)
        out.notes.push_back("faces f" + std::to_string(f) + " and f" + std::to_string(h) + " share " +
                            std::to_string(c) + " edges; adjacency counted with multiplicity");
    }
  }

  ChargeState state = out.initial;
  const Charge expected = state.total();
  detail::RuleEngine engine(emb, out.roles, state, out.notes);

  auto run = [&](int phase, const std::string& name, auto&& step) {
    const std::size_t before = state.log.size();
    step(phase);
    PhaseSummary p{phase, name, state.log.size() - before, state.total()};
    if (p.total != expected)
      throw Error(Errc::ConservationViolated, "phase " + std::to_string(phase) + " total " + to_fraction(p.total));
    out.phases.push_back(p);
  };

  run(1, "R1", [&](int ph) { engine.r1(ph); });
  run(2, "R2", [&](int ph) { engine.r2(ph); });
  if (variant == Variant::A) {
    run(3, "R4a: 10+-faces to 5-faces beside 3-faces", [&](int ph) { engine.r4a_gifts(ph); });
    run(4, "R4a: 5-faces to triangular 3-vertices", [&](int ph) { engine.r4a_triangular(ph); });
    run(5, "R4a: 5-face remainder to 10-faces", [&](int ph) { engine.r4a_remaining(ph); });
    run(6, "R4a: 3-vertices from 6+-faces", [&](int ph) { engine.r4a_needed(ph); });
  } else {
    run(3, "R4b: 3-vertices from 5+-faces", [&](int ph) { engine.r4b_vertices(ph); });
    run(4, "R4b: 7+-faces to 5-faces", [&](int ph) { engine.r4b_big_to_five(ph); });
    run(5, "R4b: 5-faces to bad 5-faces", [&](int ph) { engine.r4b_bad(ph); });
    run(6, "R4b: 5-face surplus to 5-faces", [&](int ph) { engine.r4b_surplus(ph); });
  }
  run(7, "R3", [&](int ph) { engine.r3(ph); });

  out.final_state = std::move(state);
  return out;
}

/// Everything a minimal counterexample would have to avoid, checked on one
/// embedding. Because the total charge is -8, some element always ends
/// negative; a counterexample is ruled out once every such element is
/// explained by the proof, so the report lists negatives next to the
/// structural escape hatches (forbidden cycles, low degree, reducible
/// patterns).
struct AuditReport {
  Variant variant = Variant::A;
  CycleSpectrum spectrum;
  std::vector<int> forbidden_present;
  std::vector<Vertex> low_degree;  // vertices of degree < 3
  struct PatternHit {
    std::string name;
    std::size_t occurrences = 0;
    bool reducible = true;
  };
  std::vector<PatternHit> patterns;
  DischargeResult discharge;
  std::vector<Element> negative;
  std::vector<std::string> findings;
};

inline AuditReport audit(const PlaneEmbedding& emb, Variant variant, const std::vector<ConfigPattern>& patterns,
                         int k = 3) {
  AuditReport rep;
  rep.variant = variant;
  const Graph& g = emb.graph();
  rep.spectrum = cycle_spectrum(g, 9);
  for (int len : forbidden_lengths(variant))
    if (rep.spectrum.contains(len)) {
      rep.forbidden_present.push_back(len);
      rep.findings.push_back("forbidden cycle present: length " + std::to_string(len));
    }
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) < 3) {
      rep.low_degree.push_back(v);
      rep.findings.push_back("vertex v" + std::to_string(v) + " has degree " + std::to_string(g.degree(v)) +
                             " < 3");
    }
  for (const auto& p : patterns) {
    CertifyReport c = certify_reducible(g, p, k);
    rep.patterns.push_back({p.name, c.occurrences.size(), c.reducible});
    if (!c.occurrences.empty())
      rep.findings.push_back("pattern '" + p.name + "' occurs " + std::to_string(c.occurrences.size()) +
                             " time(s)" + (c.reducible ? " (reducible)" : " (not certified)"));
  }
  rep.discharge = apply_rules(emb, variant);
  const ChargeState& fin = rep.discharge.final_state;
  for (Vertex v = 0; v < g.order(); ++v)
    if (fin.vertex[v] < 0) {
      rep.negative.push_back(Element::vertex(v));
      rep.findings.push_back("negative final charge at v" + std::to_string(v) + " = " +
                             to_short_fraction(fin.vertex[v]));
    }
  for (int f = 0; f < emb.face_count(); ++f)
    if (fin.face[f] < 0) {
      rep.negative.push_back(Element::face(f));
      rep.findings.push_back("negative final charge at f" + std::to_string(f) + " (length " +
                             std::to_string(emb.face_length(f)) + ") = " + to_short_fraction(fin.face[f]));
    }
  return rep;
}

}  // namespace dpcolor
