#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dpcolor/discharging.hpp"
#include "dpcolor/dp_core.hpp"
#include "dpcolor/embedding.hpp"
#include "dpcolor/graph.hpp"
#include "dpcolor/graph6.hpp"
#include "dpcolor/reducibility.hpp"
#include "dpcolor/solver.hpp"

namespace dpcolor::io {

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::string_view strip_comment(std::string_view s) {
  auto hash = s.find('#');
  return trim(hash == std::string_view::npos ? s : s.substr(0, hash));
}

inline std::vector<std::string> tokens(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

inline bool parse_int(std::string_view s, int& value) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && p == s.data() + s.size();
}

inline int need_int(std::string_view s, int line) {
  int v = 0;
  if (!parse_int(trim(s), v))
    throw Error(Errc::Parse, "line " + std::to_string(line) + ": expected an integer, got '" + std::string(s) + "'");
  return v;
}

inline std::string slurp(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace detail

/// Graph read from an edge list together with the original vertex labels.
struct LabeledGraph {
  Graph graph;
  std::vector<std::string> labels;
};

/// "u v" per line, '#' starts a comment, a lone label adds an isolated vertex.
/// When every label is a non-negative integer the integers are the vertex ids
/// (n = largest + 1); otherwise labels are numbered in order of appearance.
inline LabeledGraph parse_edge_list(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto t = detail::tokens(detail::strip_comment(line));
    if (t.empty()) continue;
    if (t.size() > 2) throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'u v'");
    rows.push_back(std::move(t));
  }
  bool numeric = true;
  int max_id = -1;
  for (const auto& r : rows)
    for (const auto& label : r) {
      int v = 0;
      if (!detail::parse_int(label, v) || v < 0) numeric = false;
      else max_id = std::max(max_id, v);
    }
  LabeledGraph out{Graph(0, {}), {}};
  std::map<std::string, int> ids;
  auto id_of = [&](const std::string& label) {
    if (numeric) return std::stoi(label);
    auto [it, fresh] = ids.emplace(label, static_cast<int>(out.labels.size()));
    if (fresh) out.labels.push_back(label);
    return it->second;
  };
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (const auto& r : rows) {
    int u = id_of(r[0]);
    if (r.size() == 2) {
      int v = id_of(r[1]);
      if (u == v) throw Error(Errc::SelfLoop, "self-loop at " + r[0]);
      pairs.emplace_back(u, v);
    }
  }
  int n = numeric ? max_id + 1 : static_cast<int>(out.labels.size());
  if (numeric)
    for (int v = 0; v < n; ++v) out.labels.push_back(std::to_string(v));
  out.graph = Graph(n, pairs);
  return out;
}

/// graph6 when the content is a single token that decodes as graph6,
/// otherwise an edge list.
inline Graph parse_graph(std::string_view text) {
  std::vector<std::string> meaningful;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    auto s = detail::trim(line);
    if (s.empty() || s.front() == '#') continue;
    meaningful.emplace_back(s);
  }
  if (meaningful.size() == 1 && detail::tokens(meaningful[0]).size() == 1) {
    try {
      return parse_graph6(meaningful[0]);
    } catch (const Error&) {
    }
  }
  return parse_edge_list(text).graph;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::Parse, "cannot open " + path);
  return detail::slurp(in);
}

inline Graph read_graph(const std::string& path) { return parse_graph(read_file(path)); }

inline std::string format_edge_list(const Graph& g) {
  std::ostringstream out;
  out << "# n=" << g.order() << " m=" << g.size() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

/// Matching file: "u v : a-b, c-d" lists pairs (color at u, color at v);
/// "default identity k=K" first fills every edge with the identity on K
/// colors. Edges never mentioned keep an empty matching.
inline MatchingAssignment parse_matching(std::string_view text, const Graph& g, int palette) {
  MatchingAssignment m(g, palette);
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    if (line.rfind("default", 0) == 0) {
      auto t = detail::tokens(line);
      if (t.size() != 3 || t[1] != "identity" || t[2].rfind("k=", 0) != 0)
        throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'default identity k=K'");
      int k = detail::need_int(std::string_view(t[2]).substr(2), line_no);
      if (k > palette) throw Error(Errc::InvalidMatching, "identity palette exceeds " + std::to_string(palette));
      for (int e = 0; e < g.size(); ++e) {
        m.clear(e);
        std::vector<std::pair<Color, Color>> pairs;
        for (Color c = 0; c < k; ++c) pairs.emplace_back(c, c);
        m.set(e, g.edge(e).u, pairs);
      }
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'u v : a-b, ...'");
    auto ends = detail::tokens(line.substr(0, colon));
    if (ends.size() != 2) throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'u v'");
    const Vertex u = detail::need_int(ends[0], line_no), v = detail::need_int(ends[1], line_no);
    if (u < 0 || v < 0 || u >= g.order() || v >= g.order())
      throw Error(Errc::VertexOutOfRange, "line " + std::to_string(line_no) + ": vertex out of range");
    std::vector<std::pair<Color, Color>> pairs;
    std::string rest(line.substr(colon + 1));
    std::istringstream items(rest);
    for (std::string item; std::getline(items, item, ',');) {
      auto s = detail::trim(item);
      if (s.empty()) continue;
      auto dash = s.find('-');
      if (dash == std::string_view::npos)
        throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected a color pair 'a-b'");
      pairs.emplace_back(detail::need_int(s.substr(0, dash), line_no), detail::need_int(s.substr(dash + 1), line_no));
    }
    const int e = g.edge_id(u, v);
    if (e < 0) throw Error(Errc::InvalidMatching, "line " + std::to_string(line_no) + ": no edge " + std::to_string(u) + "-" + std::to_string(v));
    m.clear(e);
    m.set(e, u, pairs);
  }
  return m;
}

inline std::string format_matching(const Graph& g, const MatchingAssignment& m) {
  std::ostringstream out;
  for (int e = 0; e < g.size(); ++e) {
    auto pairs = m.pairs(e);
    if (pairs.empty()) continue;
    out << g.edge(e).u << " " << g.edge(e).v << " :";
    for (std::size_t i = 0; i < pairs.size(); ++i)
      out << (i ? ", " : " ") << pairs[i].first << "-" << pairs[i].second;
    out << "\n";
  }
  return out.str();
}

/// List file: "v : c1 c2 c3" per vertex; vertices not listed get empty lists.
inline ListAssignment parse_lists(std::string_view text, int n) {
  std::vector<std::vector<Color>> lists(n);
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto line = detail::strip_comment(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
      throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'v : c1 c2 ...'");
    const Vertex v = detail::need_int(line.substr(0, colon), line_no);
    if (v < 0 || v >= n) throw Error(Errc::VertexOutOfRange, "line " + std::to_string(line_no) + ": vertex out of range");
    for (const auto& t : detail::tokens(line.substr(colon + 1))) lists[v].push_back(detail::need_int(t, line_no));
  }
  return ListAssignment(std::move(lists));
}

inline std::string format_lists(const ListAssignment& lists) {
  std::ostringstream out;
  for (std::size_t v = 0; v < lists.lists().size(); ++v) {
    out << v << " :";
    for (Color c : lists.lists()[v]) out << " " << c;
    out << "\n";
  }
  return out.str();
}

inline std::string format_coloring(const Coloring& c) {
  std::ostringstream out;
  for (std::size_t v = 0; v < c.size(); ++v) out << v << " " << c[v] << "\n";
  return out.str();
}

/// "v c" per line; vertices not mentioned (or given -1) stay uncolored.
inline Coloring parse_coloring(std::string_view text, int n) {
  Coloring c(n, kUncolored);
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    auto t = detail::tokens(detail::strip_comment(raw));
    if (t.empty()) continue;
    if (t.size() != 2) throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": expected 'v c'");
    const Vertex v = detail::need_int(t[0], line_no);
    if (v < 0 || v >= n) throw Error(Errc::VertexOutOfRange, "line " + std::to_string(line_no) + ": vertex out of range");
    c[v] = detail::need_int(t[1], line_no);
    if (c[v] < kUncolored) throw Error(Errc::Parse, "line " + std::to_string(line_no) + ": negative color");
  }
  return c;
}

/// Certificate file: a comment header followed by a matching file (DP) or a
/// list file (choosability).
inline std::string format_certificate(const Graph& g, const AdversaryCertificate& cert) {
  std::ostringstream out;
  if (cert.kind == AdversaryCertificate::Kind::Matching) {
    out << "# matching assignment on colors 0.." << cert.k - 1 << " with no DP-coloring\n";
    out << "# edges not listed carry the empty matching\n";
    out << format_matching(g, cert.matching);
  } else {
    out << "# " << cert.k << "-list assignment with no proper coloring from the lists\n";
    out << format_lists(cert.lists);
  }
  return out.str();
}

inline nlohmann::json embedding_to_json(const PlaneEmbedding& emb) {
  nlohmann::json j;
  j["n"] = emb.graph().order();
  j["rotation"] = emb.rotation();
  return j;
}

/// {"n": N, "rotation": [[neighbors of 0 in cyclic order], ...]}.
inline PlaneEmbedding parse_embedding(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("embedding: ") + e.what());
  }
  if (!j.is_object() || !j.contains("rotation") || !j["rotation"].is_array())
    throw Error(Errc::Parse, "embedding: expected {\"n\":..., \"rotation\":[...]}");
  RotationSystem rot;
  try {
    rot = j["rotation"].get<RotationSystem>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("embedding rotation: ") + e.what());
  }
  const int n = j.contains("n") ? j["n"].get<int>() : static_cast<int>(rot.size());
  if (n != static_cast<int>(rot.size()))
    throw Error(Errc::InvalidRotation, "embedding: n differs from the number of rotation lists");
  std::vector<std::pair<Vertex, Vertex>> pairs;
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w : rot[v]) {
      if (w < 0 || w >= n) throw Error(Errc::VertexOutOfRange, "embedding: neighbor out of range");
      if (w == v) throw Error(Errc::SelfLoop, "embedding: self-loop at " + std::to_string(v));
      pairs.emplace_back(v, w);
    }
  Graph g(n, pairs);
  return trace_faces(g, rot);
}

/// {"name": optional, "vertices":[{"hostDegree":d,"outsideNeighbors":o}...],
///  "edges":[[i,j]...], "order":[...]}; an omitted order means 0..l-1.
inline ConfigPattern parse_pattern(std::string_view text) {
  ConfigPattern p;
  try {
    auto j = nlohmann::json::parse(text);
    p.name = j.value("name", std::string("pattern"));
    for (const auto& v : j.at("vertices"))
      p.vertices.push_back({v.at("hostDegree").get<int>(), v.at("outsideNeighbors").get<int>()});
    for (const auto& e : j.at("edges")) p.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    if (j.contains("order")) p.order = j["order"].get<std::vector<int>>();
    else
      for (int i = 0; i < p.size(); ++i) p.order.push_back(i);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::Parse, std::string("pattern: ") + e.what());
  }
  for (auto [a, b] : p.edges)
    if (a < 0 || b < 0 || a >= p.size() || b >= p.size() || a == b)
      throw Error(Errc::Parse, "pattern: bad edge");
  p.validate();
  return p;
}

inline nlohmann::json pattern_to_json(const ConfigPattern& p) {
  nlohmann::json j;
  j["name"] = p.name;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices) j["vertices"].push_back({{"hostDegree", v.host_degree}, {"outsideNeighbors", v.outside_neighbors}});
  j["edges"] = p.edges;
  j["order"] = p.order;
  return j;
}

/// Tab-separated: phase, rule, source, sink, amount ("p/q").
inline std::string format_transfer_log(const ChargeState& s) {
  std::ostringstream out;
  out << "phase\trule\tsource\tsink\tamount\n";
  for (const Transfer& t : s.log)
    out << t.phase << "\t" << t.rule << "\t" << t.source.str() << "\t" << t.sink.str() << "\t" << to_fraction(t.amount)
        << "\n";
  return out.str();
}

}  // namespace dpcolor::io
