#pragma once

#include <array>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dpcolor/graph.hpp"

namespace dpcolor {

/// Lengths of the cycles of a graph up to `search_bound`.
struct CycleSpectrum {
  std::set<int> present;
  int search_bound = 9;

  bool contains(int length) const { return present.count(length) > 0; }
};

/// Exact set of cycle lengths <= max_len. Every cycle is rooted at its smallest
/// vertex and grown by DFS through larger vertices only; the search stops early
/// once every length in 3..max_len has been witnessed.
inline CycleSpectrum cycle_spectrum(const Graph& g, int max_len = 9) {
  if (max_len < 3) throw Error(Errc::InvalidArgument, "max_len must be at least 3");
  CycleSpectrum out;
  out.search_bound = max_len;
  const int wanted = max_len - 2;
  std::vector<bool> on_path(g.order(), false);

  for (Vertex root = 0; root < g.order(); ++root) {
    if (static_cast<int>(out.present.size()) == wanted) break;
    auto dfs = [&](auto&& self, Vertex v, int depth) -> void {
      for (Vertex w : g.neighbors(v)) {
        if (w == root) {
          if (depth >= 3) out.present.insert(depth);
          continue;
        }
        if (w < root || on_path[w] || depth == max_len) continue;
        on_path[w] = true;
        self(self, w, depth + 1);
        on_path[w] = false;
        if (static_cast<int>(out.present.size()) == wanted) return;
      }
    };
    on_path[root] = true;
    dfs(dfs, root, 1);
    on_path[root] = false;
  }
  return out;
}

/// The three forbidden-cycle hypotheses {4,a,b,9} with distinct a,b in {6,7,8}.
/// The names match the discharging rule variants: A runs R4a, the B variants
/// run R4b.
enum class Variant { A, B67, B68 };

inline constexpr std::array<Variant, 3> kAllVariants{Variant::A, Variant::B67, Variant::B68};

inline std::array<int, 4> forbidden_lengths(Variant v) {
  switch (v) {
    case Variant::A: return {4, 7, 8, 9};
    case Variant::B67: return {4, 6, 7, 9};
    case Variant::B68: return {4, 6, 8, 9};
  }
  return {};
}

/// Command-line name: "a", "b67", "b68".
inline std::string_view variant_name(Variant v) {
  switch (v) {
    case Variant::A: return "a";
    case Variant::B67: return "b67";
    case Variant::B68: return "b68";
  }
  return "?";
}

/// Human label such as "{4,7,8,9}".
inline std::string variant_label(Variant v) {
  auto l = forbidden_lengths(v);
  return "{" + std::to_string(l[0]) + "," + std::to_string(l[1]) + "," + std::to_string(l[2]) +
         "," + std::to_string(l[3]) + "}";
}

inline Variant parse_variant(std::string_view name) {
  for (Variant v : kAllVariants)
    if (name == variant_name(v)) return v;
  throw Error(Errc::InvalidArgument, "unknown variant '" + std::string(name) + "'");
}

inline bool satisfies(const CycleSpectrum& s, Variant v) {
  for (int len : forbidden_lengths(v))
    if (len <= s.search_bound && s.contains(len)) return false;
  return true;
}

/// Which of the three hypotheses the graph satisfies (no cycle of any listed
/// length).
inline std::vector<Variant> forbidden_variant(const Graph& g) {
  CycleSpectrum s = cycle_spectrum(g, 9);
  std::vector<Variant> out;
  for (Variant v : kAllVariants)
    if (satisfies(s, v)) out.push_back(v);
  return out;
}

}  // namespace dpcolor
