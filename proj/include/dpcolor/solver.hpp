#pragma once

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdint>
#include <limits>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "dpcolor/dp_core.hpp"
#include "dpcolor/graph.hpp"

namespace dpcolor {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

struct SolverOptions {
  /// Maximum number of normalized matching assignments (DP) or list systems
  /// (choosability) a single k-test may examine.
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  /// Decide k < chi (identity certificate) and k > degeneracy (greedy) without
  /// enumerating. Verdicts are the same either way, and so are DP
  /// certificates (the identity assignment is the first case enumerated).
  bool use_bounds = true;
  /// Largest vertex count accepted by the choosability enumeration.
  int choosability_max_vertices = 7;
};

/// Witness that a graph is not k-colorable in the DP or list sense.
struct AdversaryCertificate {
  enum class Kind { Matching, Lists };
  Kind kind = Kind::Matching;
  int k = 0;
  MatchingAssignment matching;  // Kind::Matching, lists are {0..k-1}
  ListAssignment lists;         // Kind::Lists
};

struct Verdict {
  bool colorable = false;
  std::optional<AdversaryCertificate> certificate;
  std::uint64_t cases = 0;  // assignments or list systems examined
  std::string method;       // "exhaustive", "chromatic bound", "degeneracy bound"
};

namespace detail {

inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
    return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

inline std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < exp; ++i) r = saturating_mul(r, base);
  return r;
}

/// All permutations of 0..k-1 in lexicographic order (identity first).
inline std::vector<std::vector<Color>> permutations(int k) {
  std::vector<Color> p(k);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<Color>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

/// Proper k-coloring by backtracking (largest-degree-first static order).
inline bool properly_colorable(const Graph& g, int k) {
  if (k <= 0) return g.order() == 0;
  if (k >= kMaxColors) return true;
  std::vector<Vertex> order(g.order());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
  std::vector<Color> color(g.order(), kUncolored);
  auto go = [&](auto&& self, int i, int used) -> bool {
    if (i == g.order()) return true;
    Vertex v = order[i];
    std::uint64_t forbidden = 0;
    for (Vertex w : g.neighbors(v))
      if (color[w] != kUncolored) forbidden |= std::uint64_t{1} << color[w];
    // a fresh color is interchangeable with any other unused one
    for (int c = 0; c < std::min(k, used + 1); ++c) {
      if (forbidden >> c & 1) continue;
      color[v] = c;
      if (self(self, i + 1, std::max(used, c + 1))) return true;
    }
    color[v] = kUncolored;
    return false;
  };
  return go(go, 0, 0);
}

/// List coloring with arbitrary small colors (< 64).
inline bool list_colorable(const Graph& g, const std::vector<std::uint64_t>& lists) {
  std::vector<std::uint64_t> dom = lists;
  std::vector<char> done(g.order(), 0);
  auto go = [&](auto&& self, int colored) -> bool {
    if (colored == g.order()) return true;
    Vertex v = -1;
    int best = 65;
    for (Vertex u = 0; u < g.order(); ++u)
      if (!done[u] && std::popcount(dom[u]) < best) {
        best = std::popcount(dom[u]);
        v = u;
      }
    if (best == 0) return false;
    done[v] = 1;
    for (std::uint64_t rest = dom[v]; rest; rest &= rest - 1) {
      std::uint64_t bit = rest & (~rest + 1);
      std::vector<Vertex> touched;
      for (Vertex w : g.neighbors(v))
        if (!done[w] && (dom[w] & bit)) {
          dom[w] &= ~bit;
          touched.push_back(w);
        }
      if (self(self, colored + 1)) return true;
      for (Vertex w : touched) dom[w] |= bit;
    }
    done[v] = 0;
    return false;
  };
  return go(go, 0);
}

}  // namespace detail

/// Chromatic number: smallest k with a proper k-coloring, starting from the
/// clique number.
inline int chi(const Graph& g) {
  if (g.order() == 0) return 0;
  for (int k = std::max(1, clique_number(g));; ++k)
    if (detail::properly_colorable(g, k)) return k;
}

/// Is G DP-k-colorable?
///
/// Only full permutation matchings are tried (adding pairs to a matching can
/// only remove colorings), and matchings on a BFS spanning forest are fixed to
/// the identity (relabeling colors at a vertex preserves colorability). The
/// remaining (k!)^(|E|-|V|+c) assignments are enumerated in lexicographic
/// order over the non-forest edges, identity permutation first; the first
/// uncolorable one is returned as the certificate.
///
/// With jobs > 1 the space is cut into blocks by the leading non-forest
/// edges; workers claim blocks in order and the smallest failing index wins,
/// so the answer does not depend on the job count.
inline Verdict is_dp_k_colorable(const Graph& g, int k, const SolverOptions& opt = {}) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
  if (k >= kMaxColors) throw Error(Errc::InvalidArgument, "k too large");
  Verdict out;
  const ListAssignment lists = ListAssignment::uniform(g.order(), k);

  if (opt.use_bounds) {
    if (g.order() > 0 && k > degeneracy(g).value) {
      out.colorable = true;
      out.method = "degeneracy bound";
      return out;
    }
    if (!detail::properly_colorable(g, k)) {
      out.colorable = false;
      out.method = "chromatic bound";
      out.certificate = AdversaryCertificate{AdversaryCertificate::Kind::Matching, k,
                                             MatchingAssignment::identity(g, k), {}};
      out.cases = 1;
      return out;
    }
  }

  std::vector<int> tree = spanning_forest(g);
  std::vector<int> free_edges;
  {
    std::vector<bool> in_tree(g.size(), false);
    for (int e : tree) in_tree[e] = true;
    for (int e = 0; e < g.size(); ++e)
      if (!in_tree[e]) free_edges.push_back(e);
  }
  const auto perms = detail::permutations(k);
  const std::uint64_t radix = perms.size();
  const std::uint64_t total = detail::saturating_pow(radix, free_edges.size());
  if (total > opt.budget) throw BudgetExceeded(total, opt.budget);

  // block = fixed prefix over the first `lead` free edges
  std::size_t lead = 0;
  std::uint64_t blocks = 1;
  const unsigned jobs = std::max(1u, opt.jobs);
  while (jobs > 1 && lead < free_edges.size() && blocks < 8ull * jobs) {
    blocks *= radix;
    ++lead;
  }
  const std::uint64_t per_block = total / blocks;

  std::atomic<std::uint64_t> next_block{0};
  std::atomic<std::uint64_t> first_fail{std::numeric_limits<std::uint64_t>::max()};
  std::atomic<std::uint64_t> examined{0};

  auto worker = [&]() {
    MatchingAssignment m = MatchingAssignment::identity(g, k);
    CoverSearch search(g, lists);
    std::vector<std::uint64_t> digit(free_edges.size(), 0);
    std::uint64_t local = 0;
    while (true) {
      const std::uint64_t b = next_block.fetch_add(1);
      if (b >= blocks) break;
      const std::uint64_t start = b * per_block;
      if (start >= first_fail.load()) break;
      // decode start into digits (most significant = first free edge)
      std::uint64_t rem = start;
      for (std::size_t i = free_edges.size(); i-- > 0;) {
        digit[i] = rem % radix;
        rem /= radix;
        m.set_permutation(free_edges[i], perms[digit[i]]);
      }
      for (std::uint64_t idx = start; idx < start + per_block; ++idx) {
        if (idx >= first_fail.load(std::memory_order_relaxed)) break;
        ++local;
        if (!search.solve(m)) {
          std::uint64_t cur = first_fail.load();
          while (idx < cur && !first_fail.compare_exchange_weak(cur, idx)) {
          }
          break;
        }
        // odometer step, least significant digit last
        for (std::size_t i = free_edges.size(); i-- > 0;) {
          if (++digit[i] < radix) {
            m.set_permutation(free_edges[i], perms[digit[i]]);
            break;
          }
          digit[i] = 0;
          m.set_permutation(free_edges[i], perms[0]);
        }
      }
    }
    examined += local;
  };

  if (jobs == 1 || blocks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  out.cases = examined.load();
  out.method = "exhaustive";
  const std::uint64_t fail = first_fail.load();
  if (fail == std::numeric_limits<std::uint64_t>::max()) {
    out.colorable = true;
    return out;
  }
  MatchingAssignment cert = MatchingAssignment::identity(g, k);
  std::uint64_t rem = fail;
  for (std::size_t i = free_edges.size(); i-- > 0;) {
    cert.set_permutation(free_edges[i], perms[rem % radix]);
    rem /= radix;
  }
  out.colorable = false;
  out.certificate = AdversaryCertificate{AdversaryCertificate::Kind::Matching, k, std::move(cert), {}};
  return out;
}

/// DP-chromatic number: least k for which is_dp_k_colorable holds.
inline int chi_dp(const Graph& g, const SolverOptions& opt = {}) {
  if (g.order() == 0) return 0;
  for (int k = 1;; ++k)
    if (is_dp_k_colorable(g, k, opt).colorable) return k;
}

/// Is G k-choosable?
///
/// Enumerates list systems with |L(v)| = k over a pool of k*n colors, up to a
/// global permutation of colors: vertices are visited in BFS order and each
/// list is a subset of the colors already used plus the next fresh colors.
/// Every list system is equivalent under color renaming to one produced this
/// way.
inline Verdict is_k_choosable(const Graph& g, int k, const SolverOptions& opt = {}) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be positive");
  if (g.order() > opt.choosability_max_vertices)
    throw Error(Errc::InvalidArgument, "choosability enumeration is limited to " +
                                           std::to_string(opt.choosability_max_vertices) + " vertices");
  if (static_cast<long>(k) * g.order() >= kMaxColors)
    throw Error(Errc::InvalidArgument, "color pool exceeds " + std::to_string(kMaxColors));
  Verdict out;
  if (opt.use_bounds) {
    if (g.order() > 0 && k > degeneracy(g).value) {
      out.colorable = true;
      out.method = "degeneracy bound";
      return out;
    }
    if (!detail::properly_colorable(g, k)) {
      out.colorable = false;
      out.method = "chromatic bound";
      out.certificate =
          AdversaryCertificate{AdversaryCertificate::Kind::Lists, k, {}, ListAssignment::uniform(g.order(), k)};
      out.cases = 1;
      return out;
    }
  }

  // BFS order so later lists overlap with their neighbors'
  std::vector<Vertex> order;
  {
    std::vector<bool> seen(g.order(), false);
    for (Vertex s = 0; s < g.order(); ++s) {
      if (seen[s]) continue;
      seen[s] = true;
      order.push_back(s);
      for (std::size_t i = order.size() - 1; i < order.size(); ++i)
        for (Vertex w : g.neighbors(order[i]))
          if (!seen[w]) {
            seen[w] = true;
            order.push_back(w);
          }
    }
  }

  std::vector<std::uint64_t> lists(g.order(), 0);
  std::uint64_t count = 0;
  bool failed = false;

  // subsets of {0..used-1} with at most k elements, in increasing-mask order
  auto go = [&](auto&& self, std::size_t i, int used) -> void {
    if (failed) return;
    if (i == order.size()) {
      if (++count > opt.budget) throw BudgetExceeded(count, opt.budget);
      if (!detail::list_colorable(g, lists)) failed = true;
      return;
    }
    const Vertex v = order[i];
    const std::uint64_t limit = std::uint64_t{1} << used;
    for (std::uint64_t s = 0; s < limit && !failed; ++s) {
      const int shared = std::popcount(s);
      if (shared > k) continue;
      const int fresh = k - shared;
      std::uint64_t fresh_bits = ((std::uint64_t{1} << fresh) - 1) << used;
      lists[v] = s | fresh_bits;
      self(self, i + 1, used + fresh);
    }
  };
  go(go, 0, 0);

  out.cases = count;
  out.method = "exhaustive";
  out.colorable = !failed;
  if (failed) {
    std::vector<std::vector<Color>> l(g.order());
    for (Vertex v = 0; v < g.order(); ++v)
      for (std::uint64_t rest = lists[v]; rest; rest &= rest - 1) l[v].push_back(std::countr_zero(rest));
    out.certificate = AdversaryCertificate{AdversaryCertificate::Kind::Lists, k, {}, ListAssignment(std::move(l))};
  }
  return out;
}

/// Choosability (list chromatic number).
inline int chi_list(const Graph& g, const SolverOptions& opt = {}) {
  if (g.order() == 0) return 0;
  for (int k = 1;; ++k)
    if (is_k_choosable(g, k, opt).colorable) return k;
}

/// True if the certificate really defeats every coloring. List certificates
/// are replayed through their matching-assignment form.
inline bool replay_certificate(const Graph& g, const AdversaryCertificate& cert) {
  if (cert.kind == AdversaryCertificate::Kind::Matching)
    return !find_coloring(g, ListAssignment::uniform(g.order(), cert.k), cert.matching).has_value();
  ListReduction r = from_list_assignment(g, cert.lists);
  return !find_coloring(g, r.lists, r.matching).has_value();
}

}  // namespace dpcolor
