#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"

using namespace dpcolor;
using namespace testing_support;

namespace {

// Pinned limits. Every numeric check below is exact (rational or integer
// equality); only wall-clock ceilings carry a tolerance.
constexpr int kEmbeddingCorpus = 200;
constexpr int kEmbeddingMaxVertices = 12;
constexpr double kChargeSeconds = 5.0;
constexpr int kTVectors = 10'000;
constexpr double kCycleFactSeconds = 60.0;
constexpr double kChainSeconds = 600.0;
constexpr double kNormalizationSeconds = 600.0;
constexpr int kExtensionInstances = 1000;
constexpr double kExtensionSeconds = 60.0;
constexpr double kPlanarSeconds = 1800.0;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void report(const std::string& name, const std::function<Outcome()>& run, double limit_seconds = 0) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = run();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += " [time limit " + std::to_string(limit_seconds) + " s exceeded]";
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", secs);
  std::cout << (o.pass ? "PASS  " : "FAIL  ") << name << "  (" << o.detail << "; " << buf << " s)" << std::endl;
  if (!o.pass) ++failures;
}

std::vector<PlaneEmbedding> embedding_corpus() {
  std::mt19937_64 rng(kSeed);
  std::vector<PlaneEmbedding> out;
  for (int i = 0; i < kEmbeddingCorpus; ++i)
    out.push_back(random_embedding(3 + i % (kEmbeddingMaxVertices - 2), 0.2 + 0.05 * (i % 14), rng));
  return out;
}

}  // namespace

int main() {
  std::cout << "acceptance seed " << kSeed << "\n";
  const auto corpus = embedding_corpus();

  report("charge identity: sum of d(x)-4 over V and F is -8", [&] {
    int ok = 0;
    for (const auto& emb : corpus) {
      const Graph& g = emb.graph();
      Charge s = 0;
      for (Vertex v = 0; v < g.order(); ++v) s += g.degree(v) - 4;
      for (int f = 0; f < emb.face_count(); ++f) s += emb.face_length(f) - 4;
      if (s == Charge(-8) && initial_charges(emb).total() == Charge(-8)) ++ok;
    }
    return Outcome{ok == kEmbeddingCorpus,
                   std::to_string(ok) + "/" + std::to_string(corpus.size()) + " embeddings, n <= " +
                       std::to_string(kEmbeddingMaxVertices)};
  }, kChargeSeconds);

  report("conservation after every phase, all rule variants", [&] {
    int runs = 0, phases = 0, bad = 0;
    for (const auto& emb : corpus)
      for (Variant v : kAllVariants) {
        auto r = apply_rules(emb, v);
        ++runs;
        for (const auto& p : r.phases) {
          ++phases;
          if (p.total != Charge(-8)) ++bad;
        }
        for (const auto& t : r.final_state.log)
          if (t.amount < 0) ++bad;
      }
    return Outcome{bad == 0, std::to_string(runs) + " runs, " + std::to_string(phases) + " phase totals, " +
                                 std::to_string(bad) + " violations"};
  });

  report("budget identity: long form equals (2/3)d - x/3", [] {
    std::mt19937_64 rng(kSeed + 1);
    int ok = 0;
    for (int i = 0; i < kTVectors; ++i) {
      const int d = std::uniform_int_distribution<int>(10, 20)(rng);
      std::map<int, int> t;
      for (int left = d; left > 0;) {
        int part = std::uniform_int_distribution<int>(1, left)(rng);
        ++t[part];
        left -= part;
      }
      if (lemma5_bound(t, d) == Charge(2 * d, 3) - Charge(budget_slack(d), 3)) ++ok;
    }
    return Outcome{ok == kTVectors, std::to_string(ok) + "/" + std::to_string(kTVectors) + " t-vectors"};
  });

  report("even cycles: choosability 2, DP-chromatic number 3", [] {
    SolverOptions opt;
    opt.choosability_max_vertices = 8;
    std::ostringstream d;
    bool ok = true;
    for (int m : {4, 6, 8}) {
      int l = chi_list(named::cycle(m), opt), p = chi_dp(named::cycle(m), opt);
      d << "C" << m << ": " << l << "/" << p << " ";
      ok = ok && l == 2 && p == 3;
    }
    return Outcome{ok, d.str() + "(list/DP)"};
  }, kCycleFactSeconds);

  report("chain chi <= chi_list <= chi_DP, connected graphs n <= 5", [] {
    int checked = 0, bad = 0;
    for (const Graph& g : atlas_graphs(5)) {
      int c = chi(g), l = chi_list(g), p = chi_dp(g);
      ++checked;
      if (!(c <= l && l <= p)) ++bad;
    }
    return Outcome{bad == 0 && checked == 31, std::to_string(checked) + " graphs, " + std::to_string(bad) +
                                                  " violations"};
  }, kChainSeconds);

  report("normalized DP-2 search equals unrestricted partial-matching oracle, n <= 5", [] {
    SolverOptions plain;
    plain.use_bounds = false;
    int checked = 0, bad = 0, colorable = 0;
    for (const Graph& g : atlas_graphs(5)) {
      bool a = is_dp_k_colorable(g, 2, plain).colorable;
      bool b = unrestricted_dp2_colorable(g);
      ++checked;
      colorable += a ? 1 : 0;
      if (a != b) ++bad;
    }
    return Outcome{bad == 0 && checked == 31, std::to_string(checked) + " graphs (" + std::to_string(colorable) +
                                                  " DP-2-colorable), " + std::to_string(bad) + " disagreements"};
  }, kNormalizationSeconds);

  report("single-vertex extension below the list size", [] {
    std::mt19937_64 rng(kSeed + 2);
    int ok = 0;
    for (int i = 0; i < kExtensionInstances; ++i) {
      auto inst = random_low_degree_instance(3, rng);
      auto c = min_degree_extend(inst.graph, inst.order[0], inst.lists, inst.matching, inst.partial);
      if (is_valid_coloring(inst.graph, inst.lists, inst.matching, c)) ++ok;
    }
    return Outcome{ok == kExtensionInstances, std::to_string(ok) + "/" + std::to_string(kExtensionInstances) +
                                                  " extensions valid"};
  }, kExtensionSeconds);

  report("ordered extension under conditions (1)-(3)", [] {
    std::mt19937_64 rng(kSeed + 3);
    int ok = 0;
    for (int i = 0; i < kExtensionInstances; ++i) {
      auto inst = random_ordered_instance(3, rng);
      try {
        auto c = extend_coloring(inst.graph, inst.order, inst.lists, inst.matching, inst.partial);
        if (is_valid_coloring(inst.graph, inst.lists, inst.matching, c)) ++ok;
      } catch (const Error&) {
      }
    }
    return Outcome{ok == kExtensionInstances, std::to_string(ok) + "/" + std::to_string(kExtensionInstances) +
                                                  " extensions valid"};
  }, kExtensionSeconds);

  report("DP-3-colorability of planar graphs n <= 7 per forbidden-cycle variant", [] {
    SolverOptions plain;
    plain.use_bounds = false;
    std::ostringstream d;
    bool ok = true;
    const auto graphs = atlas_graphs(7);
    for (Variant v : kAllVariants) {
      int eligible = 0, pass = 0, fail = 0, budget = 0;
      for (const Graph& g : graphs) {
        if (!satisfies(cycle_spectrum(g), v)) continue;
        try {
          brute_force_embed(g);
        } catch (const Error&) {
          continue;
        }
        ++eligible;
        try {
          if (is_dp_k_colorable(g, 3, plain).colorable) ++pass;
          else ++fail;
        } catch (const BudgetExceeded&) {
          ++budget;
        }
      }
      if (v != kAllVariants[0]) d << "; ";
      d << variant_label(v) << ": " << eligible << " graphs, " << pass << " colorable, " << fail
        << " certificates, " << budget << " over budget";
      ok = ok && fail == 0 && pass + budget == eligible && eligible > 0;
    }
    return Outcome{ok, d.str()};
  }, kPlanarSeconds);

  report("known DP-chromatic numbers: K1..K4 and C3..C8", [] {
    std::ostringstream d;
    bool ok = true;
    for (int n = 1; n <= 4; ++n) {
      int v = chi_dp(named::complete(n));
      d << "K" << n << "=" << v << " ";
      ok = ok && v == n;
    }
    for (int m = 3; m <= 8; ++m) {
      int v = chi_dp(named::cycle(m));
      d << "C" << m << "=" << v << " ";
      ok = ok && v == 3;
    }
    return Outcome{ok, d.str()};
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << "\n";
  return failures == 0 ? 0 : 1;
}
