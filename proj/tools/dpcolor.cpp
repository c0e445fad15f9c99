#include <CLI11.hpp>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "dpcolor.hpp"

using namespace dpcolor;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kCertificate = 1, kBudget = 2, kInputError = 3 };

struct RunConfig {
  std::uint64_t budget = kDefaultBudget;
  unsigned jobs = 1;
  std::uint64_t seed = 0;
  std::string json_path;
  std::string certificate_path = "certificate.txt";
  bool certificate_requested = false;
  std::string bounds = "auto";
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  return io::read_file(path);
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string spectrum_text(const CycleSpectrum& s) {
  std::string out = "{";
  for (int len : s.present) out += (out.size() > 1 ? "," : "") + std::to_string(len);
  return out + "}";
}

std::string variants_text(const std::vector<Variant>& vs) {
  if (vs.size() == kAllVariants.size()) return "all";
  if (vs.empty()) return "none";
  std::string out;
  for (Variant v : vs) out += (out.empty() ? "" : ",") + std::string(variant_name(v));
  return out;
}

SolverOptions solver_options(const RunConfig& cfg, bool bounds_default) {
  SolverOptions o;
  o.budget = cfg.budget;
  o.jobs = std::max(1u, cfg.jobs);
  o.use_bounds = cfg.bounds == "auto" ? bounds_default : cfg.bounds == "on";
  return o;
}

void sidecar(const RunConfig& cfg, json report) {
  if (cfg.json_path.empty()) return;
  report["config"] = {{"budget", cfg.budget}, {"jobs", cfg.jobs}, {"seed", cfg.seed}};
  write_text(cfg.json_path, report.dump(2) + "\n");
}

int cmd_cycles(const RunConfig& cfg, const std::string& input) {
  Graph g = io::parse_graph(read_input(input));
  auto s = cycle_spectrum(g, 9);
  auto vs = forbidden_variant(g);
  std::cout << "spectrum " << spectrum_text(s) << "; variants: " << variants_text(vs) << "\n";
  json names = json::array();
  for (Variant v : vs) names.push_back(variant_name(v));
  sidecar(cfg, {{"command", "cycles"}, {"spectrum", s.present}, {"variants", names}});
  return kOk;
}

int cmd_chi(const RunConfig& cfg, const std::string& input) {
  Graph g = io::parse_graph(read_input(input));
  int c = chi(g);
  std::cout << "chi = " << c << "\n";
  sidecar(cfg, {{"command", "chi"}, {"chi", c}});
  return kOk;
}

// Shared driver for chi-list and chi-dp: a k-test when k > 0, otherwise the
// least colorable k with the certificate for k - 1.
int cmd_number(const RunConfig& cfg, const std::string& input, int k, bool dp) {
  Graph g = io::parse_graph(read_input(input));
  SolverOptions opt = solver_options(cfg, true);
  auto test = [&](int kk) { return dp ? is_dp_k_colorable(g, kk, opt) : is_k_choosable(g, kk, opt); };
  json rep{{"command", dp ? "chi-dp" : "chi-list"}};

  auto emit_certificate = [&](const Verdict& v) {
    if (!v.certificate) return;
    write_text(cfg.certificate_path, io::format_certificate(g, *v.certificate));
    std::cout << "certificate written to " << cfg.certificate_path << "\n";
    rep["certificate"] = cfg.certificate_path;
  };

  if (k > 0) {
    Verdict v = test(k);
    std::cout << (dp ? "DP-" : "") << k << (dp ? "-colorable: " : "-choosable: ") << (v.colorable ? "yes" : "no")
              << " (" << v.method << ", " << v.cases << " cases)\n";
    rep.update({{"k", k}, {"colorable", v.colorable}, {"method", v.method}, {"cases", v.cases}});
    if (!v.colorable) emit_certificate(v);
    sidecar(cfg, rep);
    return v.colorable ? kOk : kCertificate;
  }

  Verdict last;
  int answer = 0;
  for (int kk = 1; g.order() > 0 && kk <= g.order(); ++kk) {
    Verdict v = test(kk);
    if (v.colorable) {
      answer = kk;
      break;
    }
    last = v;
  }
  std::cout << "chi_" << (dp ? "DP" : "list") << " = " << answer << "\n";
  rep["value"] = answer;
  if (cfg.certificate_requested && answer > 1) emit_certificate(last);
  sidecar(cfg, rep);
  return kOk;
}

int cmd_color(const RunConfig& cfg, const std::string& input, const std::string& matching_path,
              const std::string& lists_path, int k) {
  Graph g = io::parse_graph(read_input(input));
  ListAssignment lists = lists_path.empty() ? ListAssignment::uniform(g.order(), k)
                                            : io::parse_lists(io::read_file(lists_path), g.order());
  const int palette = std::max(lists.palette(), k);
  MatchingAssignment m = matching_path.empty() ? MatchingAssignment::identity(g, palette)
                                               : io::parse_matching(io::read_file(matching_path), g, palette);
  auto c = find_coloring(g, lists, m);
  json rep{{"command", "color"}, {"colorable", c.has_value()}};
  if (c) {
    std::cout << "coloring found\n" << io::format_coloring(*c);
    rep["coloring"] = *c;
  } else {
    std::cout << "no DP-coloring for this cover\n";
  }
  sidecar(cfg, rep);
  return c ? kOk : kCertificate;
}

std::vector<Vertex> parse_order(const std::string& text) {
  std::vector<Vertex> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    int v = 0;
    if (!io::detail::parse_int(io::detail::trim(token), v)) throw Error(Errc::Parse, "bad order entry '" + token + "'");
    out.push_back(v);
  }
  return out;
}

int cmd_extend(const RunConfig& cfg, const std::string& input, const std::string& matching_path,
               const std::string& lists_path, const std::string& partial_path, const std::string& order_text, int k) {
  Graph g = io::parse_graph(read_input(input));
  ListAssignment lists = lists_path.empty() ? ListAssignment::uniform(g.order(), k)
                                            : io::parse_lists(io::read_file(lists_path), g.order());
  const int palette = std::max(lists.palette(), k);
  MatchingAssignment m = matching_path.empty() ? MatchingAssignment::identity(g, palette)
                                               : io::parse_matching(io::read_file(matching_path), g, palette);
  Coloring partial = io::parse_coloring(io::read_file(partial_path), g.order());
  auto order = parse_order(order_text);
  json rep{{"command", "extend"}, {"order", order}};

  StructuralCheck check = check_lemma2_structural(g, order, lists.uniform_size() > 0 ? lists.uniform_size() : k);
  std::cout << "structural conditions: " << (check.holds ? "hold" : "fail") << "\n";
  for (const auto& f : check.failures)
    std::cout << "  condition (" << f.condition << ")" << (f.index ? " at position " + std::to_string(f.index) : "")
              << ": " << f.reason << "\n";
  rep["structural"] = check.holds;

  int code = kOk;
  try {
    Coloring c = order.size() == 1 && g.degree(order[0]) < static_cast<int>(lists.list(order[0]).size())
                     ? min_degree_extend(g, order[0], lists, m, partial)
                     : extend_coloring(g, order, lists, m, partial);
    std::cout << "extension\n" << io::format_coloring(c);
    rep["coloring"] = c;
  } catch (const Error& e) {
    if (e.code() != Errc::ConditionsViolated) throw;
    std::cout << "no guaranteed extension: " << e.what() << "\n";
    rep["error"] = e.what();
    code = kCertificate;
  }
  sidecar(cfg, rep);
  return code;
}

int cmd_find_config(const RunConfig& cfg, const std::string& input, const std::vector<std::string>& patterns, int k,
                    bool search_order) {
  Graph g = io::parse_graph(read_input(input));
  json rep{{"command", "find-config"}, {"patterns", json::array()}};
  bool all = true;
  for (const auto& path : patterns) {
    ConfigPattern p = io::parse_pattern(io::read_file(path));
    CertifyOptions copt;
    copt.search_order = search_order;
    CertifyReport r = certify_reducible(g, p, k, copt);
    std::cout << "pattern " << p.name << ": " << r.occurrences.size() << " occurrence(s)"
              << (r.occurrences.empty() ? "" : r.reducible ? ", all reducible" : ", not all reducible") << "\n";
    json jp{{"name", p.name}, {"reducible", r.reducible}, {"occurrences", json::array()}};
    for (const auto& occ : r.occurrences) {
      std::cout << "  order";
      for (Vertex v : occ.order) std::cout << " " << v;
      std::cout << ": " << (occ.reducible ? "reducible" : "not certified") << "\n";
      for (const auto& f : occ.check.failures) std::cout << "    condition (" << f.condition << "): " << f.reason << "\n";
      jp["occurrences"].push_back({{"order", occ.order}, {"reducible", occ.reducible}});
    }
    all = all && r.reducible;
    rep["patterns"].push_back(jp);
  }
  sidecar(cfg, rep);
  return all ? kOk : kCertificate;
}

std::string element_label(const PlaneEmbedding& emb, Element e) {
  if (e.kind == Element::Kind::Vertex) return e.str() + " (degree " + std::to_string(emb.graph().degree(e.index)) + ")";
  return e.str() + " (length " + std::to_string(emb.face_length(e.index)) + ")";
}

int cmd_discharge(const RunConfig& cfg, const std::string& input, const std::string& variant_text, bool strict,
                  const std::string& log_path, const std::vector<std::string>& pattern_paths) {
  PlaneEmbedding emb = io::parse_embedding(read_input(input));
  const Variant variant = parse_variant(variant_text);
  const Graph& g = emb.graph();
  std::vector<ConfigPattern> patterns;
  for (const auto& p : pattern_paths) patterns.push_back(io::parse_pattern(io::read_file(p)));

  DischargeOptions dopt;
  dopt.strict = strict;
  DischargeResult r = apply_rules(emb, variant, dopt);
  AuditReport a = audit(emb, variant, patterns);
  const ChargeState& fin = r.final_state;

  std::cout << "embedding: " << g.order() << " vertices, " << g.size() << " edges, " << emb.face_count()
            << " faces\n";
  std::cout << "variant " << variant_name(variant) << " forbids " << variant_label(variant) << "; hypotheses "
            << (r.hypotheses_hold ? "hold" : "fail (lab mode)") << "\n";
  std::cout << "initial total " << to_short_fraction(r.initial.total()) << "\n";
  for (const auto& p : r.phases)
    std::cout << "phase " << p.phase << " " << p.name << ": " << p.transfers << " transfer(s), total "
              << to_short_fraction(p.total) << "\n";

  std::string transfers = fin.log.empty() ? "no transfers" : std::to_string(fin.log.size()) + " transfers";
  std::cout << "total " << to_short_fraction(fin.total()) << "; " << transfers << "; " << a.negative.size()
            << " negative elements\n";

  std::cout << "final charges\n";
  for (Vertex v = 0; v < g.order(); ++v)
    std::cout << "  " << element_label(emb, Element::vertex(v)) << ": " << to_short_fraction(r.initial.vertex[v])
              << " -> " << to_short_fraction(fin.vertex[v]) << "\n";
  for (int f = 0; f < emb.face_count(); ++f)
    std::cout << "  " << element_label(emb, Element::face(f)) << ": " << to_short_fraction(r.initial.face[f]) << " -> "
              << to_short_fraction(fin.face[f]) << "\n";

  std::cout << "classification\n";
  const RoleTables& roles = r.roles;
  for (Vertex v = 0; v < g.order(); ++v) {
    std::string line;
    if (roles.triangular[v]) line += " triangular";
    if (roles.special[v]) line += " special";
    for (auto [f, c] : roles.big_face_class[v]) line += std::string(" ") + vertex_class_name(c) + "@f" + std::to_string(f);
    if (!line.empty()) std::cout << "  v" << v << ":" << line << "\n";
  }
  for (int f = 0; f < emb.face_count(); ++f)
    if (roles.bad_five[f]) std::cout << "  f" << f << ": bad 5-face\n";
  for (const auto& gp : roles.good_pairs)
    std::cout << "  f" << gp.good_face << " good to f" << gp.poor_face << " across edge " << gp.edge << "\n";

  if (!a.findings.empty()) {
    std::cout << "findings\n";
    for (const auto& s : a.findings) std::cout << "  " << s << "\n";
  }
  if (!r.notes.empty() || !roles.review.empty()) {
    std::cout << "notes\n";
    for (const auto& s : roles.review) std::cout << "  review: " << s << "\n";
    for (const auto& s : r.notes) std::cout << "  " << s << "\n";
  }

  if (!log_path.empty()) write_text(log_path, io::format_transfer_log(fin));

  json neg = json::array();
  for (Element e : a.negative) neg.push_back(e.str());
  json phases = json::array();
  for (const auto& p : r.phases)
    phases.push_back({{"phase", p.phase}, {"name", p.name}, {"transfers", p.transfers}, {"total", to_fraction(p.total)}});
  sidecar(cfg, {{"command", "discharge"},
                {"variant", variant_name(variant)},
                {"hypotheses_hold", r.hypotheses_hold},
                {"total", to_fraction(fin.total())},
                {"transfers", fin.log.size()},
                {"phases", phases},
                {"negative", neg},
                {"findings", a.findings}});
  return kOk;
}

struct GraphOutcome {
  enum Kind { Skipped, Pass, Fail, Budget } kind = Skipped;
  std::string certificate;
};

int cmd_verify(const RunConfig& cfg, const std::string& variant_text, int n_max) {
  std::vector<Variant> variants;
  if (variant_text == "all") variants.assign(kAllVariants.begin(), kAllVariants.end());
  else variants.push_back(parse_variant(variant_text));

  std::vector<std::string> lines;
  for (std::string line; std::getline(std::cin, line);) {
    auto t = io::detail::trim(line);
    if (!t.empty() && t.front() != '#') lines.emplace_back(t);
  }
  std::vector<Graph> graphs;
  for (const auto& l : lines) graphs.push_back(parse_graph6(l));

  SolverOptions opt = solver_options(cfg, false);
  opt.jobs = 1;  // parallelism is across graphs here

  // Planarity and spectrum are shared by every variant.
  std::vector<char> eligible(graphs.size(), 0);
  std::vector<CycleSpectrum> spectra(graphs.size());
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].order() > n_max) continue;
    spectra[i] = cycle_spectrum(graphs[i], 9);
    eligible[i] = 1;
  }

  std::vector<std::vector<GraphOutcome>> out(variants.size(), std::vector<GraphOutcome>(graphs.size()));
  std::vector<char> planar(graphs.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < graphs.size();) {
      if (!eligible[i]) continue;
      bool any = false;
      for (Variant v : variants) any = any || satisfies(spectra[i], v);
      if (!any) continue;
      try {
        brute_force_embed(graphs[i], std::max(9, n_max));
        planar[i] = 1;
      } catch (const Error&) {
        continue;
      }
      bool colorable = false;
      std::optional<AdversaryCertificate> cert;
      bool budget = false;
      try {
        Verdict verdict = is_dp_k_colorable(graphs[i], 3, opt);
        colorable = verdict.colorable;
        cert = verdict.certificate;
      } catch (const BudgetExceeded&) {
        budget = true;
      }
      for (std::size_t vi = 0; vi < variants.size(); ++vi) {
        if (!satisfies(spectra[i], variants[vi])) continue;
        GraphOutcome& o = out[vi][i];
        o.kind = budget ? GraphOutcome::Budget : colorable ? GraphOutcome::Pass : GraphOutcome::Fail;
        if (o.kind == GraphOutcome::Fail && cert) o.certificate = io::format_certificate(graphs[i], *cert);
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < std::max(1u, cfg.jobs); ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::cout << "variant\tforbidden\tgraphs\tpass\tfail\tbudget\n";
  json rows = json::array();
  bool failed = false, over = false;
  for (std::size_t vi = 0; vi < variants.size(); ++vi) {
    int total = 0, pass = 0, fail = 0, budget = 0;
    for (const auto& o : out[vi]) {
      total += o.kind != GraphOutcome::Skipped;
      pass += o.kind == GraphOutcome::Pass;
      fail += o.kind == GraphOutcome::Fail;
      budget += o.kind == GraphOutcome::Budget;
    }
    if (total == 0 && graphs.empty()) continue;
    std::cout << variant_name(variants[vi]) << "\t" << variant_label(variants[vi]) << "\t" << total << "\t" << pass
              << "\t" << fail << "\t" << budget << "\n";
    rows.push_back({{"variant", variant_name(variants[vi])}, {"graphs", total}, {"pass", pass}, {"fail", fail},
                    {"budget", budget}});
    failed = failed || fail > 0;
    over = over || budget > 0;
  }
  for (std::size_t vi = 0; vi < variants.size(); ++vi)
    for (std::size_t i = 0; i < graphs.size(); ++i)
      if (out[vi][i].kind == GraphOutcome::Fail)
        std::cout << "refutation candidate (" << variant_name(variants[vi]) << "): " << lines[i] << "\n"
                  << out[vi][i].certificate;
  sidecar(cfg, {{"command", "verify-theorem2"}, {"rows", rows}});
  return failed ? kCertificate : over ? kBudget : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DP-coloring and discharging toolkit"};
  app.require_subcommand(1);
  RunConfig cfg;
  if (const char* env = std::getenv("DPCOLOR_BUDGET")) {
    try {
      cfg.budget = std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "error: DPCOLOR_BUDGET is not a number\n";
      return kInputError;
    }
  }
  app.option_defaults()->always_capture_default();
  app.add_option("--budget", cfg.budget, "maximum cases per k-test (env DPCOLOR_BUDGET)");
  app.add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--seed", cfg.seed, "seed recorded in reports for randomized runs");
  app.add_option("--json", cfg.json_path, "write a JSON report to this file");
  app.add_option("--bounds", cfg.bounds, "chromatic/degeneracy shortcuts: auto, on, off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  app.fallthrough();

  std::string input = "-", variant = "a", log_path, matching, lists, partial, order;
  std::vector<std::string> patterns;
  int k = 0, list_size = 3, n_max = 7;
  bool strict = false, search_order = false;

  auto with_input = [&](CLI::App* sub) { sub->add_option("input", input, "graph file (graph6 or edge list), - for stdin")->required(); };

  auto* cycles = app.add_subcommand("cycles", "cycle spectrum up to 9 and satisfied variants");
  with_input(cycles);
  auto* chi_cmd = app.add_subcommand("chi", "chromatic number");
  with_input(chi_cmd);
  auto* chil = app.add_subcommand("chi-list", "choosability, or a k-choosability test");
  auto* chid = app.add_subcommand("chi-dp", "DP-chromatic number, or a DP-k test");
  for (auto* s : {chil, chid}) {
    with_input(s);
    s->add_option("-k", k, "test this k only");
    s->add_option("--certificate", cfg.certificate_path, "where to write the adversary certificate")
        ->each([&](const std::string&) { cfg.certificate_requested = true; });
  }
  auto* color = app.add_subcommand("color", "find a DP-coloring of a given cover");
  with_input(color);
  color->add_option("--matching", matching, "matching file");
  color->add_option("--lists", lists, "list file");
  color->add_option("-k", list_size, "uniform list size when no list file is given")->default_val(3);
  auto* extend = app.add_subcommand("extend", "extend a partial coloring along an order");
  with_input(extend);
  extend->add_option("--matching", matching, "matching file");
  extend->add_option("--lists", lists, "list file");
  extend->add_option("--partial", partial, "coloring of G - H")->required();
  extend->add_option("--order", order, "comma-separated order v1,...,vl")->required();
  extend->add_option("-k", list_size, "uniform list size when no list file is given")->default_val(3);
  auto* find = app.add_subcommand("find-config", "locate patterns and certify them reducible");
  with_input(find);
  find->add_option("--pattern", patterns, "pattern file(s)")->required();
  find->add_option("-k", list_size, "list size")->default_val(3);
  find->add_flag("--search-order", search_order, "try every order of H (l <= 8)");
  auto* discharge = app.add_subcommand("discharge", "run the discharging rules on an embedding");
  discharge->add_option("input", input, "embedding JSON file, - for stdin")->required();
  discharge->add_option("--variant", variant, "a, b67 or b68")->check(CLI::IsMember({"a", "b67", "b68"}));
  discharge->add_flag("--strict", strict, "refuse when the cycle hypothesis fails");
  discharge->add_option("--log", log_path, "transfer log (TSV)");
  discharge->add_option("--pattern", patterns, "pattern file(s) to audit");
  auto* verify = app.add_subcommand("verify-theorem2", "DP-3 check over a graph6 stream on stdin");
  verify->add_option("--variant", variant, "a, b67, b68 or all")->check(CLI::IsMember({"a", "b67", "b68", "all"}));
  verify->add_option("--n-max", n_max, "largest order considered");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*cycles) return cmd_cycles(cfg, input);
    if (*chi_cmd) return cmd_chi(cfg, input);
    if (*chil) return cmd_number(cfg, input, k, false);
    if (*chid) return cmd_number(cfg, input, k, true);
    if (*color) return cmd_color(cfg, input, matching, lists, list_size);
    if (*extend) return cmd_extend(cfg, input, matching, lists, partial, order, list_size);
    if (*find) return cmd_find_config(cfg, input, patterns, list_size, search_order);
    if (*discharge) return cmd_discharge(cfg, input, variant, strict, log_path, patterns);
    if (*verify) return cmd_verify(cfg, variant, n_max);
  } catch (const BudgetExceeded& e) {
    std::cout << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
