// flowvol: command-line front end.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "flowvol/ct.hpp"
#include "flowvol/dynflow.hpp"
#include "flowvol/errors.hpp"
#include "flowvol/kostant.hpp"
#include "flowvol/reduce.hpp"
#include "flowvol/verify.hpp"
#include "json.hpp"

using namespace flowvol;
using nlohmann::json;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GraphOptions {
  std::string family;
  long n = -1;
  std::string graph;
  std::string netflow;
  std::string loops = "all";
};

struct Output {
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void add_graph_options(CLI::App* sub, GraphOptions& g) {
  sub->add_option("--family", g.family, "cry, cryd, cryc or family-G")->check(CLI::IsMember({"cry", "cryd", "cryc", "family-G"}));
  sub->add_option("--n", g.n, "family index (graph on n+1 vertices)");
  sub->add_option("--graph", g.graph,
                  "fig1, fig2, counterexample-volD, zero-test, K:m, KD:m, KC:m, KCfirst:m, G:a1,...,am or a .json file");
  sub->add_option("--netflow", g.netflow, "comma-separated integers");
  sub->add_option("--loops", g.loops, "loop range for cryc: all (1..n+1) or first (1..n)")
      ->check(CLI::IsMember({"all", "first"}));
}

void add_format(CLI::App* sub, Output& out, const std::string& dflt = "text") {
  out.format = dflt;
  sub->add_option("--format", out.format, "text, tsv or json")->check(CLI::IsMember({"text", "tsv", "json"}));
}

int parse_count(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size() || v < 1) throw std::invalid_argument(what);
    return v;
  } catch (const std::exception&) {
    throw UsageError("bad " + what + " '" + s + "'");
  }
}

LoopRange loop_range(const GraphOptions& o) { return o.loops == "first" ? LoopRange::FirstN : LoopRange::AllVertices; }

SignedGraph resolve_graph(const GraphOptions& o) {
  if (!o.graph.empty() && !o.family.empty()) throw UsageError("give either --graph or --family, not both");
  if (!o.graph.empty()) {
    if (auto g = named_graph(o.graph)) return *g;
    const auto colon = o.graph.find(':');
    if (colon != std::string::npos) {
      const auto kind = o.graph.substr(0, colon), arg = o.graph.substr(colon + 1);
      if (kind == "K") return make_complete_typeA(parse_count(arg, "vertex count"));
      if (kind == "KD") return make_complete_D(parse_count(arg, "vertex count"));
      if (kind == "KC") return make_complete_C(parse_count(arg, "vertex count"));
      if (kind == "KCfirst") return make_complete_C(parse_count(arg, "vertex count"), LoopRange::FirstN);
      if (kind == "G") {
        try {
          return make_family_graph(parse_netflow(arg));
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
    }
    if (std::filesystem::exists(o.graph)) {
      std::ifstream in(o.graph);
      try {
        return graph_from_json(json::parse(in));
      } catch (const std::exception& e) {
        throw UsageError("cannot read graph file '" + o.graph + "': " + e.what());
      }
    }
    throw UsageError("unknown graph '" + o.graph + "'");
  }
  if (o.family.empty()) throw UsageError("a graph is required: use --graph or --family with --n");
  if (o.n < 1) throw UsageError("--family needs --n >= 1");
  const int n1 = static_cast<int>(o.n + 1);
  if (o.family == "cry") {
    if (o.n < 2) throw UsageError("cry needs --n >= 2");
    return make_complete_typeA(n1);
  }
  if (o.family == "cryd") return make_complete_D(n1);
  if (o.family == "cryc") return make_complete_C(n1, loop_range(o));
  throw UsageError("family '" + o.family + "' names several graphs; use the graph command");
}

Netflow resolve_netflow(const GraphOptions& o, const SignedGraph& g) {
  Netflow a;
  if (!o.netflow.empty()) {
    try {
      a = parse_netflow(o.netflow);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  } else if (o.family == "cry") {
    a.assign(static_cast<std::size_t>(g.vertex_count()), 0);
    a.front() = 1;
    a.back() = -1;
  } else {
    a = unit_source_netflow(g.vertex_count());
  }
  if (static_cast<int>(a.size()) != g.vertex_count()) {
    throw UsageError("netflow has " + std::to_string(a.size()) + " entries but the graph has " +
                     std::to_string(g.vertex_count()) + " vertices");
  }
  return a;
}

bool is_unit_source(const Netflow& a) { return a == unit_source_netflow(static_cast<int>(a.size())); }

bool is_full_cryc(const GraphOptions& o, const SignedGraph& g) {
  return g == make_complete_C(g.vertex_count()) && (o.family == "cryc" || o.graph.rfind("KC:", 0) == 0);
}

json header(const std::string& command, const SignedGraph& g, const Netflow& a) {
  return {{"command", command}, {"graph", to_json(g)}, {"netflow", a}};
}

void print(const Output& out, const json& j, const std::string& text) {
  if (out.json()) {
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  }
}

// ---- volume --------------------------------------------------------------

int cmd_volume(const GraphOptions& go, const std::string& method, std::size_t budget, const Output& out) {
  const auto g = resolve_graph(go);
  const auto a = resolve_netflow(go, g);
  auto j = header("volume", g, a);
  j["method"] = method;
  BigInt vol;
  if (method == "ehrhart") {
    auto e = ehrhart_volume(g, a);
    vol = e.volume;
    j["dimension"] = e.dimension;
  } else if (method == "reduction") {
    if (!is_unit_source(a)) throw UsageError("the reduction method needs netflow (2,0,...,0)");
    auto r = volume_via_reduction(g, {budget, false});
    vol = r.volume;
    j["dimension"] = r.dimension;
    j["nodes"] = r.nodes;
  } else {
    if (!is_unit_source(a)) throw UsageError("the dynamic method needs netflow (2,0,...,0)");
    if (is_full_cryc(go, g)) {
      // Decomposition into the family plus the bijection: a dynamic count on K^C.
      vol = kdyn(g, staircase_netflow(g.vertex_count()));
      j["pipeline"] = "cryc";
    } else if (g.has_loops()) {
      throw UsageError("the dynamic method needs a loopless graph (or the cryc family)");
    } else {
      vol = volume_via_thm_volD(g);
      j["pipeline"] = "loopless";
    }
  }
  j["volume"] = to_string(vol);
  print(out, j, to_string(vol));
  return 0;
}

// ---- count ---------------------------------------------------------------

int cmd_count(const std::string& kind, const GraphOptions& go, const std::string& method, const Output& out) {
  const auto g = resolve_graph(go);
  const auto a = resolve_netflow(go, g);
  BigInt c;
  if (kind == "kpf") {
    if (method != "dp" && method != "enumerate") throw UsageError("kpf supports --method dp or enumerate");
    c = method == "dp" ? kpf(g, a) : BigInt(static_cast<long>(enumerate_flows(g, a).size()));
  } else {
    if (method == "dp") {
      c = kdyn(g, a);
    } else if (method == "enumerate") {
      c = static_cast<long>(enumerate_dynamic_flows(g, a).size());
    } else {
      c = kdyn_via_series(g, a);
    }
  }
  auto j = header("count", g, a);
  j["kind"] = kind;
  j["method"] = method;
  j["count"] = to_string(c);
  print(out, j, to_string(c));
  return 0;
}

// ---- verify --------------------------------------------------------------

int cmd_verify(const std::string& suite, const SuiteOptions& so, bool timing, const Output& out) {
  auto reports = run_suite(suite, so);
  const bool ok = all_ok(reports);
  if (out.json()) {
    json j{{"command", "verify"}, {"suite", suite}, {"ok", ok}, {"reports", json::array()}};
    for (const auto& r : reports) j["reports"].push_back(to_json(r, timing));
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << reports_tsv(reports, timing);
  }
  return ok ? 0 : 1;
}

// ---- ct ------------------------------------------------------------------

struct CtOptions {
  std::string expr;
  std::string identity;
  long n = -1;
  long a = -1, b = 0;
  std::string c = "1/2";
  std::string backend = "residue";
  bool show = false;
  bool literal = false;
};

int cmd_ct(const CtOptions& o, const Output& out) {
  if (o.expr.empty() == o.identity.empty()) throw UsageError("give exactly one of --expr or --identity");
  CTExpression e;
  std::optional<Rational> rhs;
  json j{{"command", "ct"}};
  if (!o.expr.empty()) {
    try {
      e = parse_ct(o.expr);
    } catch (const std::invalid_argument& err) {
      throw UsageError(err.what());
    }
  } else {
    if (o.n < 0) throw UsageError("--identity needs --n");
    MorrisParams p{o.n, 0, 0, 1};
    if (o.identity == "morris" || o.identity == "thmC") {
      if (o.a < 0) throw UsageError("--identity " + o.identity + " needs --a");
      try {
        p = MorrisParams::with_c(o.n, o.a, o.b, parse_rational(o.c));
      } catch (const std::invalid_argument& err) {
        throw UsageError(err.what());
      }
    }
    if (o.identity == "cry") {
      e = build_cry_lhs(o.n);
      rhs = Rational(cry_volume_formula(o.n + 2));
    } else if (o.identity == "cryd") {
      e = build_cryd_lhs(o.n);
      rhs = Rational(cryd_volume_formula(o.n));
    } else if (o.identity == "cryc") {
      e = build_cryc_lhs(o.n);
      rhs = Rational(cryc_volume_formula(o.n));
    } else if (o.identity == "morris") {
      e = build_morris_lhs(p);
      rhs = morris_rhs(p);
    } else if (o.identity == "thmC") {
      e = build_thmC_lhs(p, o.literal);
      rhs = thmC_rhs(p);
    } else if (o.identity == "staircase") {
      e = build_reduced_staircase_expr(o.n);
      rhs = Rational(cryc_volume_formula(o.n));
    } else {
      throw UsageError("unknown identity '" + o.identity + "'");
    }
    j["identity"] = o.identity;
  }
  j["expression"] = format_ct(e);
  std::ostringstream text;
  if (o.show) text << format_ct(e) << '\n';
  std::optional<Rational> value;
  bool ok = true;
  if (o.backend == "residue" || o.backend == "both") {
    value = iterated_ct(e);
    j["value"] = to_string(*value);
  }
  if (o.backend == "series" || o.backend == "both") {
    auto s = iterated_ct_series(e);
    j["series"] = {{"value", to_string(s.value)}, {"order", s.order}, {"stable", s.stable}};
    ok = ok && s.stable;
    if (value) {
      ok = ok && s.value == *value;
    } else {
      value = s.value;
      j["value"] = to_string(s.value);
    }
  }
  text << to_string(*value);
  if (rhs) {
    j["rhs"] = to_string(*rhs);
    j["equal"] = *value == *rhs;
    ok = ok && *value == *rhs;
    text << '\t' << "rhs=" << to_string(*rhs) << '\t' << (*value == *rhs ? "pass" : "fail");
  }
  print(out, j, text.str());
  return ok ? 0 : 1;
}

// ---- ehrhart -------------------------------------------------------------

int cmd_ehrhart(const GraphOptions& go, const Output& out) {
  const auto g = resolve_graph(go);
  const auto a = resolve_netflow(go, g);
  auto e = ehrhart_volume(g, a);
  auto j = header("ehrhart", g, a);
  j["dimension"] = e.dimension;
  j["polynomial"] = e.polynomial.to_string("t");
  j["volume"] = to_string(e.volume);
  j["table"] = json::array();
  for (const auto& [t, c] : e.table) j["table"].push_back({{"t", t}, {"count", to_string(c)}});
  if (out.format == "tsv") {
    std::cout << ehrhart_table_tsv(e.table);
    return 0;
  }
  std::ostringstream text;
  text << "dimension\t" << e.dimension << "\npolynomial\t" << e.polynomial.to_string("t") << "\nvolume\t"
       << to_string(e.volume) << '\n';
  print(out, j, text.str());
  return 0;
}

// ---- flows ---------------------------------------------------------------

int cmd_flows(const std::string& kind, const GraphOptions& go, std::size_t limit, const Output& out) {
  const auto g = resolve_graph(go);
  const auto a = resolve_netflow(go, g);
  auto j = header("flows", g, a);
  j["kind"] = kind;
  json flows = json::array();
  std::size_t total = 0;
  std::ostringstream text;
  if (kind == "kpf") {
    for (std::size_t k = 0; k < g.edge_count(); ++k) text << (k ? "\t" : "") << g.edge(k).to_string();
    text << '\n';
    KostantCounter counter(g);
    counter.enumerate(a, [&](const IntegerFlow& b) {
      if (limit == 0 || total < limit) {
        flows.push_back(b);
        for (std::size_t k = 0; k < b.size(); ++k) text << (k ? "\t" : "") << b[k];
        text << '\n';
      }
      ++total;
    });
  } else {
    enumerate_dynamic_flows(g, a, [&](const DynamicFlow& f) {
      if (limit == 0 || total < limit) {
        flows.push_back(to_json(f));
        text << to_json(f).dump() << '\n';
      }
      ++total;
    });
  }
  j["count"] = total;
  j["truncated"] = limit != 0 && total > limit;
  j["flows"] = std::move(flows);
  print(out, j, text.str());
  return 0;
}

// ---- reduce --------------------------------------------------------------

int cmd_reduce(const GraphOptions& go, bool order, std::size_t budget, const Output& out) {
  json j{{"command", "reduce"}};
  std::ostringstream text;
  if (order) {
    if (go.n < 1) throw UsageError("--order needs --n >= 1");
    if (!go.graph.empty() || (!go.family.empty() && go.family != "cryc")) {
      throw UsageError("--order always starts from K^C_{n+1}; drop --graph/--family");
    }
    auto tree = reduce_order_O(static_cast<int>(go.n));
    const int n1 = static_cast<int>(go.n + 1);
    const long ref = polytope_dimension(make_complete_C(n1), unit_source_netflow(n1));
    auto leaves = leaf_graphs(tree);
    auto full = full_dimensional_leaves(leaves, ref);
    j["mode"] = "order";
    j["n"] = go.n;
    j["leaves"] = leaves.size();
    j["full_dimensional"] = json::array();
    text << "leaves\t" << leaves.size() << "\nfull_dimensional\t" << full.size() << '\n';
    for (const auto& g : full) {
      auto s = strip_loops_at_1(g);
      j["full_dimensional"].push_back(to_json(s));
      text << s.shape_key() << '\n';
    }
    j["tree"] = tree.to_json();
  } else {
    const auto g = resolve_graph(go);
    const auto a = resolve_netflow(go, g);
    if (!is_unit_source(a)) throw UsageError("reduction needs netflow (2,0,...,0)");
    auto r = volume_via_reduction(g, {budget, true});
    j["mode"] = "volume";
    j["graph"] = to_json(g);
    j["volume"] = to_string(r.volume);
    j["dimension"] = r.dimension;
    j["nodes"] = r.nodes;
    j["memo_hits"] = r.memo_hits;
    j["base_cases"] = r.base_cases;
    j["degenerate_cuts"] = r.degenerate_cuts;
    j["tree"] = r.tree.to_json();
    text << "volume\t" << to_string(r.volume) << "\ndimension\t" << r.dimension << "\nnodes\t" << r.nodes
         << "\nmemo_hits\t" << r.memo_hits << "\nbase_cases\t" << r.base_cases << '\n';
  }
  print(out, j, text.str());
  return 0;
}

// ---- graph ---------------------------------------------------------------

std::string graph_text(const SignedGraph& g) {
  std::ostringstream os;
  os << g.vertex_count() << " vertices:";
  for (const auto& e : g.edges()) os << ' ' << e.to_string();
  return os.str();
}

int cmd_graph(const GraphOptions& go, const Output& out) {
  json j{{"command", "graph"}};
  std::ostringstream text;
  if (go.family == "family-G") {
    if (go.n < 1) throw UsageError("family-G needs --n >= 1");
    j["graphs"] = json::array();
    for (const auto& a : family_vectors(static_cast<int>(go.n + 1))) {
      auto g = make_family_graph(a);
      j["graphs"].push_back({{"a", a}, {"graph", to_json(g)}});
      text << netflow_to_string(a) << '\t' << graph_text(g) << '\n';
    }
  } else {
    auto g = resolve_graph(go);
    j["graph"] = to_json(g);
    text << graph_text(g);
  }
  print(out, j, text.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact volumes of flow polytopes of signed graphs"};
  app.require_subcommand(1);

  GraphOptions go;
  Output out;
  std::string method;
  std::string kind;
  std::size_t budget = 200000;
  std::size_t limit = 1000;

  auto* volume = app.add_subcommand("volume", "normalized volume of F_G(a)");
  add_graph_options(volume, go);
  add_format(volume, out);
  volume->add_option("--method", method, "ehrhart, reduction or dynamic")
      ->check(CLI::IsMember({"ehrhart", "reduction", "dynamic"}))
      ->default_val("ehrhart");
  volume->add_option("--budget", budget, "node budget for the reduction method");

  auto* count = app.add_subcommand("count", "Kostant partition function or its dynamic variant");
  count->add_option("kind", kind, "kpf or kdyn")->required()->check(CLI::IsMember({"kpf", "kdyn"}));
  add_graph_options(count, go);
  add_format(count, out);
  std::string count_method = "dp";
  count->add_option("--method", count_method, "dp, enumerate or series (kdyn only)")
      ->check(CLI::IsMember({"dp", "enumerate", "series"}));

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite;
  SuiteOptions so;
  bool no_timing = false;
  verify->add_option("suite", suite, "suite name")->required()->check(CLI::IsMember(suite_names()));
  verify->add_option("--n", so.max_n, "largest n to check");
  verify->add_option("--corpus", so.corpus, "graph corpus for thm-volD")->check(CLI::IsMember({"loopless"}));
  verify->add_option("--jobs", so.jobs, "worker threads")->check(CLI::PositiveNumber);
  verify->add_option("--seed", so.seed, "seed for random corpora");
  verify->add_option("--graphs", so.random_graphs, "random graphs in thm-volD")->check(CLI::PositiveNumber);
  verify->add_flag("--no-timing", no_timing, "report zero elapsed time (byte-identical output)");
  add_format(verify, out, "tsv");

  auto* ct = app.add_subcommand("ct", "iterated constant term");
  CtOptions co;
  ct->add_option("--expr", co.expr, "expression, e.g. \"CT[x2,x1] x1^-1 * (1 - x1)^-2 * (x2 - x1)^-1\"");
  ct->add_option("--identity", co.identity, "cry, cryd, cryc, morris, thmC or staircase");
  ct->add_option("--n", co.n, "size parameter");
  ct->add_option("--a", co.a, "Morris a");
  ct->add_option("--b", co.b, "Morris b");
  ct->add_option("--c", co.c, "Morris c (half-integer, e.g. 1/2)");
  ct->add_option("--backend", co.backend, "residue, series or both")->check(CLI::IsMember({"residue", "series", "both"}));
  ct->add_flag("--show", co.show, "print the expression");
  ct->add_flag("--literal-order", co.literal, "thmC with (x_j - x_k), j < k");
  add_format(ct, out);

  auto* ehrhart = app.add_subcommand("ehrhart", "Ehrhart polynomial t -> K_G(t a)");
  add_graph_options(ehrhart, go);
  add_format(ehrhart, out);

  auto* flows = app.add_subcommand("flows", "list integer or dynamic flows");
  flows->add_option("kind", kind, "kpf or kdyn")->required()->check(CLI::IsMember({"kpf", "kdyn"}));
  add_graph_options(flows, go);
  flows->add_option("--limit", limit, "print at most this many (0: all)");
  add_format(flows, out);

  auto* reduce = app.add_subcommand("reduce", "subdivision by the reduction rules");
  add_graph_options(reduce, go);
  bool order = false;
  reduce->add_flag("--order", order, "apply the fixed R6 order to K^C_{n+1} and list the leaves");
  reduce->add_option("--budget", budget, "node budget");
  add_format(reduce, out);

  auto* graph = app.add_subcommand("graph", "print a graph");
  add_graph_options(graph, go);
  add_format(graph, out);

  unsigned jobs_unused = 1;
  for (auto* sub : {volume, count, ct, ehrhart, flows, reduce, graph}) {
    sub->add_option("--jobs", jobs_unused, "accepted for uniformity; only verify runs in parallel");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*volume) return cmd_volume(go, method, budget, out);
    if (*count) return cmd_count(kind, go, count_method, out);
    if (*verify) return cmd_verify(suite, so, !no_timing, out);
    if (*ct) return cmd_ct(co, out);
    if (*ehrhart) return cmd_ehrhart(go, out);
    if (*flows) return cmd_flows(kind, go, limit, out);
    if (*reduce) return cmd_reduce(go, order, budget, out);
    if (*graph) return cmd_graph(go, out);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
