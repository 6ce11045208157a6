#include "flowvol/reduce.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>

#include "flowvol/errors.hpp"
#include "flowvol/kostant.hpp"
#include "flowvol/linalg.hpp"

namespace flowvol {

std::string rule_name(Rule r) { return "R" + std::to_string(static_cast<int>(r)); }

std::optional<Rule> parse_rule(const std::string& name) {
  if (name.size() == 2 && (name[0] == 'R' || name[0] == 'r') && name[1] >= '1' && name[1] <= '6') {
    return static_cast<Rule>(name[1] - '0');
  }
  return std::nullopt;
}

namespace {

bool is_minus(const SignedEdge& e) { return !e.is_positive(); }
bool is_plus_nonloop(const SignedEdge& e) { return e.is_positive() && !e.is_loop(); }

// The new edge and the vertex reduced at, or nullopt if (e1, e2) does not fit.
std::optional<std::pair<SignedEdge, Vertex>> match(Rule rule, const SignedEdge& e1, const SignedEdge& e2) {
  switch (rule) {
    case Rule::R1:
      if (is_minus(e1) && is_minus(e2) && e1.j == e2.i && e1.i < e1.j && e2.i < e2.j) {
        return std::pair{minus_edge(e1.i, e2.j), e1.j};
      }
      break;
    case Rule::R2:
      if (is_minus(e1) && is_plus_nonloop(e2) && e1.j == e2.i && e1.i < e1.j) {
        return std::pair{plus_edge(e1.i, e2.j), e1.j};
      }
      break;
    case Rule::R3:
      if (is_minus(e1) && is_plus_nonloop(e2) && e1.j == e2.j && e1.i < e2.i) {
        return std::pair{plus_edge(e1.i, e2.i), e1.j};
      }
      break;
    case Rule::R4:
      if (is_plus_nonloop(e1) && is_minus(e2) && e1.j == e2.j && e1.i < e2.i) {
        return std::pair{plus_edge(e1.i, e2.i), e1.j};
      }
      break;
    case Rule::R5:
      if (is_minus(e1) && is_plus_nonloop(e2) && e1.i == e2.i && e1.j == e2.j) {
        return std::pair{loop_edge(e1.i), e1.j};
      }
      break;
    case Rule::R6:
      if (is_minus(e1) && e2.is_loop() && e1.j == e2.i) return std::pair{plus_edge(e1.i, e1.j), e1.j};
      break;
  }
  return std::nullopt;
}

constexpr Rule kRules[] = {Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6};

}  // namespace

std::pair<SignedGraph, SignedGraph> apply_reduction(const SignedGraph& g, Rule rule, const SignedEdge& e1,
                                                    const SignedEdge& e2) {
  if (!g.contains(e1) || !g.contains(e2)) {
    throw std::invalid_argument("edge not in graph: " + (g.contains(e1) ? e2 : e1).to_string());
  }
  if (e1 == e2) throw std::invalid_argument("a reduction needs two distinct edges");
  auto m = match(rule, e1, e2);
  if (!m) {
    throw std::invalid_argument(rule_name(rule) + " does not apply to " + e1.to_string() + ", " + e2.to_string());
  }
  const auto& n = m->first;
  // R5 is the one rule whose first child drops the second edge.
  const auto& first = rule == Rule::R5 ? e2 : e1;
  const auto& second = rule == Rule::R5 ? e1 : e2;
  return {g.without_edge(first).with_edge(n.i, n.j, n.sign), g.without_edge(second).with_edge(n.i, n.j, n.sign)};
}

std::vector<RuleApplication> applicable_reductions(const SignedGraph& g) {
  std::vector<RuleApplication> out;
  std::set<std::tuple<int, std::tuple<int, int, int>, std::tuple<int, int, int>>> seen;
  auto shape = [](const SignedEdge& e) { return std::tuple{e.i, e.j, static_cast<int>(e.sign)}; };
  const auto& es = g.edges();
  for (std::size_t x = 0; x < es.size(); ++x) {
    for (std::size_t y = 0; y < es.size(); ++y) {
      if (x == y) continue;
      for (Rule r : kRules) {
        auto m = match(r, es[x], es[y]);
        if (!m) continue;
        if (!seen.insert({static_cast<int>(r), shape(es[x]), shape(es[y])}).second) continue;
        out.push_back({r, es[x], es[y], m->second});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const RuleApplication& p, const RuleApplication& q) {
    return std::tuple{-p.at, static_cast<int>(p.rule), p.e1, p.e2} <
           std::tuple{-q.at, static_cast<int>(q.rule), q.e1, q.e2};
  });
  return out;
}

SignedGraph strip_loops_at_1(const SignedGraph& g) {
  std::vector<SignedEdge> kept;
  for (const auto& e : g.edges()) {
    if (!e.is_loop()) {
      kept.push_back(e);
    } else if (e.i != 1) {
      throw std::invalid_argument("loop " + e.to_string() + " is not at vertex 1");
    }
  }
  return SignedGraph(g.vertex_count(), kept);
}

std::vector<std::size_t> SubdivisionTree::leaves() const {
  std::vector<std::size_t> out;
  for (const auto& n : nodes) {
    if (n.children.empty()) out.push_back(n.id);
  }
  return out;
}

nlohmann::json SubdivisionTree::to_json() const {
  auto arr = nlohmann::json::array();
  for (const auto& n : nodes) {
    nlohmann::json j;
    j["id"] = n.id;
    j["edges"] = flowvol::to_json(n.graph)["edges"];
    j["parent"] = n.parent ? nlohmann::json(*n.parent) : nlohmann::json(nullptr);
    if (n.rule) {
      j["rule"] = {{"name", rule_name(n.rule->rule)},
                   {"e1", edge_to_json(n.rule->e1)},
                   {"e2", edge_to_json(n.rule->e2)},
                   {"vertex", n.rule->at},
                   {"child", n.child_index}};
    } else {
      j["rule"] = nullptr;
    }
    j["children"] = n.children;
    if (n.dimension >= -1) j["dimension"] = n.dimension;
    if (n.volume) j["volume"] = to_string(*n.volume);
    if (n.same_as) j["same_as"] = *n.same_as;
    arr.push_back(std::move(j));
  }
  return {{"vertices", nodes.empty() ? 0 : nodes.front().graph.vertex_count()}, {"nodes", arr}};
}

SubdivisionTree reduce_order_O(int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  SubdivisionTree tree;
  tree.nodes.push_back({0, make_complete_C(n + 1), std::nullopt, std::nullopt, 0, {}, -2, {}, {}});
  auto add_child = [&](std::size_t parent, SignedGraph g, const RuleApplication& app, int idx) {
    const std::size_t id = tree.nodes.size();
    tree.nodes.push_back({id, std::move(g), parent, app, idx, {}, -2, {}, {}});
    tree.nodes[parent].children.push_back(id);
    return id;
  };
  std::vector<std::size_t> frontier{0};
  for (Vertex v = 2; v <= n + 1; ++v) {
    std::vector<std::size_t> next;
    for (std::size_t id : frontier) {
      std::size_t cur = id;
      for (;;) {
        const auto& g = tree.nodes[cur].graph;
        std::optional<SignedEdge> loop, incoming;
        for (const auto& e : g.edges()) {
          if (e.is_loop() && e.i == v && !loop) loop = e;
          // Canonical order puts (1,v,-) before (2,v,-): longest first.
          if (is_minus(e) && e.j == v && !incoming) incoming = e;
        }
        if (!loop || !incoming) break;
        RuleApplication app{Rule::R6, *incoming, *loop, v};
        auto [g1, g2] = apply_reduction(g, Rule::R6, *incoming, *loop);
        const std::size_t c1 = add_child(cur, std::move(g1), app, 1);
        const std::size_t c2 = add_child(cur, std::move(g2), app, 2);
        next.push_back(c2);
        cur = c1;
      }
      next.push_back(cur);
    }
    frontier = std::move(next);
  }
  return tree;
}

std::vector<SignedGraph> leaf_graphs(const SubdivisionTree& tree) {
  std::vector<SignedGraph> out;
  for (auto id : tree.leaves()) out.push_back(tree.nodes[id].graph);
  return out;
}

std::vector<SignedGraph> full_dimensional_leaves(const std::vector<SignedGraph>& leaves, long reference_dim) {
  std::vector<SignedGraph> out;
  for (const auto& g : leaves) {
    if (polytope_is_empty(g, unit_source_netflow(g.vertex_count()))) continue;
    if (polytope_dimension(g, unit_source_netflow(g.vertex_count())) == reference_dim) out.push_back(g);
  }
  return out;
}

namespace {

class Reducer {
 public:
  Reducer(const ReductionOptions& opts, int vertex_count)
      : opts_(opts), a_(unit_source_netflow(vertex_count)) {}

  ReductionResult run(const SignedGraph& g) {
    auto [vol, id] = solve(g, std::nullopt, std::nullopt, 0);
    (void)id;
    result_.volume = vol;
    if (opts_.record_tree) result_.tree = std::move(tree_);
    return std::move(result_);
  }

 private:
  struct Memo {
    BigInt volume;
    std::size_t node;
  };

  const ReductionOptions& opts_;
  Netflow a_;
  std::map<std::string, Memo> memo_;
  ReductionResult result_;
  SubdivisionTree tree_;

  long dimension_or_empty(const SignedGraph& g) const {
    try {
      return polytope_dimension(g, a_);
    } catch (const EmptyPolytopeError&) {
      return -1;
    }
  }

  // phi = x_{e1} - x_{e2} is constant on the affine hull iff it lies in the
  // row space of the incidence matrix.
  static bool cut_is_degenerate(const SignedGraph& g, const RuleApplication& app) {
    auto m = incidence_matrix(g);
    const long r = matrix_rank(m);
    std::vector<int> phi(g.edge_count(), 0);
    phi[*g.find(app.e1)] += 1;
    phi[*g.find(app.e2)] -= 1;
    m.push_back(phi);
    return matrix_rank(m) == r;
  }

  std::size_t record(const SignedGraph& g, std::optional<std::size_t> parent,
                     const std::optional<RuleApplication>& app, int child) {
    if (!opts_.record_tree) return 0;
    const std::size_t id = tree_.nodes.size();
    tree_.nodes.push_back({id, g, parent, app, child, {}, -2, {}, {}});
    if (parent) tree_.nodes[*parent].children.push_back(id);
    return id;
  }

  std::pair<BigInt, std::size_t> solve(const SignedGraph& input, std::optional<std::size_t> parent,
                                       const std::optional<RuleApplication>& app, int child) {
    if (++result_.nodes > opts_.node_budget) {
      throw NodeBudgetError("reduction exceeded " + std::to_string(opts_.node_budget) + " nodes");
    }
    const auto info = analyze_polytope(input, a_);
    const SignedGraph g = input.without_edges(info.forced_zero);
    const std::size_t id = record(g, parent, app, child);
    if (opts_.record_tree) tree_.nodes[id].dimension = info.dimension;
    if (!parent) result_.dimension = info.dimension;

    auto finish = [&](BigInt v) {
      if (opts_.record_tree) tree_.nodes[id].volume = v;
      return std::pair{std::move(v), id};
    };

    const auto key = g.shape_key();
    if (auto it = memo_.find(key); it != memo_.end()) {
      ++result_.memo_hits;
      if (opts_.record_tree) tree_.nodes[id].same_as = it->second.node;
      return finish(it->second.volume);
    }

    const auto apps = applicable_reductions(g);
    BigInt vol;
    if (apps.empty()) {
      ++result_.base_cases;
      vol = normalized_volume_ehrhart(g, a_);
    } else {
      const auto& step = apps.front();
      auto [g1, g2] = apply_reduction(g, step.rule, step.e1, step.e2);
      const long d = info.dimension;
      const long d1 = dimension_or_empty(g1);
      const long d2 = dimension_or_empty(g2);
      if (cut_is_degenerate(g, step)) {
        // The whole polytope lies on one side of the cut; both children
        // may even coincide with it, so only one is counted.
        ++result_.degenerate_cuts;
        if (d1 == d) {
          vol = solve(g1, id, step, 1).first;
        } else if (d2 == d) {
          vol = solve(g2, id, step, 2).first;
        } else {
          throw std::logic_error("degenerate cut without a full-dimensional side at " + g.shape_key());
        }
      } else if (d1 == d && d2 == d) {
        vol = solve(g1, id, step, 1).first + solve(g2, id, step, 2).first;
      } else if (d1 == d && d2 < d) {
        vol = solve(g1, id, step, 1).first;
      } else if (d2 == d && d1 < d) {
        vol = solve(g2, id, step, 2).first;
      } else {
        throw std::logic_error("reduction children of dimension " + std::to_string(d1) + ", " +
                               std::to_string(d2) + " under parent dimension " + std::to_string(d));
      }
    }
    memo_[key] = {vol, id};
    return finish(std::move(vol));
  }
};

}  // namespace

ReductionResult volume_via_reduction(const SignedGraph& g, const ReductionOptions& options) {
  return Reducer(options, g.vertex_count()).run(g);
}

}  // namespace flowvol
