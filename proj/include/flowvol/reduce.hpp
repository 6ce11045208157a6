#pragma once

// Subdividing flow polytopes F_G(2,0,...,0) by the reduction rules R1-R6.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flowvol/exact.hpp"
#include "flowvol/graph.hpp"

namespace flowvol {

enum class Rule { R1 = 1, R2, R3, R4, R5, R6 };

std::string rule_name(Rule r);
std::optional<Rule> parse_rule(const std::string& name);

// Consumes e1, e2 and produces G1 = G - e1 + new, G2 = G - e2 + new
// (for R5 the other way round, G1 = G - e2 + new):
//   R1 (a,i,-) (i,b,-)  a<i<b  new (a,b,-)
//   R2 (a,i,-) (i,b,+)  a<i<b  new (a,b,+)
//   R3 (a,i,-) (b,i,+)  a<b<i  new (a,b,+)
//   R4 (a,i,+) (b,i,-)  a<b<i  new (a,b,+)
//   R5 (a,i,-) (a,i,+)  a<i    new (a,a,+)
//   R6 (a,i,-) (i,i,+)  a<i    new (a,i,+)
std::pair<SignedGraph, SignedGraph> apply_reduction(const SignedGraph& g, Rule rule, const SignedEdge& e1,
                                                    const SignedEdge& e2);

struct RuleApplication {
  Rule rule = Rule::R1;
  SignedEdge e1;
  SignedEdge e2;
  Vertex at = 0;  // the vertex i being reduced at
};

// Every applicable (rule, e1, e2) up to parallel copies, largest vertex first.
std::vector<RuleApplication> applicable_reductions(const SignedGraph& g);

// Removes all loops; rejects loops away from vertex 1.
SignedGraph strip_loops_at_1(const SignedGraph& g);

struct SubdivisionNode {
  std::size_t id = 0;
  SignedGraph graph;
  std::optional<std::size_t> parent;
  std::optional<RuleApplication> rule;  // how this node was produced from its parent
  int child_index = 0;                  // 1 or 2; 0 at the root
  std::vector<std::size_t> children;
  long dimension = -2;                  // -2 if not computed
  std::optional<BigInt> volume;
  std::optional<std::size_t> same_as;   // memo hit: volume taken from this node
};

struct SubdivisionTree {
  std::vector<SubdivisionNode> nodes;

  std::vector<std::size_t> leaves() const;
  nlohmann::json to_json() const;
};

// Repeated R6 on K^C_{n+1} at vertices 2, ..., n+1 in turn; at each vertex
// the loop is paired with incoming negative edges longest first.
SubdivisionTree reduce_order_O(int n);

std::vector<SignedGraph> full_dimensional_leaves(const std::vector<SignedGraph>& leaves, long reference_dim);
std::vector<SignedGraph> leaf_graphs(const SubdivisionTree& tree);

struct ReductionOptions {
  std::size_t node_budget = 200000;
  bool record_tree = false;
};

struct ReductionResult {
  BigInt volume;
  long dimension = 0;
  std::size_t nodes = 0;
  std::size_t memo_hits = 0;
  std::size_t base_cases = 0;
  std::size_t degenerate_cuts = 0;
  SubdivisionTree tree;  // filled when record_tree is set
};

// Normalized volume of F_G(2,0,...,0) by recursive subdivision; irreducible
// graphs fall back to the Ehrhart computation.
ReductionResult volume_via_reduction(const SignedGraph& g, const ReductionOptions& options = {});

}  // namespace flowvol
