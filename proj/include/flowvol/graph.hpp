#pragma once

// Signed multigraphs with loops on the vertex set [n+1] = {1, ..., n+1}.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace flowvol {

using Vertex = int;
using Netflow = std::vector<std::int64_t>;

enum class Sign : std::uint8_t { Minus = 0, Plus = 1 };

char sign_char(Sign s);

/// An edge (i, j, sign) with i <= j. Loops are (i, i, +). Parallel copies of
/// the same (i, j, sign) carry distinct tags, so (i,v,+) and (i,v,+)^1 are
/// tags 0 and 1.
struct SignedEdge {
  Vertex i = 1;
  Vertex j = 2;
  Sign sign = Sign::Minus;
  int tag = 0;

  bool is_loop() const { return i == j; }
  bool is_positive() const { return sign == Sign::Plus; }
  // Ignores the tag.
  bool same_shape(const SignedEdge& other) const {
    return i == other.i && j == other.j && sign == other.sign;
  }
  std::string to_string() const;

  // Canonical order: lexicographic by (i, j, sign, tag), with - before +.
  friend auto operator<=>(const SignedEdge&, const SignedEdge&) = default;
};

SignedEdge minus_edge(Vertex i, Vertex j, int tag = 0);
SignedEdge plus_edge(Vertex i, Vertex j, int tag = 0);
SignedEdge loop_edge(Vertex i, int tag = 0);

/// Immutable signed graph. Edges are kept in canonical order, which fixes the
/// incidence-matrix column order and every flow-vector layout.
class SignedGraph {
 public:
  SignedGraph() = default;
  // Validates endpoints, loop signs and tag uniqueness; sorts the edges.
  SignedGraph(int vertex_count, std::vector<SignedEdge> edges);

  int vertex_count() const { return vertex_count_; }
  const std::vector<SignedEdge>& edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  const SignedEdge& edge(std::size_t k) const { return edges_.at(k); }

  std::optional<std::size_t> find(const SignedEdge& e) const;
  bool contains(const SignedEdge& e) const { return find(e).has_value(); }
  bool has_loops() const;
  int loops_at(Vertex v) const;

  // Adds a copy of (i, j, sign) with the next free tag.
  SignedGraph with_edge(Vertex i, Vertex j, Sign sign) const;
  SignedGraph without_edge(const SignedEdge& e) const;
  SignedGraph without_edges(const std::vector<std::size_t>& indices) const;

  // Edge multiset with tags stripped, sorted. Two graphs with equal shapes
  // have identical flow polytopes up to coordinate permutation.
  std::vector<SignedEdge> shape() const;
  std::string shape_key() const;

  bool is_connected() const;

  friend bool operator==(const SignedGraph&, const SignedGraph&) = default;

 private:
  int vertex_count_ = 0;
  std::vector<SignedEdge> edges_;
};

enum class LoopRange { AllVertices, FirstN };

SignedGraph make_complete_typeA(int vertex_count);
SignedGraph make_complete_D(int vertex_count);
SignedGraph make_complete_C(int vertex_count, LoopRange loops = LoopRange::AllVertices);

// S_k^{(v)}: the 2v-1 edges (i, v, eps), i < v, selected by k in [1, v-1].
std::vector<SignedEdge> make_S_kv(int k, Vertex v);

// The member of the family G determined by a = (0, a_2, ..., a_{n+1}) with
// 0 <= a_v <= v-2; it is the union of S_{v-a_v-1}^{(v)} over v >= 2.
SignedGraph make_family_graph(const Netflow& a);
// All (0, a_2, ..., a_{n+1}) with 0 <= a_v <= v-2, in lexicographic order.
std::vector<Netflow> family_vectors(int vertex_count);

// Root vector of an edge: e_i - e_j, e_i + e_j, or 2 e_i for a loop.
std::vector<int> root_vector(const SignedEdge& e, int vertex_count);
// (n+1) x N, row-major; column k is the root of edge(k).
std::vector<std::vector<int>> incidence_matrix(const SignedGraph& g);

// Number of negative edges (u, v, -) with u < v.
int indegree(const SignedGraph& g, Vertex v);

// Named graphs used by the CLI and the verification suites: fig1, fig2,
// counterexample-volD, zero-test.
std::optional<SignedGraph> named_graph(const std::string& name);

// Graph serialization: {"vertices": n+1, "edges": [[i, j, "+"|"-", tag], ...]}.
nlohmann::json to_json(const SignedGraph& g);
SignedGraph graph_from_json(const nlohmann::json& j);
nlohmann::json edge_to_json(const SignedEdge& e);
SignedEdge edge_from_json(const nlohmann::json& j);

Netflow parse_netflow(const std::string& text);
std::string netflow_to_string(const Netflow& a);
// (2, 0, ..., 0)
Netflow unit_source_netflow(int vertex_count);

}  // namespace flowvol
