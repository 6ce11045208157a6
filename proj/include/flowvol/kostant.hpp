#pragma once

// Kostant partition functions, integer flows, Ehrhart data and the dimension
// and normalized volume of F_G(a).

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "flowvol/exact.hpp"
#include "flowvol/graph.hpp"

namespace flowvol {

// One nonnegative value per edge, in canonical edge order.
using IntegerFlow = std::vector<std::int64_t>;

/// Counts integer a-flows of a fixed graph.
///
/// Edges are grouped by their smaller endpoint. Once the group of vertex v is
/// assigned, the residual netflow at v must be zero and v is never touched
/// again, so the count below v depends only on the residual at vertices
/// v..n+1. That suffix is the memo key, which keeps the table valid across
/// different netflow vectors on the same graph.
///
/// Not thread-safe; use one counter per thread.
class KostantCounter {
 public:
  explicit KostantCounter(SignedGraph g);

  const SignedGraph& graph() const { return graph_; }
  BigInt count(const Netflow& a);
  // Calls `emit` once per flow, in lexicographic order of the flow vector.
  void enumerate(const Netflow& a, const std::function<void(const IntegerFlow&)>& emit);
  std::size_t memo_size() const { return memo_.size(); }

 private:
  struct Group {
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  BigInt count_from(int v, const Netflow& residual);
  void distribute(int v, std::size_t k, std::int64_t remaining, Netflow& residual,
                  const std::function<void(Netflow&)>& done);
  void enumerate_from(int v, Netflow& residual, IntegerFlow& flow,
                      const std::function<void(const IntegerFlow&)>& emit);

  SignedGraph graph_;
  std::vector<Group> groups_;  // indexed by vertex, 1-based
  std::vector<int> coef_;      // flow units consumed at i per unit on the edge
  std::map<std::pair<int, Netflow>, BigInt> memo_;
};

BigInt kpf(const SignedGraph& g, const Netflow& a);
std::vector<IntegerFlow> enumerate_flows(const SignedGraph& g, const Netflow& a);

// M_G b.
Netflow flow_netflow(const SignedGraph& g, const IntegerFlow& b);
bool is_flow(const SignedGraph& g, const Netflow& a, const IntegerFlow& b);
// Total flow on positive edges, loops counted once.
std::int64_t positive_flow_total(const SignedGraph& g, const IntegerFlow& b);

struct DimensionInfo {
  long dimension = 0;
  long rank = 0;
  // Edges that vanish on all of F_G(a), as canonical indices.
  std::vector<std::size_t> forced_zero;
};

// Dimension of the affine hull of F_G(a). Throws EmptyPolytopeError.
//
// Vertices of F_G(a) are half-integral (the constraint matrix is the incidence
// matrix of a bidirected graph), so edge e is nonzero somewhere on F_G(a)
// exactly when some integer 2a-flow puts at least 1 on e, i.e. when
// K_G(2a - root(e)) > 0. Then dim = |E \ Z| - rank(M_G restricted to E \ Z).
DimensionInfo analyze_polytope(const SignedGraph& g, const Netflow& a);
long polytope_dimension(const SignedGraph& g, const Netflow& a);
bool polytope_is_empty(const SignedGraph& g, const Netflow& a);

using EhrhartTable = std::vector<std::pair<long, BigInt>>;

EhrhartTable ehrhart_values(const SignedGraph& g, const Netflow& a, long t_max);
std::string ehrhart_table_tsv(const EhrhartTable& table);

/// Dense polynomial with exact rational coefficients, ascending degree.
struct Polynomial {
  std::vector<Rational> coeffs;

  long degree() const;  // -1 for the zero polynomial
  Rational leading() const;
  Rational operator()(const Rational& t) const;
  std::string to_string(const std::string& var = "t") const;
};

// Lagrange interpolation through points with distinct abscissae.
Polynomial lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& points);

struct EhrhartVolume {
  long dimension = 0;
  BigInt volume;
  Polynomial polynomial;
  EhrhartTable table;  // t = 0..dimension+1, the last row is the guard
};

// Normalized volume by interpolating K_G(t a) at t = 0..d. Throws
// EmptyPolytopeError, or GuardMismatchError if K_G((d+1) a) disagrees.
EhrhartVolume ehrhart_volume(const SignedGraph& g, const Netflow& a);
BigInt normalized_volume_ehrhart(const SignedGraph& g, const Netflow& a);

}  // namespace flowvol
