#pragma once

// Dynamic integer flows: every unit on the left half of a positive edge
// (i, j, +) spawns one extra right half-edge at j (at i itself for a loop).

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "flowvol/exact.hpp"
#include "flowvol/graph.hpp"
#include "json.hpp"

namespace flowvol {

struct PositiveHalfFlow {
  SignedEdge edge;
  std::int64_t bl = 0;
  std::int64_t br = 0;
  // One value per extra right half-edge; always bl entries.
  std::vector<std::int64_t> extras;

  friend auto operator<=>(const PositiveHalfFlow&, const PositiveHalfFlow&) = default;
};

struct DynamicFlow {
  std::map<SignedEdge, std::int64_t> negative;
  // Positive edges (loops included) in canonical order.
  std::vector<PositiveHalfFlow> positive;

  friend auto operator<=>(const DynamicFlow&, const DynamicFlow&) = default;
};

// All-zero dynamic flow with the right shape for g.
DynamicFlow zero_dynamic_flow(const SignedGraph& g);

// Left side minus incoming negative flow at each vertex, i.e. the netflow the
// flow realizes. Throws std::invalid_argument if f does not fit g.
Netflow dynamic_netflow(const SignedGraph& g, const DynamicFlow& f);
bool is_dynamic_flow(const SignedGraph& g, const Netflow& a, const DynamicFlow& f);

/// Enumerates dynamic a-flows vertex by vertex. At v the budget a_v plus the
/// incoming negative flow is spent on outgoing negative edges, on left halves
/// of positive edges at v (a loop's left half spawns extras at v itself), and
/// the remainder is spread over the right half-edges at v in order: for each
/// positive edge (u, v, +) in canonical order, its right half then its extras.
void enumerate_dynamic_flows(const SignedGraph& g, const Netflow& a,
                             const std::function<void(const DynamicFlow&)>& emit);
std::vector<DynamicFlow> enumerate_dynamic_flows(const SignedGraph& g, const Netflow& a);

// Same count as the enumeration, by memoized DP with a stars-and-bars count
// for the right half-edges.
BigInt kdyn(const SignedGraph& g, const Netflow& a);

// Coefficient of x^a in prod_{(i,j,-)} (1 - x_i/x_j)^{-1} prod_{(i,j,+)} (1 - x_i - x_j)^{-1},
// loops giving (1 - 2x_i)^{-1}, by iterated constant terms.
BigInt kdyn_via_series(const SignedGraph& g, const Netflow& a);

// (0, indeg(2)-1, ..., indeg(n+1)-1).
Netflow volD_netflow(const SignedGraph& g);
// K^dyn_G(0, d_2, ..., d_{n+1}), which equals vol F_G(2,0,...,0) for loopless
// connected G. Rejects loops, disconnected graphs, and vertices v >= 2 with
// no incoming negative edge.
BigInt volume_via_thm_volD(const SignedGraph& g);

// Maps a dynamic flow on G_a with netflow a to one on K^C_{n+1} with netflow
// (0, 0, 1, ..., n-1). Extras spawned by the (i, v, +)^1 left halves are
// transferred onto the loop's extras in increasing i.
DynamicFlow bijection_forward(const DynamicFlow& f, const Netflow& a);
// Inverse; throws NotInImageError on malformed input.
std::pair<Netflow, DynamicFlow> bijection_inverse(const DynamicFlow& g, int vertex_count);

// {"negative": {"i,j,-,tag": v}, "positive": [{"edge": [...], "bl", "br", "extras"}]}
nlohmann::json to_json(const DynamicFlow& f);
DynamicFlow dynamic_flow_from_json(const nlohmann::json& j);

}  // namespace flowvol
