#include "flowvol/dynflow.hpp"

#include <sstream>
#include <stdexcept>

#include "flowvol/errors.hpp"

namespace flowvol {

namespace {

void check_length(const SignedGraph& g, const Netflow& a) {
  if (static_cast<int>(a.size()) != g.vertex_count()) {
    throw std::invalid_argument("netflow has length " + std::to_string(a.size()) +
                                " but the graph has " + std::to_string(g.vertex_count()) +
                                " vertices");
  }
}

std::size_t at(int v) { return static_cast<std::size_t>(v - 1); }

}  // namespace

DynamicFlow zero_dynamic_flow(const SignedGraph& g) {
  DynamicFlow f;
  for (const auto& e : g.edges()) {
    if (e.is_positive()) {
      f.positive.push_back({e, 0, 0, {}});
    } else {
      f.negative[e] = 0;
    }
  }
  return f;
}

Netflow dynamic_netflow(const SignedGraph& g, const DynamicFlow& f) {
  Netflow a(static_cast<std::size_t>(g.vertex_count()), 0);
  std::size_t negatives = 0;
  for (const auto& e : g.edges()) negatives += !e.is_positive();
  if (f.negative.size() != negatives) throw std::invalid_argument("negative edges do not match graph");
  for (const auto& [e, x] : f.negative) {
    if (!g.contains(e) || e.is_positive()) {
      throw std::invalid_argument("dynamic flow names edge " + e.to_string() + " not in graph");
    }
    if (x < 0) throw std::invalid_argument("negative flow value on " + e.to_string());
    a[at(e.i)] += x;
    a[at(e.j)] -= x;
  }
  if (f.positive.size() + negatives != g.edge_count()) {
    throw std::invalid_argument("positive edges do not match graph");
  }
  for (const auto& p : f.positive) {
    if (!g.contains(p.edge) || !p.edge.is_positive()) {
      throw std::invalid_argument("dynamic flow names edge " + p.edge.to_string() + " not in graph");
    }
    if (p.bl < 0 || p.br < 0) throw std::invalid_argument("negative half-edge flow");
    if (static_cast<std::int64_t>(p.extras.size()) != p.bl) {
      throw std::invalid_argument("edge " + p.edge.to_string() + " has " +
                                  std::to_string(p.extras.size()) + " extras but b_l = " +
                                  std::to_string(p.bl));
    }
    a[at(p.edge.i)] += p.bl;
    a[at(p.edge.j)] += p.br;
    for (auto x : p.extras) {
      if (x < 0) throw std::invalid_argument("negative half-edge flow");
      a[at(p.edge.j)] += x;
    }
  }
  return a;
}

bool is_dynamic_flow(const SignedGraph& g, const Netflow& a, const DynamicFlow& f) {
  try {
    return dynamic_netflow(g, f) == a;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

namespace {

class DynamicEnumerator {
 public:
  DynamicEnumerator(const SignedGraph& g, const Netflow& a,
                    const std::function<void(const DynamicFlow&)>& emit)
      : g_(g), a_(a), emit_(emit), f_(zero_dynamic_flow(g)),
        incoming_(static_cast<std::size_t>(g.vertex_count()), 0) {
    for (std::size_t k = 0; k < f_.positive.size(); ++k) pos_index_[f_.positive[k].edge] = k;
  }

  void run() { vertex(1); }

 private:
  void vertex(int v) {
    if (v > g_.vertex_count()) {
      emit_(f_);
      return;
    }
    const std::int64_t budget = a_[at(v)] + incoming_[at(v)];
    if (budget < 0) return;
    std::vector<SignedEdge> out;
    for (const auto& e : g_.edges()) {
      if (e.i == v) out.push_back(e);
    }
    spend(v, out, 0, budget);
  }

  void spend(int v, const std::vector<SignedEdge>& out, std::size_t k, std::int64_t remaining) {
    if (k == out.size()) {
      fill_right(v, remaining);
      return;
    }
    const auto& e = out[k];
    for (std::int64_t x = 0; x <= remaining; ++x) {
      if (e.is_positive()) {
        auto& p = f_.positive[pos_index_.at(e)];
        p.bl = x;
        p.extras.assign(static_cast<std::size_t>(x), 0);
      } else {
        f_.negative[e] = x;
        incoming_[at(e.j)] += x;
      }
      spend(v, out, k + 1, remaining - x);
      if (!e.is_positive()) incoming_[at(e.j)] -= x;
    }
    if (e.is_positive()) {
      auto& p = f_.positive[pos_index_.at(e)];
      p.bl = 0;
      p.extras.clear();
    } else {
      f_.negative[e] = 0;
    }
  }

  void fill_right(int v, std::int64_t remaining) {
    std::vector<std::int64_t*> slots;
    for (auto& p : f_.positive) {
      if (p.edge.j != v) continue;
      slots.push_back(&p.br);
      for (auto& x : p.extras) slots.push_back(&x);
    }
    compose(v, slots, 0, remaining);
  }

  void compose(int v, const std::vector<std::int64_t*>& slots, std::size_t k, std::int64_t remaining) {
    if (k == slots.size()) {
      if (remaining == 0) vertex(v + 1);
      return;
    }
    if (k + 1 == slots.size()) {
      *slots[k] = remaining;
      vertex(v + 1);
      *slots[k] = 0;
      return;
    }
    for (std::int64_t x = 0; x <= remaining; ++x) {
      *slots[k] = x;
      compose(v, slots, k + 1, remaining - x);
    }
    *slots[k] = 0;
  }

  const SignedGraph& g_;
  const Netflow& a_;
  const std::function<void(const DynamicFlow&)>& emit_;
  DynamicFlow f_;
  Netflow incoming_;
  std::map<SignedEdge, std::size_t> pos_index_;
};

class DynamicCounter {
 public:
  explicit DynamicCounter(const SignedGraph& g) : g_(g) {
    const auto n1 = static_cast<std::size_t>(g.vertex_count());
    out_.resize(n1 + 1);
    right_.assign(n1 + 1, 0);
    for (const auto& e : g.edges()) {
      out_[static_cast<std::size_t>(e.i)].push_back(e);
      if (e.is_positive()) ++right_[static_cast<std::size_t>(e.j)];
    }
  }

  BigInt count(const Netflow& a) {
    // state[2(v-1)] = incoming negative flow, state[2(v-1)+1] = pending extras
    std::vector<std::int64_t> state(2 * a.size(), 0);
    for (std::size_t v = 0; v < a.size(); ++v) state[2 * v] = a[v];
    return from(1, state);
  }

 private:
  BigInt from(int v, std::vector<std::int64_t>& state) {
    if (v > g_.vertex_count()) return 1;
    const std::int64_t budget = state[2 * at(v)];
    if (budget < 0) return 0;
    std::vector<std::int64_t> suffix(state.begin() + 2 * static_cast<std::ptrdiff_t>(at(v)), state.end());
    auto key = std::make_pair(v, std::move(suffix));
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    BigInt total = 0;
    choose(v, 0, budget, 0, state, total);
    memo_.emplace(std::move(key), total);
    return total;
  }

  void choose(int v, std::size_t k, std::int64_t remaining, std::int64_t loop_extras,
              std::vector<std::int64_t>& state, BigInt& total) {
    const auto& out = out_[static_cast<std::size_t>(v)];
    if (k == out.size()) {
      const std::int64_t slots =
          right_[static_cast<std::size_t>(v)] + state[2 * at(v) + 1] + loop_extras;
      BigInt ways;
      if (slots == 0) {
        ways = remaining == 0 ? 1 : 0;
      } else {
        ways = binomial(remaining + slots - 1, slots - 1);
      }
      if (ways != 0) total += ways * from(v + 1, state);
      return;
    }
    const auto& e = out[k];
    for (std::int64_t x = 0; x <= remaining; ++x) {
      if (e.is_loop()) {
        choose(v, k + 1, remaining - x, loop_extras + x, state, total);
        continue;
      }
      const std::size_t slot = 2 * at(e.j) + (e.is_positive() ? 1 : 0);
      state[slot] += x;
      choose(v, k + 1, remaining - x, loop_extras, state, total);
      state[slot] -= x;
    }
  }

  const SignedGraph& g_;
  std::vector<std::vector<SignedEdge>> out_;
  std::vector<std::int64_t> right_;
  std::map<std::pair<int, std::vector<std::int64_t>>, BigInt> memo_;
};

}  // namespace

void enumerate_dynamic_flows(const SignedGraph& g, const Netflow& a,
                             const std::function<void(const DynamicFlow&)>& emit) {
  check_length(g, a);
  DynamicEnumerator(g, a, emit).run();
}

std::vector<DynamicFlow> enumerate_dynamic_flows(const SignedGraph& g, const Netflow& a) {
  std::vector<DynamicFlow> out;
  enumerate_dynamic_flows(g, a, [&](const DynamicFlow& f) { out.push_back(f); });
  return out;
}

BigInt kdyn(const SignedGraph& g, const Netflow& a) {
  check_length(g, a);
  return DynamicCounter(g).count(a);
}

Netflow volD_netflow(const SignedGraph& g) {
  Netflow d(static_cast<std::size_t>(g.vertex_count()), 0);
  for (int v = 2; v <= g.vertex_count(); ++v) d[at(v)] = indegree(g, v) - 1;
  return d;
}

BigInt volume_via_thm_volD(const SignedGraph& g) {
  if (g.has_loops()) {
    throw std::invalid_argument("the dynamic volume formula does not hold for graphs with loops");
  }
  if (!g.is_connected()) throw std::invalid_argument("graph is not connected");
  for (int v = 2; v <= g.vertex_count(); ++v) {
    if (indegree(g, v) < 1) {
      throw std::invalid_argument("vertex " + std::to_string(v) + " has no incoming negative edge");
    }
  }
  return kdyn(g, volD_netflow(g));
}

namespace {

const PositiveHalfFlow& positive_of(const DynamicFlow& f, const SignedEdge& e) {
  for (const auto& p : f.positive) {
    if (p.edge == e) return p;
  }
  throw std::invalid_argument("dynamic flow has no positive edge " + e.to_string());
}

PositiveHalfFlow& positive_of(DynamicFlow& f, const SignedEdge& e) {
  return const_cast<PositiveHalfFlow&>(positive_of(static_cast<const DynamicFlow&>(f), e));
}

}  // namespace

DynamicFlow bijection_forward(const DynamicFlow& f, const Netflow& a) {
  const auto G = make_family_graph(a);
  if (!is_dynamic_flow(G, a, f)) {
    throw std::invalid_argument("input is not a dynamic flow on G_a with netflow " +
                                netflow_to_string(a));
  }
  const int n1 = G.vertex_count();
  const auto KC = make_complete_C(n1);
  DynamicFlow g = zero_dynamic_flow(KC);
  for (int v = 2; v <= n1; ++v) {
    const int k = v - static_cast<int>(a[at(v)]) - 1;
    for (int i = 1; i < v; ++i) positive_of(g, plus_edge(i, v)) = positive_of(f, plus_edge(i, v));
    for (int i = k; i < v; ++i) g.negative[minus_edge(i, v)] = f.negative.at(minus_edge(i, v));

    auto& loop = positive_of(g, loop_edge(v));
    std::int64_t spawned = 0;
    for (int i = 1; i < k; ++i) {
      const auto bl = positive_of(f, plus_edge(i, v, 1)).bl;
      g.negative[minus_edge(i, v)] = bl;
      spawned += bl;
    }
    const auto bl_k = positive_of(f, plus_edge(k, v, 1)).bl;
    g.negative[minus_edge(k, v)] += bl_k;
    spawned += bl_k;

    loop.bl = k - 1 + spawned;
    loop.br = positive_of(f, plus_edge(1, v, 1)).br;
    loop.extras.clear();
    for (int i = 1; i <= k - 1; ++i) loop.extras.push_back(positive_of(f, plus_edge(i + 1, v, 1)).br);
    for (int i = 1; i <= k; ++i) {
      const auto& src = positive_of(f, plus_edge(i, v, 1)).extras;
      loop.extras.insert(loop.extras.end(), src.begin(), src.end());
    }
  }
  return g;
}

std::pair<Netflow, DynamicFlow> bijection_inverse(const DynamicFlow& g, int vertex_count) {
  const auto KC = make_complete_C(vertex_count);
  Netflow target(static_cast<std::size_t>(vertex_count), 0);
  for (int v = 3; v <= vertex_count; ++v) target[at(v)] = v - 2;
  if (!is_dynamic_flow(KC, target, g)) {
    throw NotInImageError("input is not a dynamic flow on K^C_" + std::to_string(vertex_count) +
                          " with netflow " + netflow_to_string(target));
  }
  const auto& loop1 = positive_of(g, loop_edge(1));
  if (loop1.bl != 0 || loop1.br != 0) throw NotInImageError("loop at vertex 1 carries flow");

  Netflow a(static_cast<std::size_t>(vertex_count), 0);
  std::vector<int> ks(static_cast<std::size_t>(vertex_count + 1), 0);
  for (int v = 2; v <= vertex_count; ++v) {
    const auto bl = positive_of(g, loop_edge(v)).bl;
    // k(v) is the unique t with t-2+sum_{i<t} g(i,v,-) < bl <= t-1+sum_{i<=t} g(i,v,-).
    std::int64_t before = 0;
    int found = 0;
    for (int t = 1; t <= v - 1; ++t) {
      const std::int64_t here = g.negative.at(minus_edge(t, v));
      if (t - 2 + before < bl && bl <= t - 1 + before + here) {
        if (found) throw NotInImageError("k(" + std::to_string(v) + ") is not unique");
        found = t;
      }
      before += here;
    }
    if (!found) throw NotInImageError("no k(" + std::to_string(v) + ") satisfies the bounds");
    ks[static_cast<std::size_t>(v)] = found;
    a[at(v)] = v - 1 - found;
  }

  const auto G = make_family_graph(a);
  DynamicFlow f = zero_dynamic_flow(G);
  for (int v = 2; v <= vertex_count; ++v) {
    const int k = ks[static_cast<std::size_t>(v)];
    const auto& loop = positive_of(g, loop_edge(v));
    for (int i = 1; i < v; ++i) positive_of(f, plus_edge(i, v)) = positive_of(g, plus_edge(i, v));
    for (int i = k + 1; i < v; ++i) f.negative[minus_edge(i, v)] = g.negative.at(minus_edge(i, v));

    std::int64_t used = 0;
    for (int i = 1; i < k; ++i) {
      auto& p = positive_of(f, plus_edge(i, v, 1));
      p.bl = g.negative.at(minus_edge(i, v));
      used += p.bl;
    }
    auto& pk = positive_of(f, plus_edge(k, v, 1));
    pk.bl = loop.bl - (k - 1) - used;
    f.negative[minus_edge(k, v)] = g.negative.at(minus_edge(k, v)) - pk.bl;

    positive_of(f, plus_edge(1, v, 1)).br = loop.br;
    std::size_t cursor = 0;
    for (int i = 1; i <= k - 1; ++i) positive_of(f, plus_edge(i + 1, v, 1)).br = loop.extras.at(cursor++);
    for (int i = 1; i <= k; ++i) {
      auto& p = positive_of(f, plus_edge(i, v, 1));
      p.extras.clear();
      for (std::int64_t m = 0; m < p.bl; ++m) p.extras.push_back(loop.extras.at(cursor++));
    }
  }
  if (!is_dynamic_flow(G, a, f)) throw NotInImageError("reconstructed flow is invalid");
  return {a, f};
}

namespace {

std::string edge_key(const SignedEdge& e) {
  std::ostringstream os;
  os << e.i << ',' << e.j << ',' << sign_char(e.sign) << ',' << e.tag;
  return os.str();
}

SignedEdge parse_edge_key(const std::string& key) {
  std::stringstream ss(key);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, ',')) parts.push_back(part);
  if (parts.size() != 4 || (parts[2] != "-" && parts[2] != "+")) {
    throw std::invalid_argument("bad edge key '" + key + "'");
  }
  return {std::stoi(parts[0]), std::stoi(parts[1]), parts[2] == "+" ? Sign::Plus : Sign::Minus,
          std::stoi(parts[3])};
}

}  // namespace

nlohmann::json to_json(const DynamicFlow& f) {
  nlohmann::json neg = nlohmann::json::object();
  for (const auto& [e, x] : f.negative) neg[edge_key(e)] = x;
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& p : f.positive) {
    pos.push_back({{"edge", edge_to_json(p.edge)}, {"bl", p.bl}, {"br", p.br}, {"extras", p.extras}});
  }
  return {{"negative", neg}, {"positive", pos}};
}

DynamicFlow dynamic_flow_from_json(const nlohmann::json& j) {
  DynamicFlow f;
  for (const auto& [key, value] : j.at("negative").items()) {
    f.negative[parse_edge_key(key)] = value.get<std::int64_t>();
  }
  for (const auto& p : j.at("positive")) {
    f.positive.push_back({edge_from_json(p.at("edge")), p.at("bl").get<std::int64_t>(),
                          p.at("br").get<std::int64_t>(),
                          p.at("extras").get<std::vector<std::int64_t>>()});
  }
  return f;
}

}  // namespace flowvol
