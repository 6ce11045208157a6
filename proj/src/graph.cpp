#include "flowvol/graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "json.hpp"

namespace flowvol {

char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

std::string SignedEdge::to_string() const {
  std::ostringstream os;
  os << '(' << i << ',' << j << ',' << sign_char(sign) << ')';
  if (tag != 0) os << '^' << tag;
  return os.str();
}

SignedEdge minus_edge(Vertex i, Vertex j, int tag) { return {i, j, Sign::Minus, tag}; }
SignedEdge plus_edge(Vertex i, Vertex j, int tag) { return {i, j, Sign::Plus, tag}; }
SignedEdge loop_edge(Vertex i, int tag) { return {i, i, Sign::Plus, tag}; }

SignedGraph::SignedGraph(int vertex_count, std::vector<SignedEdge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
  if (vertex_count_ < 1) throw std::invalid_argument("graph needs at least one vertex");
  for (const auto& e : edges_) {
    if (e.i < 1 || e.j > vertex_count_ || e.i > e.j) {
      throw std::invalid_argument("edge " + e.to_string() + " outside [1," +
                                  std::to_string(vertex_count_) + "] or with i > j");
    }
    if (e.is_loop() && e.sign != Sign::Plus) {
      throw std::invalid_argument("loops must be positive: " + e.to_string());
    }
    if (e.tag < 0) throw std::invalid_argument("negative tag on " + e.to_string());
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end()) {
    throw std::invalid_argument("parallel edges must carry distinct tags");
  }
}

std::optional<std::size_t> SignedGraph::find(const SignedEdge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<std::size_t>(it - edges_.begin());
}

bool SignedGraph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const auto& e) { return e.is_loop(); });
}

int SignedGraph::loops_at(Vertex v) const {
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(),
                                        [v](const auto& e) { return e.is_loop() && e.i == v; }));
}

SignedGraph SignedGraph::with_edge(Vertex i, Vertex j, Sign sign) const {
  int tag = 0;
  for (const auto& e : edges_) {
    if (e.i == i && e.j == j && e.sign == sign) tag = std::max(tag, e.tag + 1);
  }
  auto edges = edges_;
  edges.push_back({i, j, sign, tag});
  return SignedGraph(vertex_count_, std::move(edges));
}

SignedGraph SignedGraph::without_edge(const SignedEdge& e) const {
  auto k = find(e);
  if (!k) throw std::invalid_argument("edge " + e.to_string() + " not in graph");
  auto edges = edges_;
  edges.erase(edges.begin() + static_cast<std::ptrdiff_t>(*k));
  return SignedGraph(vertex_count_, std::move(edges));
}

SignedGraph SignedGraph::without_edges(const std::vector<std::size_t>& indices) const {
  std::set<std::size_t> drop(indices.begin(), indices.end());
  std::vector<SignedEdge> edges;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (!drop.count(k)) edges.push_back(edges_[k]);
  }
  return SignedGraph(vertex_count_, std::move(edges));
}

std::vector<SignedEdge> SignedGraph::shape() const {
  std::vector<SignedEdge> out;
  out.reserve(edges_.size());
  for (auto e : edges_) {
    e.tag = 0;
    out.push_back(e);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string SignedGraph::shape_key() const {
  std::string key = std::to_string(vertex_count_) + ":";
  bool first = true;
  for (const auto& e : shape()) {
    if (!first) key += ' ';
    first = false;
    key += std::to_string(e.i) + sign_char(e.sign) + std::to_string(e.j);
  }
  return key;
}

bool SignedGraph::is_connected() const {
  std::vector<int> parent(static_cast<std::size_t>(vertex_count_ + 1));
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (const auto& e : edges_) parent[static_cast<std::size_t>(root(e.i))] = root(e.j);
  const int r = root(1);
  for (int v = 2; v <= vertex_count_; ++v) {
    if (root(v) != r) return false;
  }
  return true;
}

namespace {

void require_vertices(int vertex_count) {
  if (vertex_count < 2) {
    throw std::invalid_argument("complete graphs need at least 2 vertices, got " +
                                std::to_string(vertex_count));
  }
}

}  // namespace

SignedGraph make_complete_typeA(int vertex_count) {
  require_vertices(vertex_count);
  std::vector<SignedEdge> edges;
  for (int i = 1; i <= vertex_count; ++i) {
    for (int j = i + 1; j <= vertex_count; ++j) edges.push_back(minus_edge(i, j));
  }
  return SignedGraph(vertex_count, std::move(edges));
}

SignedGraph make_complete_D(int vertex_count) {
  require_vertices(vertex_count);
  std::vector<SignedEdge> edges;
  for (int i = 1; i <= vertex_count; ++i) {
    for (int j = i + 1; j <= vertex_count; ++j) {
      edges.push_back(minus_edge(i, j));
      edges.push_back(plus_edge(i, j));
    }
  }
  return SignedGraph(vertex_count, std::move(edges));
}

SignedGraph make_complete_C(int vertex_count, LoopRange loops) {
  require_vertices(vertex_count);
  auto edges = make_complete_D(vertex_count).edges();
  const int last = loops == LoopRange::AllVertices ? vertex_count : vertex_count - 1;
  for (int i = 1; i <= last; ++i) edges.push_back(loop_edge(i));
  return SignedGraph(vertex_count, std::move(edges));
}

std::vector<SignedEdge> make_S_kv(int k, Vertex v) {
  if (k < 1 || k > v - 1) {
    throw std::invalid_argument("S_k^(v) needs 1 <= k <= v-1, got k=" + std::to_string(k) +
                                " v=" + std::to_string(v));
  }
  std::vector<SignedEdge> edges;
  for (int i = 1; i <= v - 1; ++i) {
    edges.push_back(plus_edge(i, v, 0));
    if (i <= k) edges.push_back(plus_edge(i, v, 1));
    if (i >= k) edges.push_back(minus_edge(i, v));
  }
  return edges;
}

SignedGraph make_family_graph(const Netflow& a) {
  if (a.size() < 2) throw std::invalid_argument("family vectors need at least 2 entries");
  if (a[0] != 0) throw std::invalid_argument("family vectors must start with a_1 = 0");
  std::vector<SignedEdge> edges;
  const int vertex_count = static_cast<int>(a.size());
  for (int v = 2; v <= vertex_count; ++v) {
    const auto av = a[static_cast<std::size_t>(v - 1)];
    if (av < 0 || av > v - 2) {
      throw std::invalid_argument("a_" + std::to_string(v) + " = " + std::to_string(av) +
                                  " outside [0, " + std::to_string(v - 2) + "]");
    }
    auto s = make_S_kv(v - static_cast<int>(av) - 1, v);
    edges.insert(edges.end(), s.begin(), s.end());
  }
  return SignedGraph(vertex_count, std::move(edges));
}

std::vector<Netflow> family_vectors(int vertex_count) {
  std::vector<Netflow> out;
  Netflow a(static_cast<std::size_t>(vertex_count), 0);
  while (true) {
    out.push_back(a);
    int v = vertex_count;
    while (v >= 2 && a[static_cast<std::size_t>(v - 1)] == v - 2) {
      a[static_cast<std::size_t>(v - 1)] = 0;
      --v;
    }
    if (v < 2) break;
    ++a[static_cast<std::size_t>(v - 1)];
  }
  return out;
}

std::vector<int> root_vector(const SignedEdge& e, int vertex_count) {
  std::vector<int> r(static_cast<std::size_t>(vertex_count), 0);
  if (e.is_loop()) {
    r[static_cast<std::size_t>(e.i - 1)] = 2;
  } else {
    r[static_cast<std::size_t>(e.i - 1)] = 1;
    r[static_cast<std::size_t>(e.j - 1)] = e.is_positive() ? 1 : -1;
  }
  return r;
}

std::vector<std::vector<int>> incidence_matrix(const SignedGraph& g) {
  const auto rows = static_cast<std::size_t>(g.vertex_count());
  std::vector<std::vector<int>> m(rows, std::vector<int>(g.edge_count(), 0));
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    auto r = root_vector(g.edge(k), g.vertex_count());
    for (std::size_t v = 0; v < rows; ++v) m[v][k] = r[v];
  }
  return m;
}

int indegree(const SignedGraph& g, Vertex v) {
  return static_cast<int>(std::count_if(g.edges().begin(), g.edges().end(), [v](const auto& e) {
    return e.j == v && e.i < v && e.sign == Sign::Minus;
  }));
}

std::optional<SignedGraph> named_graph(const std::string& name) {
  if (name == "fig1") {
    // The five roots e1-e2, e1+e2, e1-e3, 2e2, e2-e3.
    return SignedGraph(3, {minus_edge(1, 2), plus_edge(1, 2), minus_edge(1, 3), loop_edge(2),
                           minus_edge(2, 3)});
  }
  if (name == "fig2") {
    return SignedGraph(3, {minus_edge(1, 2), minus_edge(2, 3), minus_edge(1, 3), plus_edge(1, 3)});
  }
  if (name == "counterexample-volD") {
    return SignedGraph(3, {minus_edge(1, 2, 0), minus_edge(1, 2, 1), minus_edge(1, 2, 2),
                           loop_edge(2)});
  }
  if (name == "zero-test") return make_complete_C(3);
  return std::nullopt;
}

nlohmann::json edge_to_json(const SignedEdge& e) {
  return nlohmann::json::array({e.i, e.j, std::string(1, sign_char(e.sign)), e.tag});
}

SignedEdge edge_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() < 3 || j.size() > 4) {
    throw std::invalid_argument("edge must be [i, j, \"+\"|\"-\", tag]");
  }
  SignedEdge e;
  e.i = j.at(0).get<int>();
  e.j = j.at(1).get<int>();
  const auto s = j.at(2).get<std::string>();
  if (s == "+") {
    e.sign = Sign::Plus;
  } else if (s == "-") {
    e.sign = Sign::Minus;
  } else {
    throw std::invalid_argument("edge sign must be \"+\" or \"-\", got \"" + s + "\"");
  }
  e.tag = j.size() == 4 ? j.at(3).get<int>() : 0;
  return e;
}

nlohmann::json to_json(const SignedGraph& g) {
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : g.edges()) edges.push_back(edge_to_json(e));
  return {{"vertices", g.vertex_count()}, {"edges", edges}};
}

SignedGraph graph_from_json(const nlohmann::json& j) {
  std::vector<SignedEdge> edges;
  for (const auto& e : j.at("edges")) edges.push_back(edge_from_json(e));
  return SignedGraph(j.at("vertices").get<int>(), std::move(edges));
}

Netflow parse_netflow(const std::string& text) {
  Netflow a;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad netflow entry '" + item + "'");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw std::invalid_argument("bad netflow entry '" + item + "'");
    a.push_back(value);
  }
  if (a.empty()) throw std::invalid_argument("empty netflow vector");
  return a;
}

std::string netflow_to_string(const Netflow& a) {
  std::string s;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k) s += ',';
    s += std::to_string(a[k]);
  }
  return s;
}

Netflow unit_source_netflow(int vertex_count) {
  Netflow a(static_cast<std::size_t>(vertex_count), 0);
  a[0] = 2;
  return a;
}

}  // namespace flowvol
