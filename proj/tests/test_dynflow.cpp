#include <gtest/gtest.h>

#include <map>
#include <random>
#include <set>

#include "flowvol/dynflow.hpp"
#include "flowvol/errors.hpp"
#include "flowvol/kostant.hpp"
#include "oracles.hpp"

using namespace flowvol;

namespace {

Netflow staircase(int n1) {
  Netflow t(static_cast<std::size_t>(n1), 0);
  for (int v = 3; v <= n1; ++v) t[static_cast<std::size_t>(v - 1)] = v - 2;
  return t;
}

}  // namespace

TEST(Dynamic, Fig2) {
  auto g = *named_graph("fig2");
  auto flows = enumerate_dynamic_flows(g, {2, 1, 1});
  EXPECT_EQ(flows.size(), 17u);
  EXPECT_EQ(kdyn(g, {2, 1, 1}), 17);
  // b_l(1,3,+) takes the values 0, 1 and 2.
  std::set<std::int64_t> bls;
  for (const auto& f : flows) {
    EXPECT_TRUE(is_dynamic_flow(g, {2, 1, 1}, f));
    bls.insert(f.positive.at(0).bl);
  }
  EXPECT_EQ(bls, (std::set<std::int64_t>{0, 1, 2}));
  std::set<DynamicFlow> unique(flows.begin(), flows.end());
  EXPECT_EQ(unique.size(), flows.size());
}

TEST(Dynamic, Fig2HandBuiltFlow) {
  // b(1,2,-)=1, b(2,3,-)=2, b_l(1,3,+)=1; vertex 3 receives 1+2 and spends
  // 2 on the original right half and 1 on the extra one.
  auto g = *named_graph("fig2");
  DynamicFlow f = zero_dynamic_flow(g);
  f.negative[minus_edge(1, 2)] = 1;
  f.negative[minus_edge(2, 3)] = 2;
  f.positive[0].bl = 1;
  f.positive[0].br = 2;
  f.positive[0].extras = {1};
  EXPECT_TRUE(is_dynamic_flow(g, {2, 1, 1}, f));
  auto flows = enumerate_dynamic_flows(g, {2, 1, 1});
  EXPECT_NE(std::find(flows.begin(), flows.end(), f), flows.end());
}

TEST(Dynamic, ZeroNetflow) {
  for (const auto& g : {*named_graph("fig2"), make_complete_C(3), make_complete_C(4), make_family_graph({0, 0, 1})}) {
    Netflow zero(static_cast<std::size_t>(g.vertex_count()), 0);
    auto flows = enumerate_dynamic_flows(g, zero);
    ASSERT_EQ(flows.size(), 1u);
    EXPECT_EQ(flows[0], zero_dynamic_flow(g));
    EXPECT_EQ(kdyn(g, zero), 1);
  }
}

TEST(Dynamic, SmallValues) {
  EXPECT_EQ(kdyn(make_complete_C(3), {0, 0, 1}), 4);
  EXPECT_EQ(kdyn(make_complete_C(4), staircase(4)), 128);
  EXPECT_EQ(kdyn(SignedGraph(2, {minus_edge(1, 2)}), {1, -1}), 1);
  // Right halves are ordered slots, which makes the count match the series
  // coefficient 2 of x1 x2 in (1 - x1 - x2)^{-1}.
  EXPECT_EQ(kdyn(SignedGraph(2, {plus_edge(1, 2)}), {1, 1}), 2);
  EXPECT_EQ(enumerate_dynamic_flows(SignedGraph(2, {plus_edge(1, 2)}), {1, 1}).size(), 2u);
  // A lone loop: coefficient of x^m in (1 - 2x)^{-1}.
  for (int m = 0; m <= 6; ++m) EXPECT_EQ(kdyn(SignedGraph(1, {loop_edge(1)}), {m}), pow2(static_cast<unsigned long>(m)));
}

TEST(Dynamic, EnumerationMatchesCountAndSeriesOracle) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const int n1 = 2 + trial % 3;
    std::vector<SignedEdge> es;
    std::map<std::tuple<int, int, int>, int> tags;
    std::uniform_int_distribution<int> vert(1, n1);
    for (int k = 0; k < 2 + trial % 4; ++k) {
      int i = vert(rng), j = vert(rng);
      if (i > j) std::swap(i, j);
      Sign s = (rng() % 2 || i == j) ? Sign::Plus : Sign::Minus;
      int& t = tags[{i, j, static_cast<int>(s)}];
      es.push_back({i, j, s, t++});
    }
    SignedGraph g(n1, es);
    Netflow a(static_cast<std::size_t>(n1));
    std::uniform_int_distribution<int> val(0, 2);
    for (auto& x : a) x = val(rng);
    auto flows = enumerate_dynamic_flows(g, a);
    EXPECT_EQ(BigInt(static_cast<long>(flows.size())), kdyn(g, a)) << g.shape_key();
    for (const auto& f : flows) EXPECT_TRUE(is_dynamic_flow(g, a, f));
    EXPECT_EQ(kdyn(g, a), oracle::kdyn_series(g, a)) << g.shape_key();
  }
}

TEST(Dynamic, VolDExamples) {
  EXPECT_EQ(volume_via_thm_volD(make_complete_D(3)), 2);
  EXPECT_EQ(volume_via_thm_volD(make_complete_D(4)), 32);
  auto g0 = make_family_graph({0, 0, 0});
  EXPECT_EQ(volume_via_thm_volD(g0), normalized_volume_ehrhart(g0, {2, 0, 0}));
  auto bad = *named_graph("counterexample-volD");
  EXPECT_THROW(volume_via_thm_volD(bad), std::invalid_argument);
  // Both quantities computed directly: they differ.
  EXPECT_EQ(normalized_volume_ehrhart(bad, {2, 0, 0}), 4);
  EXPECT_EQ(kdyn(bad, volD_netflow(bad)), 0);
  EXPECT_EQ(volD_netflow(bad), (Netflow{0, 2, -1}));
  EXPECT_THROW(volume_via_thm_volD(SignedGraph(3, {minus_edge(1, 2), plus_edge(2, 3)})), std::invalid_argument);
}

TEST(Bijection, ZeroFlowImage) {
  for (int n1 = 2; n1 <= 5; ++n1) {
    Netflow a(static_cast<std::size_t>(n1), 0);
    auto g = bijection_forward(zero_dynamic_flow(make_family_graph(a)), a);
    EXPECT_TRUE(is_dynamic_flow(make_complete_C(n1), staircase(n1), g));
    for (const auto& p : g.positive) {
      if (p.edge.is_loop() && p.edge.i >= 2) {
        EXPECT_EQ(p.bl, p.edge.i - 2);
        for (auto x : p.extras) EXPECT_EQ(x, 0);
      } else {
        EXPECT_EQ(p.bl, 0);
      }
      EXPECT_EQ(p.br, 0);
    }
    for (const auto& [e, x] : g.negative) EXPECT_EQ(x, 0);
    auto [back_a, back_f] = bijection_inverse(g, n1);
    EXPECT_EQ(back_a, a);
    EXPECT_EQ(back_f, zero_dynamic_flow(make_family_graph(a)));
  }
}

TEST(Bijection, MutuallyInverseOnFullDomains) {
  for (int n1 = 3; n1 <= 4; ++n1) {
    const auto kc = make_complete_C(n1);
    std::set<DynamicFlow> images;
    std::size_t domain = 0;
    BigInt family_total = 0;
    for (const auto& a : family_vectors(n1)) {
      const auto G = make_family_graph(a);
      EXPECT_EQ(volD_netflow(G), a);
      auto flows = enumerate_dynamic_flows(G, a);
      family_total += kdyn(G, a);
      domain += flows.size();
      for (const auto& f : flows) {
        auto g = bijection_forward(f, a);
        EXPECT_TRUE(is_dynamic_flow(kc, staircase(n1), g));
        images.insert(g);
        auto [ba, bf] = bijection_inverse(g, n1);
        EXPECT_EQ(ba, a);
        EXPECT_EQ(bf, f);
      }
    }
    auto all = enumerate_dynamic_flows(kc, staircase(n1));
    EXPECT_EQ(images.size(), domain);
    EXPECT_EQ(all.size(), domain);
    for (const auto& g : all) EXPECT_TRUE(images.count(g));
    EXPECT_EQ(family_total, kdyn(kc, staircase(n1)));
  }
}

TEST(Bijection, RejectsMalformed) {
  auto g = zero_dynamic_flow(make_complete_C(3));
  EXPECT_THROW(bijection_inverse(g, 3), NotInImageError);  // netflow (0,0,0), not (0,0,1)
  auto f = zero_dynamic_flow(make_family_graph({0, 0, 0}));
  EXPECT_THROW(bijection_forward(f, {0, 0, 1}), std::invalid_argument);
}

TEST(Dynamic, JsonRoundTrip) {
  for (const auto& f : enumerate_dynamic_flows(*named_graph("fig2"), {2, 1, 1})) {
    EXPECT_EQ(dynamic_flow_from_json(nlohmann::json::parse(to_json(f).dump())), f);
  }
}
