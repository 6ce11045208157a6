#include <gtest/gtest.h>

#include <random>

#include "flowvol/ct.hpp"
#include "flowvol/dynflow.hpp"
#include "flowvol/errors.hpp"
#include "oracles.hpp"

using namespace flowvol;

namespace {

CTExpression single(std::size_t m, std::vector<LaurentFactor> fs) {
  return {default_variables(m), {CTProduct{Rational(1), std::move(fs)}}};
}

}  // namespace

TEST(CT, OneVariableExamples) {
  EXPECT_EQ(iterated_ct(single(1, {monomial_factor(1, 0, -1), one_minus(1, 0, -2)})), 2);
  EXPECT_EQ(iterated_ct(single(1, {monomial_factor(1, 0, -1), one_minus(1, 0, -2), one_minus(1, 0, -1, 2)})), 4);
  for (long a = 0; a <= 4; ++a) EXPECT_EQ(iterated_ct(single(1, {one_minus(1, 0, -a)})), 1);
  // Coefficient of x^3 in (1 - x)^{-4} is C(6,3).
  EXPECT_EQ(iterated_ct(single(1, {monomial_factor(1, 0, -3), one_minus(1, 0, -4)})), 20);
  // Positive powers are polynomials.
  EXPECT_EQ(iterated_ct(single(1, {monomial_factor(1, 0, -2), one_minus(1, 0, 5)})), 10);
  EXPECT_EQ(iterated_ct(single(1, {monomial_factor(1, 0, 2), one_minus(1, 0, -5)})), 0);
}

TEST(CT, ExpansionRegion) {
  // (x2 - x1)^{-1} = x2^{-1} sum (x1/x2)^k; the x1^1 x2^-2 term survives.
  auto e = single(2, {difference(2, 1, 0, -1), monomial_factor(2, 0, -1), monomial_factor(2, 1, 2)});
  EXPECT_EQ(iterated_ct(e), 1);
  // Reversing the difference flips the sign.
  auto r = single(2, {difference(2, 0, 1, -1), monomial_factor(2, 0, -1), monomial_factor(2, 1, 2)});
  EXPECT_EQ(iterated_ct(r), -1);
  // Nothing survives with a positive power of the inner variable.
  EXPECT_EQ(iterated_ct(single(2, {difference(2, 1, 0, -1), monomial_factor(2, 0, 1)})), 0);
}

TEST(CT, InnermostStep) {
  auto e = build_cryd_lhs(3);
  auto once = ct_innermost(e);
  EXPECT_EQ(once.variables, std::vector<std::string>{"x2"});
  EXPECT_EQ(iterated_ct(once), iterated_ct(e));
  auto s = iterated_ct_series(once);
  EXPECT_TRUE(s.stable);
  EXPECT_EQ(s.value, iterated_ct(e));
  EXPECT_THROW(ct_innermost(CTExpression{}), std::invalid_argument);
}

TEST(CT, CatalanProduct) {
  EXPECT_EQ(iterated_ct(build_cry_lhs(0)), 1);
  EXPECT_EQ(iterated_ct(build_cry_lhs(1)), 1);
  EXPECT_EQ(iterated_ct(build_cry_lhs(2)), 2);
  EXPECT_EQ(iterated_ct(build_cry_lhs(3)), 10);
  for (long n = 1; n <= 4; ++n) {
    BigInt p = 1;
    for (long k = 1; k <= n; ++k) p *= catalan(static_cast<unsigned long>(k));
    EXPECT_EQ(iterated_ct(build_cry_lhs(n)), Rational(p)) << n;
  }
}

TEST(CT, BuilderShapes) {
  auto d2 = build_cryd_lhs(2);
  EXPECT_EQ(format_ct(d2), "CT[x1] x1^-1 * (1 - x1)^-2");
  auto c3 = build_cryc_lhs(3);
  EXPECT_EQ(format_ct(c3),
            "CT[x2,x1] x1^-1 * (1 - x1)^-2 * (1 - 2*x1)^-1 * x2^-1 * (1 - x2)^-2 * (1 - 2*x2)^-1"
            " * (x2 - x1)^-1 * (1 - x1 - x2)^-1");
  auto m = build_morris_lhs({2, 2, 0, 1});
  EXPECT_EQ(format_ct(m), "CT[x2,x1] (1 - x1)^-2 * (1 - x2)^-2 * (x2 - x1)^-1");
  EXPECT_THROW(build_morris_lhs({2, 1, 0, 0}), std::invalid_argument);
  EXPECT_THROW(build_cryd_lhs(0), std::invalid_argument);
}

TEST(CT, IdentitiesHold) {
  for (long n = 1; n <= 4; ++n) EXPECT_TRUE(verify_identity("cry", {n, 0, 0, 1}).equal) << n;
  for (long n = 1; n <= 3; ++n) {
    auto d = verify_identity("cryd", {n, 0, 0, 1});
    auto c = verify_identity("cryc", {n, 0, 0, 1});
    EXPECT_TRUE(d.equal) << n;
    EXPECT_TRUE(c.equal) << n;
    EXPECT_EQ(c.lhs, Rational(pow2(static_cast<unsigned long>(n - 1))) * d.lhs);
  }
  EXPECT_EQ(verify_identity("cry", {3, 0, 0, 1}).lhs, 10);
  EXPECT_EQ(verify_identity("cryc", {2, 0, 0, 1}).lhs, 4);
  EXPECT_THROW(verify_identity("nope", {1, 1, 1, 1}), std::invalid_argument);
}

TEST(CT, MorrisGrid) {
  for (long n = 1; n <= 3; ++n)
    for (long a = 1; a <= 3; ++a)
      for (long b = 0; b <= 2; ++b)
        for (long two_c = 1; two_c <= 2; ++two_c) {
          auto r = verify_identity("morris", {n, a, b, two_c});
          EXPECT_TRUE(r.equal) << r.params << " lhs=" << to_string(r.lhs) << " rhs=" << to_string(r.rhs);
        }
}

TEST(CT, ThmCGrid) {
  for (long n = 1; n <= 2; ++n)
    for (long a = 1; a <= 2; ++a)
      for (long b = 0; b <= 2; ++b)
        for (long two_c = 1; two_c <= 2; ++two_c) {
          MorrisParams p{n, a, b, two_c};
          auto r = verify_identity("thmC", p);
          EXPECT_TRUE(r.equal) << r.params << " lhs=" << to_string(r.lhs) << " rhs=" << to_string(r.rhs);
          // Literal (x_j - x_k) ordering differs by (-1)^{2c C(n,2)}.
          const long flips = two_c * n * (n - 1) / 2;
          EXPECT_EQ(iterated_ct(build_thmC_lhs(p, true)), (flips % 2 ? -1 : 1) * r.lhs) << r.params;
        }
}

TEST(CT, SeriesBackendAgrees) {
  std::vector<CTExpression> cases;
  for (long n = 1; n <= 3; ++n) {
    cases.push_back(build_cry_lhs(n));
    cases.push_back(build_cryd_lhs(n));
    cases.push_back(build_cryc_lhs(n));
    cases.push_back(build_reduced_staircase_expr(n));
  }
  cases.push_back(build_morris_lhs({3, 2, 1, 1}));
  cases.push_back(build_morris_lhs({2, 3, 2, 2}));
  cases.push_back(build_thmC_lhs({2, 2, 1, 1}));
  cases.push_back(build_thmC_lhs({2, 1, 2, 2}));
  for (const auto& e : cases) {
    auto s = iterated_ct_series(e);
    EXPECT_TRUE(s.stable) << format_ct(e);
    EXPECT_EQ(s.value, iterated_ct(e)) << format_ct(e);
  }
  auto r = verify_identity("morris", {2, 1, 1, 1}, true);
  ASSERT_TRUE(r.series_lhs.has_value());
  EXPECT_EQ(*r.series_lhs, r.lhs);
  EXPECT_TRUE(r.equal);
}

TEST(CT, DynamicCoefficient) {
  EXPECT_EQ(kdyn_via_series(*named_graph("fig2"), {2, 1, 1}), 17);
  EXPECT_EQ(kdyn_via_series(make_complete_C(3), {0, 0, 1}), 4);
  EXPECT_EQ(kdyn_via_series(make_complete_C(4), {0, 0, 1, 2}), 128);
  std::mt19937 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
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
    std::uniform_int_distribution<int> val(-1, 2);
    for (auto& x : a) x = val(rng);
    EXPECT_EQ(kdyn_via_series(g, a), kdyn(g, a)) << g.shape_key();
    EXPECT_EQ(iterated_ct_series(build_kdyn_coeff_expr(g, a)).value, Rational(kdyn(g, a))) << g.shape_key();
  }
}

TEST(CT, ReducedStaircaseMatchesCryc) {
  for (long n = 1; n <= 4; ++n) {
    EXPECT_EQ(iterated_ct(build_reduced_staircase_expr(n)), iterated_ct(build_cryc_lhs(n))) << n;
    Netflow a(static_cast<std::size_t>(n + 1), 0);
    for (long v = 3; v <= n + 1; ++v) a[static_cast<std::size_t>(v - 1)] = v - 2;
    EXPECT_EQ(iterated_ct(build_kdyn_coeff_expr(make_complete_C(static_cast<int>(n + 1)), a)),
              iterated_ct(build_cryc_lhs(n)))
        << n;
  }
}

TEST(CT, FormatParseRoundTrip) {
  std::vector<CTExpression> cases = {build_cry_lhs(3), build_cryd_lhs(3), build_cryc_lhs(4),
                                     build_morris_lhs({3, 2, 1, 2}), build_thmC_lhs({2, 2, 1, 1}),
                                     build_thmC_lhs({2, 2, 0, 1}, true), build_reduced_staircase_expr(3),
                                     build_kdyn_coeff_expr(*named_graph("fig2"), {2, -1, 1}),
                                     build_cry_lhs(0), ct_innermost(build_cryc_lhs(3)),
                                     ct_innermost(build_morris_lhs({2, 1, 1, 1}))};
  CTExpression odd{default_variables(2), {}};
  cases.push_back(odd);
  odd.products.push_back({Rational(-3, 2), {}});
  odd.products.push_back({Rational(-1), {monomial_factor(2, 1, 1)}});
  odd.products.push_back({Rational(5), {{{{Rational(1, 3), {2, -1}}, {Rational(-7), {0, 0}}}, 3}}});
  cases.push_back(odd);
  for (const auto& e : cases) {
    const auto text = format_ct(e);
    EXPECT_EQ(parse_ct(text), e) << text;
    EXPECT_EQ(format_ct(parse_ct(text)), text);
  }
  EXPECT_EQ(iterated_ct(parse_ct("CT[x2,x1] x1^-1 * (1 - x1)^-2 * (x2 - x1)^-1 * x2^-2 * (1 - x2)^-2")),
            iterated_ct(single(2, {monomial_factor(2, 0, -1), one_minus(2, 0, -2), difference(2, 1, 0, -1),
                                    monomial_factor(2, 1, -2), one_minus(2, 1, -2)})));
  EXPECT_EQ(iterated_ct(parse_ct("CT[] 7")), 7);
  EXPECT_THROW(parse_ct("CT[x1] y1^-1"), std::invalid_argument);
  EXPECT_THROW(parse_ct("CT[x1 x1"), std::invalid_argument);
  EXPECT_THROW(parse_ct("x1"), std::invalid_argument);
}

TEST(CT, ExpansionErrors) {
  // (1 - x2/x1)^{-1} expands around its dominant term x2/x1 in this region.
  EXPECT_EQ(iterated_ct(single(2, {one_minus_ratio(2, 1, 0, -1), monomial_factor(2, 0, -1), monomial_factor(2, 1, 1)})), -1);
  // x1^{-1} x2^2 and 1 are incomparable after the t-substitution.
  LaurentFactor skew{{{Rational(1), {0, 0}}, {Rational(-1), {-1, 2}}}, -1};
  EXPECT_THROW(iterated_ct_series(single(2, {skew})), ExpansionError);
  EXPECT_NO_THROW(iterated_ct(single(2, {skew})));
  EXPECT_THROW(iterated_ct(single(1, {LaurentFactor{{}, -1}})), ExpansionError);
}
