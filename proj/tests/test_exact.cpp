#include <gtest/gtest.h>

#include "flowvol/exact.hpp"

using namespace flowvol;

TEST(Catalan, KnownValues) {
  EXPECT_EQ(catalan(0), 1);
  EXPECT_EQ(catalan(3), 5);
  EXPECT_EQ(catalan(5), 42);
  EXPECT_EQ(catalan(10), 16796);
}

TEST(Catalan, MatchesRecurrence) {
  // Cat(k+1) = sum Cat(i) Cat(k-i)
  for (unsigned long k = 0; k < 20; ++k) {
    BigInt s = 0;
    for (unsigned long i = 0; i <= k; ++i) s += catalan(i) * catalan(k - i);
    EXPECT_EQ(catalan(k + 1), s) << k;
  }
}

TEST(GammaHalf, SmallArguments) {
  EXPECT_EQ(gamma_half(1), (GammaHalfValue{Rational(1), 1}));
  EXPECT_EQ(gamma_half(6), (GammaHalfValue{Rational(2), 0}));
  EXPECT_EQ(gamma_half(5), (GammaHalfValue{Rational(3, 4), 1}));
  EXPECT_EQ(gamma_half(2), (GammaHalfValue{Rational(1), 0}));
}

TEST(GammaHalf, FunctionalEquation) {
  // Gamma(x+1) = x Gamma(x)
  for (long two_x = 1; two_x < 30; ++two_x) {
    auto lhs = gamma_half(two_x + 2);
    auto rhs = gamma_half(two_x);
    EXPECT_EQ(lhs.sqrt_pi_power, rhs.sqrt_pi_power);
    EXPECT_EQ(lhs.q, rhs.q * make_rational(two_x, 2));
  }
}

TEST(GammaHalf, RejectsNonpositive) {
  EXPECT_THROW(gamma_half(0), std::domain_error);
  EXPECT_THROW(gamma_half(-3), std::domain_error);
  EXPECT_THROW(gamma_half(1).to_rational(), std::domain_error);
}

TEST(Morris, Examples) {
  EXPECT_EQ(morris_rhs({1, 2, 0, 1}), 1);
  EXPECT_EQ(morris_rhs({2, 2, 0, 1}), 2);
  EXPECT_EQ(morris_rhs({1, 3, 2, 1}), 6);
}

TEST(Morris, SingleVariableIsBinomial) {
  for (long a = 1; a <= 6; ++a) {
    for (long b = 0; b <= 5; ++b) {
      for (long two_c = 1; two_c <= 4; ++two_c) {
        EXPECT_EQ(morris_rhs({1, a, b, two_c}), Rational(binomial(a + b - 1, b)))
            << a << ' ' << b << ' ' << two_c;
      }
    }
  }
}

TEST(Morris, CatalanSpecialization) {
  for (long n = 1; n <= 7; ++n) {
    BigInt prod = 1;
    for (long k = 1; k <= n; ++k) prod *= catalan(static_cast<unsigned long>(k));
    EXPECT_EQ(morris_rhs({n, 2, 0, 1}), Rational(prod)) << n;
  }
}

TEST(ThmC, Examples) {
  EXPECT_EQ(thmC_rhs({2, 2, 1, 1}), 128);
  EXPECT_EQ(thmC_rhs({2, 2, 0, 1}), 32);
  // Evaluated exactly: 2^2 G(3/2) G(1/2) / (G(1/2) G(1/2) G(2)) = 2.
  EXPECT_EQ(thmC_rhs({1, 2, 0, 1}), 2);
}

TEST(ThmC, SpecializationsGiveFamilyVolumes) {
  for (long n = 1; n <= 6; ++n) {
    EXPECT_EQ(thmC_rhs({n, 2, 0, 1}), Rational(cryd_volume_formula(n + 1))) << n;
    EXPECT_EQ(thmC_rhs({n, 2, 1, 1}), Rational(cryc_volume_formula(n + 1))) << n;
  }
}

TEST(GammaRatio, QuotientIsPowerOfTwo) {
  // G(n+1) G(1/2) / (G((n+2)/2) G((n+1)/2)) = 2^n
  for (long n = 1; n <= 6; ++n) {
    auto v = gamma_half(2 * n + 2) * gamma_half(1) / gamma_half(n + 2) / gamma_half(n + 1);
    EXPECT_EQ(v.to_rational(), Rational(pow2(static_cast<unsigned long>(n)))) << n;
  }
}

TEST(Formulas, CryValues) {
  EXPECT_EQ(cry_volume_formula(2), 1);
  EXPECT_EQ(cry_volume_formula(4), 2);
  EXPECT_EQ(cry_volume_formula(6), 140);
  EXPECT_THROW(cry_volume_formula(1), std::invalid_argument);
}

TEST(Formulas, CrydCrycValues) {
  EXPECT_EQ(cryd_volume_formula(1), 1);
  EXPECT_EQ(cryd_volume_formula(2), 2);
  EXPECT_EQ(cryd_volume_formula(3), 32);
  EXPECT_EQ(cryc_volume_formula(1), 1);
  EXPECT_EQ(cryc_volume_formula(2), 4);
  EXPECT_EQ(cryc_volume_formula(3), 128);
  for (long n = 1; n <= 10; ++n) {
    EXPECT_EQ(cryc_volume_formula(n), pow2(static_cast<unsigned long>(n - 1)) * cryd_volume_formula(n));
  }
}

TEST(MorrisParams, HalfIntegerC) {
  auto p = MorrisParams::with_c(2, 1, 1, Rational(1, 2));
  EXPECT_EQ(p.two_c, 1);
  EXPECT_EQ(p.c(), Rational(1, 2));
  EXPECT_THROW(MorrisParams::with_c(2, 1, 1, Rational(1, 3)), std::invalid_argument);
  EXPECT_THROW(MorrisParams::with_c(2, 1, 1, Rational(0)), std::invalid_argument);
}

TEST(Rationals, ParseAndPrint) {
  EXPECT_EQ(to_string(parse_rational("6/4")), "3/2");
  EXPECT_EQ(to_string(parse_rational("-7")), "-7");
  EXPECT_THROW(parse_rational("x"), std::invalid_argument);
  EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
}
