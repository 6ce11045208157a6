#pragma once

// Exact integers and rationals, Gamma values at positive half-integers,
// Catalan numbers and the closed-form volume and constant-term right-hand
// sides used throughout the library.

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace flowvol {

using BigInt = mpz_class;
using Rational = mpq_class;

std::string to_string(const BigInt& value);
// Reduced fraction, "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& value);
Rational parse_rational(const std::string& text);
// num/den in lowest terms. Prefer this to the two-argument mpq_class
// constructor, which does not canonicalize.
Rational make_rational(const BigInt& num, const BigInt& den);

BigInt factorial(unsigned long n);
BigInt binomial(long n, long k);
BigInt pow2(unsigned long e);
// 2^e for any integer exponent.
Rational pow2_signed(long e);

BigInt catalan(unsigned long k);

/// A value q * (sqrt(pi))^sqrt_pi_power with q rational.
///
/// This is enough to carry every Gamma product in this library, because
/// Gamma is only ever evaluated at positive half-integers: Gamma(m) for an
/// integer m is rational, and Gamma(k + 1/2) is a rational multiple of
/// sqrt(pi).
struct GammaHalfValue {
  Rational q{1};
  int sqrt_pi_power = 0;

  bool is_rational() const { return sqrt_pi_power == 0; }
  // Throws std::domain_error unless sqrt_pi_power == 0.
  Rational to_rational() const;

  friend GammaHalfValue operator*(const GammaHalfValue& x, const GammaHalfValue& y);
  friend GammaHalfValue operator/(const GammaHalfValue& x, const GammaHalfValue& y);
  friend bool operator==(const GammaHalfValue& x, const GammaHalfValue& y) = default;
};

// Gamma(two_x / 2). Throws std::domain_error for two_x <= 0.
GammaHalfValue gamma_half(long two_x);

/// Parameters of the Morris-type constant-term identities.
///
/// `c` is stored doubled so that half-integers are exact; the only values
/// accepted are positive multiples of 1/2. `n == 0` is the empty product.
struct MorrisParams {
  long n = 1;
  long a = 0;
  long b = 0;
  long two_c = 1;

  Rational c() const { return make_rational(two_c, 2); }
  std::string describe() const;

  // Throws std::invalid_argument when 2c is not a positive integer.
  static MorrisParams with_c(long n, long a, long b, const Rational& c);
};

// (1/n!) prod_{j<n} G(a+b+(n-1+j)c) G(c) / (G(a+jc) G(c+jc) G(b+jc+1)).
Rational morris_rhs(const MorrisParams& p);
// 2^{2an + 4c C(n,2) - 2n} (1/n!) prod_{j<n}
//   G(a+(b-1)/2+(n-1+j)c) G(c) / (G((b+1)/2+jc) G(c+jc) G(a+jc)).
Rational thmC_rhs(const MorrisParams& p);

// prod_{i=1}^{n-2} Cat(i), n >= 2.
BigInt cry_volume_formula(long n);
// 2^{(n-1)^2} prod_{k=0}^{n-1} Cat(k), n >= 1.
BigInt cryd_volume_formula(long n);
// 2^{n(n-1)} prod_{k=0}^{n-1} Cat(k), n >= 1.
BigInt cryc_volume_formula(long n);

}  // namespace flowvol
