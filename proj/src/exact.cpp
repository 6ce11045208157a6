#include "flowvol/exact.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace flowvol {

std::string to_string(const BigInt& value) { return value.get_str(); }

std::string to_string(const Rational& value) {
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_rational(const std::string& text) {
  Rational r;
  if (text.empty() || r.set_str(text, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

Rational make_rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt binomial(long n, long k) {
  if (k < 0) return 0;
  BigInt r;
  if (n >= 0) {
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  } else {
    BigInt nn = n;
    mpz_bin_ui(r.get_mpz_t(), nn.get_mpz_t(), static_cast<unsigned long>(k));
  }
  return r;
}

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

Rational pow2_signed(long e) {
  if (e >= 0) return Rational(pow2(static_cast<unsigned long>(e)));
  return Rational(BigInt(1), pow2(static_cast<unsigned long>(-e)));
}

BigInt catalan(unsigned long k) {
  static std::mutex mutex;
  static std::vector<BigInt> memo;
  std::lock_guard<std::mutex> lock(mutex);
  while (memo.size() <= k) {
    const auto i = static_cast<long>(memo.size());
    memo.push_back(binomial(2 * i, i) / (i + 1));
  }
  return memo[k];
}

Rational GammaHalfValue::to_rational() const {
  if (sqrt_pi_power != 0) {
    throw std::domain_error("Gamma product keeps a factor sqrt(pi)^" +
                            std::to_string(sqrt_pi_power));
  }
  return q;
}

GammaHalfValue operator*(const GammaHalfValue& x, const GammaHalfValue& y) {
  return {x.q * y.q, x.sqrt_pi_power + y.sqrt_pi_power};
}

GammaHalfValue operator/(const GammaHalfValue& x, const GammaHalfValue& y) {
  if (y.q == 0) throw std::domain_error("division by zero Gamma value");
  return {x.q / y.q, x.sqrt_pi_power - y.sqrt_pi_power};
}

GammaHalfValue gamma_half(long two_x) {
  if (two_x <= 0) {
    throw std::domain_error("Gamma evaluated at nonpositive argument " +
                            to_string(make_rational(two_x, 2)));
  }
  if (two_x % 2 == 0) {
    return {Rational(factorial(static_cast<unsigned long>(two_x / 2 - 1))), 0};
  }
  // Gamma(k + 1/2) = (2k)! / (4^k k!) sqrt(pi)
  const auto k = static_cast<unsigned long>((two_x - 1) / 2);
  Rational q(factorial(2 * k), pow2(2 * k) * factorial(k));
  q.canonicalize();
  return {q, 1};
}

std::string MorrisParams::describe() const {
  std::ostringstream os;
  os << "n=" << n << " a=" << a << " b=" << b << " c=" << to_string(c());
  return os.str();
}

MorrisParams MorrisParams::with_c(long n, long a, long b, const Rational& c) {
  Rational doubled = c * 2;
  if (doubled.get_den() != 1 || doubled <= 0) {
    throw std::invalid_argument("c must be a positive half-integer, got " + to_string(c));
  }
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  return MorrisParams{n, a, b, doubled.get_num().get_si()};
}

namespace {

void check_params(const MorrisParams& p) {
  if (p.n < 0) throw std::invalid_argument("n must be nonnegative");
  if (p.two_c <= 0) throw std::invalid_argument("c must be a positive half-integer");
  if (p.b < 0) throw std::invalid_argument("b must be nonnegative");
}

}  // namespace

Rational morris_rhs(const MorrisParams& p) {
  check_params(p);
  GammaHalfValue product;
  for (long j = 0; j < p.n; ++j) {
    product = product * gamma_half(2 * p.a + 2 * p.b + (p.n - 1 + j) * p.two_c) *
              gamma_half(p.two_c);
    product = product / gamma_half(2 * p.a + j * p.two_c) /
              gamma_half(p.two_c * (1 + j)) /
              gamma_half(2 * p.b + j * p.two_c + 2);
  }
  return product.to_rational() / Rational(factorial(static_cast<unsigned long>(p.n)));
}

Rational thmC_rhs(const MorrisParams& p) {
  check_params(p);
  GammaHalfValue product;
  for (long j = 0; j < p.n; ++j) {
    product = product * gamma_half(2 * p.a + p.b - 1 + (p.n - 1 + j) * p.two_c) *
              gamma_half(p.two_c);
    product = product / gamma_half(p.b + 1 + j * p.two_c) /
              gamma_half(p.two_c * (1 + j)) /
              gamma_half(2 * p.a + j * p.two_c);
  }
  // 4c C(n,2) = 2 (2c) C(n,2)
  const long exponent = 2 * p.a * p.n + 2 * p.two_c * (p.n * (p.n - 1) / 2) - 2 * p.n;
  return pow2_signed(exponent) * product.to_rational() /
         Rational(factorial(static_cast<unsigned long>(p.n)));
}

BigInt cry_volume_formula(long n) {
  if (n < 2) throw std::invalid_argument("CRY_n needs n >= 2");
  BigInt r = 1;
  for (long i = 1; i <= n - 2; ++i) r *= catalan(static_cast<unsigned long>(i));
  return r;
}

BigInt cryd_volume_formula(long n) {
  if (n < 1) throw std::invalid_argument("CRYD_{n+1} needs n >= 1");
  BigInt r = pow2(static_cast<unsigned long>((n - 1) * (n - 1)));
  for (long k = 0; k < n; ++k) r *= catalan(static_cast<unsigned long>(k));
  return r;
}

BigInt cryc_volume_formula(long n) {
  if (n < 1) throw std::invalid_argument("CRYC_{n+1} needs n >= 1");
  BigInt r = pow2(static_cast<unsigned long>(n * (n - 1)));
  for (long k = 0; k < n; ++k) r *= catalan(static_cast<unsigned long>(k));
  return r;
}

}  // namespace flowvol
