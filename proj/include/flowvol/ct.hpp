#pragma once

// Iterated constant terms of products of powers of linear forms in x_1..x_m,
// expanded in the region |x_1| << |x_2| << ... << |x_m| << 1.

#include <optional>
#include <string>
#include <vector>

#include "flowvol/exact.hpp"
#include "flowvol/graph.hpp"

namespace flowvol {

using Exponents = std::vector<long>;

struct LinearTerm {
  Rational coeff{1};
  Exponents exps;  // one entry per variable, innermost first

  friend bool operator==(const LinearTerm&, const LinearTerm&) = default;
};

/// (sum of terms)^exponent. A single term with coefficient 1 is a monomial
/// factor such as x_1^{-1}; everything else is a binomial-series factor such
/// as (1 - x_1 - x_2)^{-1}.
struct LaurentFactor {
  std::vector<LinearTerm> terms;
  long exponent = 1;

  friend bool operator==(const LaurentFactor&, const LaurentFactor&) = default;
};

struct CTProduct {
  Rational coeff{1};
  std::vector<LaurentFactor> factors;

  friend bool operator==(const CTProduct&, const CTProduct&) = default;
};

/// CT_{x_m} ... CT_{x_1} of a sum of products. `variables` lists names
/// innermost first, so variables[0] is eliminated first.
struct CTExpression {
  std::vector<std::string> variables;
  std::vector<CTProduct> products;

  std::size_t var_count() const { return variables.size(); }
  friend bool operator==(const CTExpression&, const CTExpression&) = default;
};

// x1, ..., xm with x1 innermost.
std::vector<std::string> default_variables(std::size_t m);

// Factor helpers over m variables; variable indices are 0-based.
LaurentFactor monomial_factor(std::size_t m, std::size_t var, long exponent);
// (1 - c x_i)^e
LaurentFactor one_minus(std::size_t m, std::size_t var, long exponent, const Rational& c = 1);
// (x_j - x_i)^e
LaurentFactor difference(std::size_t m, std::size_t j, std::size_t i, long exponent);
// (1 - x_i - x_j)^e
LaurentFactor one_minus_sum(std::size_t m, std::size_t i, std::size_t j, long exponent);
// (1 - x_i x_j^{-1})^e
LaurentFactor one_minus_ratio(std::size_t m, std::size_t i, std::size_t j, long exponent);

// Eliminates variables[0]. Products in the result contain only monomial
// factors and factors (1 - u)^{-q} whose u has no constant term.
CTExpression ct_innermost(const CTExpression& expr);
Rational iterated_ct(const CTExpression& expr);

/// Independent cross-check: substitutes x_k = t_k t_{k+1} ... t_m, which
/// turns every expansion into an ordinary power series in t, and reads the
/// target coefficient from a dense table truncated at total t-degree D.
/// Evaluated at two consecutive orders D = |target|, |target|+1 which must
/// agree.
struct SeriesEvaluation {
  Rational value;
  long order = 0;
  bool stable = false;
};
SeriesEvaluation iterated_ct_series(const CTExpression& expr);

// Left-hand sides. CRY uses n variables; CRYD/CRYC use n-1.
// Differences are always written (x_larger - x_smaller).
CTExpression build_cry_lhs(long n);
CTExpression build_cryd_lhs(long n);
CTExpression build_cryc_lhs(long n);
CTExpression build_morris_lhs(const MorrisParams& p);
// With literal_order the pair factor is (x_j - x_k)^{-2c} for j < k, which
// differs from the default by (-1)^{2c C(n,2)}.
CTExpression build_thmC_lhs(const MorrisParams& p, bool literal_order = false);

// CT of x^{-a} times the dynamic generating series of G, i.e. the coefficient
// of x^a.
CTExpression build_kdyn_coeff_expr(const SignedGraph& g, const Netflow& a);
// [x_1 x_2^2 ... x_{n-1}^{n-1}] prod_{i<j} (1 - x_i/x_j)^{-1} (1 - x_i - x_j)^{-1}
//   prod_i (1 - x_i)^{-2} (1 - 2x_i)^{-1}, as a constant term.
CTExpression build_reduced_staircase_expr(long n);

struct IdentityReport {
  std::string name;
  std::string params;
  Rational lhs;
  Rational rhs;
  std::optional<Rational> series_lhs;
  bool equal = false;
  double seconds = 0;
};

// name is one of cry, cryd, cryc (using p.n) or morris, thmC.
IdentityReport verify_identity(const std::string& name, const MorrisParams& p,
                               bool cross_check = false);

// Text form: CT[x2,x1] x1^-1 * (1 - x1)^-2 * (x2 - x1)^-1
// The bracket lists variables outermost first.
std::string format_ct(const CTExpression& expr);
CTExpression parse_ct(const std::string& text);

}  // namespace flowvol
