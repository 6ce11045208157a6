#pragma once

// Term representation shared by the constant-term backends.

#include <map>
#include <utility>
#include <vector>

#include "flowvol/ct.hpp"

namespace flowvol::ct_detail {

// u in (1 - u); sorted list of (exponents, coefficient), no constant term.
using Base = std::vector<std::pair<Exponents, Rational>>;

// coefficient * x^mono * prod_b (1 - b)^{-q_b}
struct TermKey {
  Exponents mono;
  std::map<Base, long> bases;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};
using TermSum = std::map<TermKey, Rational>;

// True if x^a is much larger than x^b in the expansion region.
bool dominates(const Exponents& a, const Exponents& b);
Rational rational_pow(const Rational& x, long e);

// L = c x^t (1 - u)
struct Normalized {
  Rational c;
  Exponents t;
  Base u;
};
Normalized normalize(const std::vector<LinearTerm>& terms, std::size_t m);

void multiply_factor(TermSum& sum, const LaurentFactor& f, std::size_t m);
TermSum to_terms(const CTExpression& expr);
CTExpression from_terms(const TermSum& sum, std::vector<std::string> variables);
TermSum eliminate_innermost(const TermSum& sum);

}  // namespace flowvol::ct_detail
