#include "flowvol/ct.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <stdexcept>

#include "flowvol/ct_internal.hpp"
#include "flowvol/dynflow.hpp"
#include "flowvol/errors.hpp"

namespace flowvol {

std::vector<std::string> default_variables(std::size_t m) {
  std::vector<std::string> names;
  for (std::size_t k = 1; k <= m; ++k) names.push_back("x" + std::to_string(k));
  return names;
}

namespace {

Exponents unit(std::size_t m, std::size_t var, long power = 1) {
  if (var >= m) throw std::invalid_argument("variable index out of range");
  Exponents e(m, 0);
  e[var] = power;
  return e;
}

}  // namespace

LaurentFactor monomial_factor(std::size_t m, std::size_t var, long exponent) {
  return {{{Rational(1), unit(m, var)}}, exponent};
}

LaurentFactor one_minus(std::size_t m, std::size_t var, long exponent, const Rational& c) {
  return {{{Rational(1), Exponents(m, 0)}, {-c, unit(m, var)}}, exponent};
}

LaurentFactor difference(std::size_t m, std::size_t j, std::size_t i, long exponent) {
  return {{{Rational(1), unit(m, j)}, {Rational(-1), unit(m, i)}}, exponent};
}

LaurentFactor one_minus_sum(std::size_t m, std::size_t i, std::size_t j, long exponent) {
  return {{{Rational(1), Exponents(m, 0)}, {Rational(-1), unit(m, i)}, {Rational(-1), unit(m, j)}},
          exponent};
}

LaurentFactor one_minus_ratio(std::size_t m, std::size_t i, std::size_t j, long exponent) {
  Exponents e = unit(m, i);
  e[j] = -1;
  return {{{Rational(1), Exponents(m, 0)}, {Rational(-1), e}}, exponent};
}

namespace ct_detail {

bool dominates(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

Rational rational_pow(const Rational& x, long e) {
  if (e == 0) return 1;
  if (x == 0) {
    if (e < 0) throw ExpansionError("zero raised to a negative power");
    return 0;
  }
  const unsigned long k = static_cast<unsigned long>(e < 0 ? -e : e);
  BigInt num, den;
  mpz_pow_ui(num.get_mpz_t(), x.get_num().get_mpz_t(), k);
  mpz_pow_ui(den.get_mpz_t(), x.get_den().get_mpz_t(), k);
  return e < 0 ? make_rational(den, num) : make_rational(num, den);
}

Normalized normalize(const std::vector<LinearTerm>& terms, std::size_t m) {
  std::map<Exponents, Rational> merged;
  for (const auto& t : terms) {
    if (t.exps.size() != m) throw std::invalid_argument("term has wrong number of exponents");
    merged[t.exps] += t.coeff;
  }
  std::erase_if(merged, [](const auto& kv) { return kv.second == 0; });
  if (merged.empty()) throw ExpansionError("factor is identically zero");
  auto dom = merged.begin();
  for (auto it = merged.begin(); it != merged.end(); ++it) {
    if (dominates(it->first, dom->first)) dom = it;
  }
  Normalized out{dom->second, dom->first, {}};
  for (const auto& [e, c] : merged) {
    if (e == dom->first) continue;
    Exponents d(m);
    for (std::size_t i = 0; i < m; ++i) d[i] = e[i] - dom->first[i];
    out.u.emplace_back(std::move(d), -c / dom->second);
  }
  std::sort(out.u.begin(), out.u.end());
  return out;
}

void multiply_factor(TermSum& sum, const LaurentFactor& f, std::size_t m) {
  if (f.exponent == 0) return;
  const auto n = normalize(f.terms, m);
  const Rational pre = rational_pow(n.c, f.exponent);
  TermSum out;
  for (const auto& [k0, c0] : sum) {
    TermKey key = k0;
    Rational coeff = c0;
    for (std::size_t i = 0; i < m; ++i) key.mono[i] += f.exponent * n.t[i];
    coeff *= pre;
    if (!n.u.empty() && f.exponent < 0) key.bases[n.u] += -f.exponent;
    out[key] += coeff;
  }
  if (!n.u.empty() && f.exponent > 0) {
    // (1 - u)^e as a polynomial, one factor of (1 - u) at a time.
    for (long r = 0; r < f.exponent; ++r) {
      TermSum next;
      for (const auto& [key, coeff] : out) {
        next[key] += coeff;
        for (const auto& [e, c] : n.u) {
          TermKey k2 = key;
          for (std::size_t i = 0; i < m; ++i) k2.mono[i] += e[i];
          next[k2] -= coeff * c;
        }
      }
      out = std::move(next);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  sum = std::move(out);
}

TermSum to_terms(const CTExpression& expr) {
  const std::size_t m = expr.var_count();
  TermSum total;
  for (const auto& p : expr.products) {
    TermSum sum;
    sum[TermKey{Exponents(m, 0), {}}] = p.coeff;
    for (const auto& f : p.factors) multiply_factor(sum, f, m);
    for (const auto& [k, c] : sum) total[k] += c;
  }
  std::erase_if(total, [](const auto& kv) { return kv.second == 0; });
  return total;
}

CTExpression from_terms(const TermSum& sum, std::vector<std::string> variables) {
  const std::size_t m = variables.size();
  CTExpression expr{std::move(variables), {}};
  for (const auto& [key, coeff] : sum) {
    CTProduct p{coeff, {}};
    for (std::size_t i = 0; i < m; ++i) {
      if (key.mono[i] != 0) p.factors.push_back(monomial_factor(m, i, key.mono[i]));
    }
    for (const auto& [base, q] : key.bases) {
      LaurentFactor f{{{Rational(1), Exponents(m, 0)}}, -q};
      for (const auto& [e, c] : base) f.terms.push_back({-c, e});
      p.factors.push_back(std::move(f));
    }
    expr.products.push_back(std::move(p));
  }
  return expr;
}

namespace {

struct Active {
  std::size_t base;  // position in the term's base list
  long k;            // exponent of the eliminated variable, >= 1
  Rational c;
  Exponents rest;    // remaining exponents
};

Exponents drop_first(const Exponents& e) { return Exponents(e.begin() + 1, e.end()); }

}  // namespace

TermSum eliminate_innermost(const TermSum& sum) {
  TermSum out;
  for (const auto& [key, coeff] : sum) {
    const long p = key.mono.at(0);
    std::vector<std::pair<Base, long>> passive;  // W_b and q_b
    std::vector<Active> active;
    for (const auto& [base, q] : key.bases) {
      Base w;
      for (const auto& [e, c] : base) {
        if (e[0] < 0) throw ExpansionError("series term with negative power of the innermost variable");
        if (e[0] == 0) {
          w.emplace_back(drop_first(e), c);
        } else {
          active.push_back({passive.size(), e[0], c, drop_first(e)});
        }
      }
      passive.emplace_back(std::move(w), q);
    }
    if (p > 0) continue;

    // Distribute the needed degree -p over the active terms.
    std::vector<long> uses(active.size(), 0);
    const Exponents mono = drop_first(key.mono);
    auto emit = [&]() {
      Rational c = coeff;
      Exponents e = mono;
      std::vector<long> total(passive.size(), 0);
      for (std::size_t a = 0; a < active.size(); ++a) {
        if (uses[a] == 0) continue;
        total[active[a].base] += uses[a];
        c *= rational_pow(active[a].c, uses[a]);
        c /= Rational(factorial(static_cast<unsigned long>(uses[a])));
        for (std::size_t i = 0; i < e.size(); ++i) e[i] += uses[a] * active[a].rest[i];
      }
      TermKey k2{std::move(e), {}};
      for (std::size_t b = 0; b < passive.size(); ++b) {
        const long q = passive[b].second;
        const long E = total[b];
        // (1 - W - A)^{-q} = sum_E C(q+E-1, E) A^E (1 - W)^{-(q+E)}, and the
        // multinomial E!/prod(e_f!) splits A^E over the active terms.
        c *= Rational(binomial(q + E - 1, E) * factorial(static_cast<unsigned long>(E)));
        const auto& w = passive[b].first;
        if (w.empty()) continue;
        for (const auto& [we, wc] : w) {
          if (std::all_of(we.begin(), we.end(), [](long x) { return x == 0; })) {
            throw ExpansionError("series base lost its small terms");
          }
        }
        k2.bases[w] += q + E;
      }
      out[k2] += c;
    };
    std::function<void(std::size_t, long)> go = [&](std::size_t a, long need) {
      if (a == active.size()) {
        if (need == 0) emit();
        return;
      }
      for (long x = 0; x * active[a].k <= need; ++x) {
        uses[a] = x;
        go(a + 1, need - x * active[a].k);
      }
      uses[a] = 0;
    };
    go(0, -p);
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

}  // namespace ct_detail

CTExpression ct_innermost(const CTExpression& expr) {
  if (expr.variables.empty()) throw std::invalid_argument("no variable left to eliminate");
  auto sum = ct_detail::eliminate_innermost(ct_detail::to_terms(expr));
  return ct_detail::from_terms(sum, {expr.variables.begin() + 1, expr.variables.end()});
}

Rational iterated_ct(const CTExpression& expr) {
  auto sum = ct_detail::to_terms(expr);
  for (std::size_t k = 0; k < expr.var_count(); ++k) sum = ct_detail::eliminate_innermost(sum);
  Rational total = 0;
  for (const auto& [key, coeff] : sum) {
    if (!key.bases.empty()) throw ExpansionError("leftover series factor after elimination");
    total += coeff;
  }
  return total;
}

CTExpression build_cry_lhs(long n) {
  if (n < 0) throw std::invalid_argument("n must be nonnegative");
  const auto m = static_cast<std::size_t>(n);
  CTProduct p;
  for (std::size_t i = 0; i < m; ++i) p.factors.push_back(one_minus(m, i, -2));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) p.factors.push_back(difference(m, j, i, -1));
  }
  return {default_variables(m), {p}};
}

namespace {

CTExpression cry_typed_lhs(long n, bool loops) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const auto m = static_cast<std::size_t>(n - 1);
  CTProduct p;
  for (std::size_t i = 0; i < m; ++i) {
    p.factors.push_back(monomial_factor(m, i, -1));
    p.factors.push_back(one_minus(m, i, -2));
    if (loops) p.factors.push_back(one_minus(m, i, -1, 2));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      p.factors.push_back(difference(m, j, i, -1));
      p.factors.push_back(one_minus_sum(m, i, j, -1));
    }
  }
  return {default_variables(m), {p}};
}

void check_morris(const MorrisParams& p) {
  if (p.n < 0) throw std::invalid_argument("n must be nonnegative");
  if (p.two_c <= 0) throw std::invalid_argument("c must be a positive half-integer");
}

}  // namespace

CTExpression build_cryd_lhs(long n) { return cry_typed_lhs(n, false); }
CTExpression build_cryc_lhs(long n) { return cry_typed_lhs(n, true); }

CTExpression build_morris_lhs(const MorrisParams& p) {
  check_morris(p);
  const auto m = static_cast<std::size_t>(p.n);
  CTProduct prod;
  for (std::size_t i = 0; i < m; ++i) {
    if (p.a != 0) prod.factors.push_back(one_minus(m, i, -p.a));
    if (p.b != 0) prod.factors.push_back(monomial_factor(m, i, -p.b));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) prod.factors.push_back(difference(m, j, i, -p.two_c));
  }
  return {default_variables(m), {prod}};
}

CTExpression build_thmC_lhs(const MorrisParams& p, bool literal_order) {
  check_morris(p);
  const auto m = static_cast<std::size_t>(p.n);
  CTProduct prod;
  for (std::size_t j = 0; j < m; ++j) {
    if (p.a != 1) prod.factors.push_back(monomial_factor(m, j, 1 - p.a));
    if (p.a != 0) prod.factors.push_back(one_minus(m, j, -p.a));
    if (p.b != 0) prod.factors.push_back(one_minus(m, j, -p.b, 2));
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t k = j + 1; k < m; ++k) {
      prod.factors.push_back(literal_order ? difference(m, j, k, -p.two_c)
                                           : difference(m, k, j, -p.two_c));
      prod.factors.push_back(one_minus_sum(m, j, k, -p.two_c));
    }
  }
  return {default_variables(m), {prod}};
}

CTExpression build_kdyn_coeff_expr(const SignedGraph& g, const Netflow& a) {
  if (static_cast<int>(a.size()) != g.vertex_count()) {
    throw std::invalid_argument("netflow length does not match the graph");
  }
  const auto m = static_cast<std::size_t>(g.vertex_count());
  CTProduct p;
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i] != 0) p.factors.push_back(monomial_factor(m, i, -a[i]));
  }
  for (const auto& e : g.edges()) {
    const auto i = static_cast<std::size_t>(e.i - 1), j = static_cast<std::size_t>(e.j - 1);
    if (e.is_loop()) {
      p.factors.push_back(one_minus(m, i, -1, 2));
    } else if (e.is_positive()) {
      p.factors.push_back(one_minus_sum(m, i, j, -1));
    } else {
      p.factors.push_back(one_minus_ratio(m, i, j, -1));
    }
  }
  return {default_variables(m), {p}};
}

CTExpression build_reduced_staircase_expr(long n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  const auto m = static_cast<std::size_t>(n - 1);
  CTProduct p;
  for (std::size_t i = 0; i < m; ++i) {
    p.factors.push_back(monomial_factor(m, i, -static_cast<long>(i + 1)));
    p.factors.push_back(one_minus(m, i, -2));
    p.factors.push_back(one_minus(m, i, -1, 2));
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      p.factors.push_back(one_minus_ratio(m, i, j, -1));
      p.factors.push_back(one_minus_sum(m, i, j, -1));
    }
  }
  return {default_variables(m), {p}};
}

IdentityReport verify_identity(const std::string& name, const MorrisParams& p, bool cross_check) {
  const auto start = std::chrono::steady_clock::now();
  IdentityReport r;
  r.name = name;
  CTExpression lhs;
  if (name == "cry") {
    lhs = build_cry_lhs(p.n);
    r.rhs = Rational(cry_volume_formula(p.n + 2));
    r.params = "n=" + std::to_string(p.n);
  } else if (name == "cryd") {
    lhs = build_cryd_lhs(p.n);
    r.rhs = Rational(cryd_volume_formula(p.n));
    r.params = "n=" + std::to_string(p.n);
  } else if (name == "cryc") {
    lhs = build_cryc_lhs(p.n);
    r.rhs = Rational(cryc_volume_formula(p.n));
    r.params = "n=" + std::to_string(p.n);
  } else if (name == "morris") {
    lhs = build_morris_lhs(p);
    r.rhs = morris_rhs(p);
    r.params = p.describe();
  } else if (name == "thmC") {
    lhs = build_thmC_lhs(p);
    r.rhs = thmC_rhs(p);
    r.params = p.describe();
  } else {
    throw std::invalid_argument("unknown identity '" + name + "'");
  }
  r.lhs = iterated_ct(lhs);
  r.equal = r.lhs == r.rhs;
  if (cross_check) {
    auto s = iterated_ct_series(lhs);
    r.series_lhs = s.value;
    r.equal = r.equal && s.stable && s.value == r.lhs;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

BigInt kdyn_via_series(const SignedGraph& g, const Netflow& a) {
  const Rational v = iterated_ct(build_kdyn_coeff_expr(g, a));
  if (v.get_den() != 1) throw std::logic_error("non-integral coefficient");
  return v.get_num();
}

}  // namespace flowvol
