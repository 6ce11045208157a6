#include <cctype>
#include <sstream>
#include <stdexcept>

#include "flowvol/ct.hpp"

namespace flowvol {

namespace {

std::string monomial_text(const Exponents& e, const std::vector<std::string>& vars) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += vars[i];
    if (e[i] != 1) out += "^" + std::to_string(e[i]);
  }
  return out;
}

bool is_constant(const Exponents& e) {
  for (auto x : e) {
    if (x != 0) return false;
  }
  return true;
}

// Text of |coeff| * monomial.
std::string term_body(const LinearTerm& t, const std::vector<std::string>& vars) {
  Rational c = abs(t.coeff);
  if (is_constant(t.exps)) return to_string(c);
  std::string m = monomial_text(t.exps, vars);
  return c == 1 ? m : to_string(c) + "*" + m;
}

std::string linear_text(const std::vector<LinearTerm>& terms, const std::vector<std::string>& vars) {
  if (terms.empty()) return "0";
  std::string out;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const bool neg = terms[k].coeff < 0;
    if (k == 0) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    out += term_body(terms[k], vars);
  }
  return out;
}

bool is_bare_variable(const LaurentFactor& f) {
  if (f.terms.size() != 1 || f.terms[0].coeff != 1) return false;
  int ones = 0;
  for (auto x : f.terms[0].exps) {
    if (x == 1) {
      ++ones;
    } else if (x != 0) {
      return false;
    }
  }
  return ones == 1;
}

std::string factor_text(const LaurentFactor& f, const std::vector<std::string>& vars) {
  std::string base =
      is_bare_variable(f) ? monomial_text(f.terms[0].exps, vars) : "(" + linear_text(f.terms, vars) + ")";
  return f.exponent == 1 ? base : base + "^" + std::to_string(f.exponent);
}

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  CTExpression parse() {
    expect("CT");
    expect("[");
    std::vector<std::string> outer_first;
    skip();
    if (peek() != ']') {
      outer_first.push_back(identifier());
      while (accept(",")) outer_first.push_back(identifier());
    }
    expect("]");
    CTExpression e;
    e.variables.assign(outer_first.rbegin(), outer_first.rend());
    vars_ = e.variables;
    skip();
    if (pos_ < s_.size() && s_[pos_] == '0' && rest_is_blank(pos_ + 1)) {
      pos_ = s_.size();
      return e;
    }
    bool neg = accept("-");
    e.products.push_back(product(neg));
    for (;;) {
      if (accept("+")) {
        e.products.push_back(product(false));
      } else if (accept("-")) {
        e.products.push_back(product(true));
      } else {
        break;
      }
    }
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing text");
    return e;
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  std::vector<std::string> vars_;

  [[noreturn]] void fail(const std::string& msg) const {
    throw std::invalid_argument("constant-term parse error at offset " + std::to_string(pos_) + ": " + msg);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool rest_is_blank(std::size_t p) const {
    for (; p < s_.size(); ++p) {
      if (!std::isspace(static_cast<unsigned char>(s_[p]))) return false;
    }
    return true;
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(pos_, tok.size(), tok) == 0) {
      pos_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  std::string identifier() {
    skip();
    std::size_t start = pos_;
    if (pos_ >= s_.size() || !std::isalpha(static_cast<unsigned char>(s_[pos_]))) fail("expected a name");
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    return s_.substr(start, pos_ - start);
  }
  long integer() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    std::size_t digits = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == digits) fail("expected an integer");
    return std::stol(s_.substr(start, pos_ - start));
  }
  Rational rational() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected a number");
    if (pos_ < s_.size() && s_[pos_] == '/') {
      ++pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    return parse_rational(s_.substr(start, pos_ - start));
  }
  std::size_t variable() {
    auto name = identifier();
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    fail("unknown variable '" + name + "'");
  }
  // name[^k] (* name[^k])*
  Exponents monomial() {
    Exponents e(vars_.size(), 0);
    do {
      auto v = variable();
      e[v] += accept("^") ? integer() : 1;
    } while (accept("*"));
    return e;
  }
  LinearTerm linear_term(bool neg) {
    LinearTerm t{Rational(1), Exponents(vars_.size(), 0)};
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      t.coeff = rational();
      if (accept("*")) t.exps = monomial();
    } else {
      t.exps = monomial();
    }
    if (neg) t.coeff = -t.coeff;
    return t;
  }
  LaurentFactor factor() {
    LaurentFactor f;
    if (accept("(")) {
      bool neg = accept("-");
      f.terms.push_back(linear_term(neg));
      for (;;) {
        if (accept("+")) {
          f.terms.push_back(linear_term(false));
        } else if (accept("-")) {
          f.terms.push_back(linear_term(true));
        } else {
          break;
        }
      }
      expect(")");
    } else {
      Exponents e(vars_.size(), 0);
      e[variable()] = 1;
      f.terms.push_back({Rational(1), e});
    }
    if (accept("^")) f.exponent = integer();
    return f;
  }
  CTProduct product(bool neg) {
    CTProduct p;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      p.coeff = rational();
      if (accept("*")) p.factors.push_back(factor());
    } else {
      p.factors.push_back(factor());
    }
    if (!p.factors.empty()) {
      while (accept("*")) p.factors.push_back(factor());
    }
    if (neg) p.coeff = -p.coeff;
    return p;
  }
};

}  // namespace

std::string format_ct(const CTExpression& expr) {
  std::string out = "CT[";
  for (std::size_t k = expr.variables.size(); k-- > 0;) {
    out += expr.variables[k];
    if (k > 0) out += ",";
  }
  out += "] ";
  if (expr.products.empty()) return out + "0";
  for (std::size_t k = 0; k < expr.products.size(); ++k) {
    const auto& p = expr.products[k];
    const bool neg = p.coeff < 0;
    if (k == 0) {
      out += neg ? "-" : "";
    } else {
      out += neg ? " - " : " + ";
    }
    const Rational c = abs(p.coeff);
    std::string body;
    if (c != 1 || p.factors.empty()) body = to_string(c);
    for (const auto& f : p.factors) {
      if (!body.empty()) body += " * ";
      body += factor_text(f, expr.variables);
    }
    out += body;
  }
  return out;
}

CTExpression parse_ct(const std::string& text) { return Parser(text).parse(); }

}  // namespace flowvol
