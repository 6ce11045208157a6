#include <algorithm>
#include <numeric>

#include "flowvol/ct.hpp"
#include "flowvol/errors.hpp"

// Second backend. With x_k = t_k t_{k+1} ... t_m every expansion region
// condition becomes "all t small", so each factor is (dominant term) times a
// power of (1 - u) with u an ordinary power series in t.

namespace flowvol {

namespace {

constexpr std::size_t kMaxBox = 4'000'000;

using TExps = std::vector<long>;

TExps prefix(const Exponents& e) {
  TExps f(e.size());
  long s = 0;
  for (std::size_t i = 0; i < e.size(); ++i) f[i] = s += e[i];
  return f;
}

struct SeriesFactorT {
  std::vector<std::pair<TExps, Rational>> u;
  long exponent;
};

struct Prepared {
  Rational coeff;
  TExps shift;  // t-exponent of the prefactor
  std::vector<SeriesFactorT> factors;
};

Rational rpow(Rational x, long e) {
  Rational r = 1;
  const bool inv = e < 0;
  for (long k = 0; k < (inv ? -e : e); ++k) r *= x;
  if (inv) {
    if (r == 0) throw ExpansionError("zero raised to a negative power");
    r = 1 / r;
  }
  return r;
}

Prepared prepare(const CTProduct& p, std::size_t m) {
  Prepared out{p.coeff, TExps(m, 0), {}};
  for (const auto& f : p.factors) {
    if (f.exponent == 0) continue;
    std::vector<std::pair<TExps, Rational>> terms;
    for (const auto& t : f.terms) {
      auto fe = prefix(t.exps);
      auto it = std::find_if(terms.begin(), terms.end(), [&](const auto& x) { return x.first == fe; });
      if (it == terms.end()) {
        terms.emplace_back(fe, t.coeff);
      } else {
        it->second += t.coeff;
      }
    }
    std::erase_if(terms, [](const auto& x) { return x.second == 0; });
    if (terms.empty()) throw ExpansionError("factor is identically zero");
    // The leading term must divide every other one in the t-variables.
    const std::pair<TExps, Rational>* lead = nullptr;
    for (const auto& cand : terms) {
      bool ok = std::all_of(terms.begin(), terms.end(), [&](const auto& o) {
        for (std::size_t l = 0; l < m; ++l) {
          if (o.first[l] < cand.first[l]) return false;
        }
        return true;
      });
      if (ok) {
        lead = &cand;
        break;
      }
    }
    if (!lead) throw ExpansionError("factor has no leading term after substitution");
    out.coeff *= rpow(lead->second, f.exponent);
    for (std::size_t l = 0; l < m; ++l) out.shift[l] += f.exponent * lead->first[l];
    SeriesFactorT sf{{}, f.exponent};
    for (const auto& o : terms) {
      if (&o == lead) continue;
      TExps d(m);
      for (std::size_t l = 0; l < m; ++l) d[l] = o.first[l] - lead->first[l];
      sf.u.emplace_back(d, -o.second / lead->second);
    }
    if (!sf.u.empty()) out.factors.push_back(std::move(sf));
  }
  return out;
}

// Coefficient of t^gamma, dropping everything of total degree above order.
Rational coefficient_at(const Prepared& p, const TExps& gamma, long order) {
  const std::size_t m = gamma.size();
  std::vector<std::size_t> stride(m);
  std::size_t size = 1;
  for (std::size_t l = 0; l < m; ++l) {
    stride[l] = size;
    size *= static_cast<std::size_t>(gamma[l] + 1);
    if (size > kMaxBox) throw ExpansionError("series table too large");
  }
  std::vector<Rational> s(size, Rational(0));
  s[0] = p.coeff;

  // Decode index -> exponent vector once.
  std::vector<TExps> at(size, TExps(m));
  std::vector<long> degree(size, 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::size_t r = idx;
    for (std::size_t l = 0; l < m; ++l) {
      at[idx][l] = static_cast<long>(r % static_cast<std::size_t>(gamma[l] + 1));
      r /= static_cast<std::size_t>(gamma[l] + 1);
      degree[idx] += at[idx][l];
    }
  }

  for (const auto& f : p.factors) {
    std::vector<std::pair<std::size_t, const std::pair<TExps, Rational>*>> usable;
    for (const auto& term : f.u) {
      bool ok = true;
      std::size_t off = 0;
      for (std::size_t l = 0; l < m; ++l) {
        if (term.first[l] > gamma[l]) ok = false;
        if (term.first[l] < 0) ok = false;
        if (ok) off += static_cast<std::size_t>(term.first[l]) * stride[l];
      }
      if (ok) usable.emplace_back(off, &term);
    }
    auto fits = [&](std::size_t idx, const TExps& d) {
      for (std::size_t l = 0; l < m; ++l) {
        if (at[idx][l] < d[l]) return false;
      }
      return true;
    };
    const long reps = f.exponent < 0 ? -f.exponent : f.exponent;
    for (long r = 0; r < reps; ++r) {
      if (f.exponent < 0) {
        for (std::size_t idx = 0; idx < size; ++idx) {
          if (degree[idx] > order) {
            s[idx] = 0;
            continue;
          }
          for (const auto& [off, term] : usable) {
            if (fits(idx, term->first)) s[idx] += term->second * s[idx - off];
          }
        }
      } else {
        for (std::size_t idx = size; idx-- > 0;) {
          if (degree[idx] > order) {
            s[idx] = 0;
            continue;
          }
          for (const auto& [off, term] : usable) {
            if (fits(idx, term->first)) s[idx] -= term->second * s[idx - off];
          }
        }
      }
    }
  }
  return s[size - 1];
}

}  // namespace

SeriesEvaluation iterated_ct_series(const CTExpression& expr) {
  const std::size_t m = expr.var_count();
  std::vector<Prepared> prepared;
  for (const auto& p : expr.products) {
    auto pp = prepare(p, m);
    for (const auto& f : pp.factors) {
      for (const auto& [d, c] : f.u) {
        bool nonneg = std::all_of(d.begin(), d.end(), [](long x) { return x >= 0; });
        bool nonzero = std::any_of(d.begin(), d.end(), [](long x) { return x != 0; });
        if (!nonneg || !nonzero) throw ExpansionError("series term is not small after substitution");
      }
    }
    prepared.push_back(std::move(pp));
  }
  long base_order = 0;
  for (const auto& p : prepared) {
    long g = 0;
    for (auto x : p.shift) g -= x;
    base_order = std::max(base_order, g);
  }
  auto evaluate = [&](long order) {
    Rational total = 0;
    for (const auto& p : prepared) {
      TExps gamma(m);
      bool reachable = true;
      for (std::size_t l = 0; l < m; ++l) {
        gamma[l] = -p.shift[l];
        if (gamma[l] < 0) reachable = false;
      }
      if (reachable) total += coefficient_at(p, gamma, order);
    }
    return total;
  };
  SeriesEvaluation out;
  out.order = base_order;
  out.value = evaluate(base_order);
  out.stable = evaluate(base_order + 1) == out.value;
  return out;
}

}  // namespace flowvol
