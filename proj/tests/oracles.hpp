#pragma once

// Brute-force reference implementations for the tests. Deliberately naive:
// nothing here shares code paths with the library beyond the graph type.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "flowvol/exact.hpp"
#include "flowvol/graph.hpp"

namespace oracle {

using flowvol::BigInt;
using flowvol::Netflow;
using flowvol::Rational;
using flowvol::SignedGraph;

using RMatrix = std::vector<std::vector<Rational>>;

inline RMatrix to_rational(const std::vector<std::vector<int>>& m) {
  RMatrix r;
  for (const auto& row : m) {
    std::vector<Rational> rr;
    for (int x : row) rr.emplace_back(x);
    r.push_back(rr);
  }
  return r;
}

// Row reduction over Q.
inline long rank(RMatrix m) {
  long r = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  for (std::size_t c = 0; c < cols && static_cast<std::size_t>(r) < rows; ++c) {
    std::size_t p = static_cast<std::size_t>(r);
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[static_cast<std::size_t>(r)]);
    auto& piv = m[static_cast<std::size_t>(r)];
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == static_cast<std::size_t>(r) || m[q][c] == 0) continue;
      Rational f = m[q][c] / piv[c];
      for (std::size_t k = 0; k < cols; ++k) m[q][k] -= f * piv[k];
    }
    ++r;
  }
  return r;
}

// Unique solution x of A x = b, or nullopt if singular or inconsistent.
inline std::optional<std::vector<Rational>> solve(RMatrix a, std::vector<Rational> b) {
  const std::size_t n = a.size() ? a[0].size() : 0;
  const std::size_t rows = a.size();
  for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  std::size_t r = 0;
  std::vector<std::size_t> pivcol;
  for (std::size_t c = 0; c < n && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) return std::nullopt;
    std::swap(a[p], a[r]);
    Rational inv = 1 / a[r][c];
    for (auto& x : a[r]) x *= inv;
    for (std::size_t q = 0; q < rows; ++q) {
      if (q == r || a[q][c] == 0) continue;
      Rational f = a[q][c];
      for (std::size_t k = 0; k <= n; ++k) a[q][k] -= f * a[r][k];
    }
    pivcol.push_back(c);
    ++r;
  }
  if (r < n) return std::nullopt;
  for (std::size_t q = r; q < rows; ++q) {
    if (a[q][n] != 0) return std::nullopt;
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < r; ++i) x[pivcol[i]] = a[i][n];
  return x;
}

// All nonnegative integer vectors b with M b = a, by bounded exhaustive search.
// Each coordinate is bounded by sum |a_i| (every root has a positive entry
// summing to at least 1 on the vertices it touches).
inline BigInt kpf(const SignedGraph& g, const Netflow& a) {
  const auto m = flowvol::incidence_matrix(g);
  std::int64_t bound = 0;
  for (auto x : a) bound += x < 0 ? -x : x;
  const std::size_t n = g.edge_count();
  std::vector<std::int64_t> b(n, 0);
  BigInt count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k == n) {
      for (std::size_t v = 0; v < a.size(); ++v) {
        std::int64_t s = 0;
        for (std::size_t e = 0; e < n; ++e) s += m[v][e] * b[e];
        if (s != a[v]) return;
      }
      ++count;
      return;
    }
    for (std::int64_t x = 0; x <= bound; ++x) {
      b[k] = x;
      go(k + 1);
    }
    b[k] = 0;
  };
  go(0);
  return count;
}

// Vertices of F_G(a) from all basic feasible solutions.
inline std::vector<std::vector<Rational>> vertices(const SignedGraph& g, const Netflow& a) {
  const auto m = to_rational(flowvol::incidence_matrix(g));
  const std::size_t n = g.edge_count();
  const long r = rank(m);
  std::vector<Rational> rhs;
  for (auto x : a) rhs.emplace_back(x);
  std::set<std::vector<Rational>> found;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> go = [&](std::size_t start) {
    if (static_cast<long>(pick.size()) == r) {
      // Keep only independent rows so the square-ish system has a unique solution.
      RMatrix sub;
      for (const auto& row : m) {
        std::vector<Rational> rr;
        for (auto c : pick) rr.push_back(row[c]);
        sub.push_back(rr);
      }
      auto x = solve(sub, rhs);
      if (!x) return;
      std::vector<Rational> full(n, Rational(0));
      for (std::size_t i = 0; i < pick.size(); ++i) {
        if ((*x)[i] < 0) return;
        full[pick[i]] = (*x)[i];
      }
      found.insert(full);
      return;
    }
    for (std::size_t c = start; c < n; ++c) {
      pick.push_back(c);
      go(c + 1);
      pick.pop_back();
    }
  };
  if (r == 0) {
    bool zero = std::all_of(a.begin(), a.end(), [](auto x) { return x == 0; });
    if (zero) found.insert(std::vector<Rational>(n, Rational(0)));
  } else {
    go(0);
  }
  return {found.begin(), found.end()};
}

// Affine dimension of the convex hull of the vertices; -1 if none.
inline long dimension(const SignedGraph& g, const Netflow& a) {
  auto vs = vertices(g, a);
  if (vs.empty()) return -1;
  RMatrix diffs;
  for (std::size_t k = 1; k < vs.size(); ++k) {
    std::vector<Rational> d;
    for (std::size_t e = 0; e < vs[k].size(); ++e) d.push_back(vs[k][e] - vs[0][e]);
    diffs.push_back(d);
  }
  return diffs.empty() ? 0 : rank(diffs);
}

// Coefficient of x^target in a product of factors (1 - u)^{-1}, where each u
// is a list of (coefficient, exponent vector). Every u-term must have
// nonnegative, nonzero prefix sums e_1, e_1+e_2, ...; then any monomial whose
// prefix sums exceed those of the target can be dropped, which keeps the
// expansion finite and exact.
struct SeriesFactor {
  std::vector<std::pair<long, std::vector<long>>> u;
};

inline BigInt coefficient(const std::vector<SeriesFactor>& factors, const std::vector<long>& target) {
  auto prefix = [](const std::vector<long>& e) {
    std::vector<long> p(e.size());
    long s = 0;
    for (std::size_t i = 0; i < e.size(); ++i) p[i] = s += e[i];
    return p;
  };
  const auto limit = prefix(target);
  auto fits = [&](const std::vector<long>& e) {
    auto p = prefix(e);
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] > limit[i]) return false;
    }
    return true;
  };
  std::map<std::vector<long>, BigInt> poly;
  poly[std::vector<long>(target.size(), 0)] = 1;
  for (const auto& f : factors) {
    // Multiply by sum_k u^k one power at a time until nothing fits.
    std::map<std::vector<long>, BigInt> result = poly;
    std::map<std::vector<long>, BigInt> layer = poly;
    while (!layer.empty()) {
      std::map<std::vector<long>, BigInt> next;
      for (const auto& [e, c] : layer) {
        for (const auto& [uc, ue] : f.u) {
          auto s = e;
          for (std::size_t i = 0; i < s.size(); ++i) s[i] += ue[i];
          if (fits(s)) next[s] += c * uc;
        }
      }
      for (const auto& [e, c] : next) result[e] += c;
      layer = std::move(next);
    }
    poly = std::move(result);
  }
  auto it = poly.find(target);
  return it == poly.end() ? BigInt(0) : it->second;
}

// Generating-series oracle for K^dyn.
inline BigInt kdyn_series(const SignedGraph& g, const Netflow& a) {
  const auto n1 = static_cast<std::size_t>(g.vertex_count());
  std::vector<SeriesFactor> factors;
  for (const auto& e : g.edges()) {
    SeriesFactor f;
    std::vector<long> xi(n1, 0), xj(n1, 0);
    xi[static_cast<std::size_t>(e.i - 1)] = 1;
    xj[static_cast<std::size_t>(e.j - 1)] = 1;
    if (e.is_loop()) {
      f.u.push_back({2, xi});
    } else if (e.is_positive()) {
      f.u.push_back({1, xi});
      f.u.push_back({1, xj});
    } else {
      auto m = xi;
      m[static_cast<std::size_t>(e.j - 1)] = -1;
      f.u.push_back({1, m});
    }
    factors.push_back(f);
  }
  std::vector<long> target(a.begin(), a.end());
  return coefficient(factors, target);
}

}  // namespace oracle
