#include "flowvol/kostant.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

#include "flowvol/errors.hpp"
#include "flowvol/linalg.hpp"

namespace flowvol {

namespace {

void check_length(const SignedGraph& g, const Netflow& a) {
  if (static_cast<int>(a.size()) != g.vertex_count()) {
    throw std::invalid_argument("netflow has length " + std::to_string(a.size()) +
                                " but the graph has " + std::to_string(g.vertex_count()) +
                                " vertices");
  }
}

}  // namespace

KostantCounter::KostantCounter(SignedGraph g) : graph_(std::move(g)) {
  const int n1 = graph_.vertex_count();
  groups_.assign(static_cast<std::size_t>(n1 + 2), Group{});
  std::size_t k = 0;
  for (int v = 1; v <= n1; ++v) {
    groups_[static_cast<std::size_t>(v)].begin = k;
    while (k < graph_.edge_count() && graph_.edge(k).i == v) ++k;
    groups_[static_cast<std::size_t>(v)].end = k;
  }
  for (const auto& e : graph_.edges()) coef_.push_back(e.is_loop() ? 2 : 1);
}

BigInt KostantCounter::count(const Netflow& a) {
  check_length(graph_, a);
  return count_from(1, a);
}

// Assigns edges k.. of group v from `remaining`, updating residuals of the
// larger endpoints, and calls done() for each complete assignment.
void KostantCounter::distribute(int v, std::size_t k, std::int64_t remaining, Netflow& residual,
                                const std::function<void(Netflow&)>& done) {
  const auto& grp = groups_[static_cast<std::size_t>(v)];
  if (k == grp.end) {
    if (remaining == 0) done(residual);
    return;
  }
  const auto& e = graph_.edge(k);
  const std::int64_t c = coef_[k];
  const auto j = static_cast<std::size_t>(e.j - 1);
  const std::int64_t dj = e.is_loop() ? 0 : (e.is_positive() ? -1 : 1);
  const bool last = k + 1 == grp.end;
  const std::int64_t lo = last ? remaining / c : 0;
  for (std::int64_t b = lo; b * c <= remaining; ++b) {
    if (last && b * c != remaining) break;
    residual[j] += dj * b;
    distribute(v, k + 1, remaining - b * c, residual, done);
    residual[j] -= dj * b;
  }
}

BigInt KostantCounter::count_from(int v, const Netflow& residual) {
  const int n1 = graph_.vertex_count();
  if (v > n1) return 1;
  const auto rv = residual[static_cast<std::size_t>(v - 1)];
  if (rv < 0) return 0;
  // Every remaining edge adds 0 or 2 to the residual total.
  std::int64_t total = 0;
  for (int w = v; w <= n1; ++w) total += residual[static_cast<std::size_t>(w - 1)];
  if (total < 0 || total % 2 != 0) return 0;

  Netflow suffix(residual.begin() + (v - 1), residual.end());
  auto key = std::make_pair(v, std::move(suffix));
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;

  BigInt result = 0;
  Netflow work = residual;
  work[static_cast<std::size_t>(v - 1)] = 0;
  distribute(v, groups_[static_cast<std::size_t>(v)].begin, rv, work,
             [&](Netflow& r) { result += count_from(v + 1, r); });
  memo_.emplace(std::move(key), result);
  return result;
}

void KostantCounter::enumerate_from(int v, Netflow& residual, IntegerFlow& flow,
                                    const std::function<void(const IntegerFlow&)>& emit) {
  if (v > graph_.vertex_count()) {
    emit(flow);
    return;
  }
  if (count_from(v, residual) == 0) return;
  const auto& grp = groups_[static_cast<std::size_t>(v)];
  const auto rv = residual[static_cast<std::size_t>(v - 1)];
  // Same recursion as distribute(), but recording the values.
  std::function<void(std::size_t, std::int64_t)> go = [&](std::size_t k, std::int64_t remaining) {
    if (k == grp.end) {
      if (remaining != 0) return;
      const auto saved = residual[static_cast<std::size_t>(v - 1)];
      residual[static_cast<std::size_t>(v - 1)] = 0;
      enumerate_from(v + 1, residual, flow, emit);
      residual[static_cast<std::size_t>(v - 1)] = saved;
      return;
    }
    const auto& e = graph_.edge(k);
    const std::int64_t c = coef_[k];
    const auto j = static_cast<std::size_t>(e.j - 1);
    const std::int64_t dj = e.is_loop() ? 0 : (e.is_positive() ? -1 : 1);
    for (std::int64_t b = 0; b * c <= remaining; ++b) {
      flow[k] = b;
      residual[j] += dj * b;
      go(k + 1, remaining - b * c);
      residual[j] -= dj * b;
    }
    flow[k] = 0;
  };
  go(grp.begin, rv);
}

void KostantCounter::enumerate(const Netflow& a,
                               const std::function<void(const IntegerFlow&)>& emit) {
  check_length(graph_, a);
  Netflow residual = a;
  IntegerFlow flow(graph_.edge_count(), 0);
  enumerate_from(1, residual, flow, emit);
}

BigInt kpf(const SignedGraph& g, const Netflow& a) { return KostantCounter(g).count(a); }

std::vector<IntegerFlow> enumerate_flows(const SignedGraph& g, const Netflow& a) {
  std::vector<IntegerFlow> out;
  KostantCounter(g).enumerate(a, [&](const IntegerFlow& f) { out.push_back(f); });
  return out;
}

Netflow flow_netflow(const SignedGraph& g, const IntegerFlow& b) {
  if (b.size() != g.edge_count()) throw std::invalid_argument("flow length mismatch");
  Netflow a(static_cast<std::size_t>(g.vertex_count()), 0);
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    auto r = root_vector(g.edge(k), g.vertex_count());
    for (std::size_t v = 0; v < a.size(); ++v) a[v] += r[v] * b[k];
  }
  return a;
}

bool is_flow(const SignedGraph& g, const Netflow& a, const IntegerFlow& b) {
  if (b.size() != g.edge_count()) return false;
  for (auto x : b) {
    if (x < 0) return false;
  }
  return flow_netflow(g, b) == a;
}

std::int64_t positive_flow_total(const SignedGraph& g, const IntegerFlow& b) {
  std::int64_t total = 0;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    if (g.edge(k).is_positive()) total += b.at(k);
  }
  return total;
}

DimensionInfo analyze_polytope(const SignedGraph& g, const Netflow& a) {
  check_length(g, a);
  KostantCounter counter(g);
  Netflow doubled = a;
  for (auto& x : doubled) x *= 2;
  if (counter.count(doubled) == 0) {
    throw EmptyPolytopeError("F_G(" + netflow_to_string(a) + ") is empty");
  }
  DimensionInfo info;
  std::vector<std::size_t> support;
  for (std::size_t k = 0; k < g.edge_count(); ++k) {
    auto r = root_vector(g.edge(k), g.vertex_count());
    Netflow shifted = doubled;
    for (std::size_t v = 0; v < shifted.size(); ++v) shifted[v] -= r[v];
    if (counter.count(shifted) == 0) {
      info.forced_zero.push_back(k);
    } else {
      support.push_back(k);
    }
  }
  info.rank = matrix_rank(select_columns(incidence_matrix(g), support));
  info.dimension = static_cast<long>(support.size()) - info.rank;
  return info;
}

long polytope_dimension(const SignedGraph& g, const Netflow& a) {
  return analyze_polytope(g, a).dimension;
}

bool polytope_is_empty(const SignedGraph& g, const Netflow& a) {
  Netflow doubled = a;
  for (auto& x : doubled) x *= 2;
  return kpf(g, doubled) == 0;
}

EhrhartTable ehrhart_values(const SignedGraph& g, const Netflow& a, long t_max) {
  check_length(g, a);
  if (t_max < 0) throw std::invalid_argument("t_max must be nonnegative");
  KostantCounter counter(g);
  EhrhartTable table;
  for (long t = 0; t <= t_max; ++t) {
    Netflow ta = a;
    for (auto& x : ta) x *= t;
    table.emplace_back(t, counter.count(ta));
  }
  return table;
}

std::string ehrhart_table_tsv(const EhrhartTable& table) {
  std::ostringstream os;
  os << "t\tcount\n";
  for (const auto& [t, c] : table) os << t << '\t' << c.get_str() << '\n';
  return os.str();
}

long Polynomial::degree() const {
  for (auto k = static_cast<long>(coeffs.size()) - 1; k >= 0; --k) {
    if (coeffs[static_cast<std::size_t>(k)] != 0) return k;
  }
  return -1;
}

Rational Polynomial::leading() const {
  const long d = degree();
  return d < 0 ? Rational(0) : coeffs[static_cast<std::size_t>(d)];
}

Rational Polynomial::operator()(const Rational& t) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

std::string Polynomial::to_string(const std::string& var) const {
  std::string s;
  for (long k = degree(); k >= 0; --k) {
    const auto& c = coeffs[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    if (!s.empty()) s += c < 0 ? " - " : " + ";
    else if (c < 0) s += "-";
    Rational mag = abs(c);
    if (k == 0 || mag != 1) s += flowvol::to_string(mag);
    if (k >= 1) s += (k == 0 || mag != 1 ? "*" : "") + var;
    if (k >= 2) s += "^" + std::to_string(k);
  }
  return s.empty() ? "0" : s;
}

Polynomial lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
  const std::size_t m = points.size();
  Polynomial result;
  result.coeffs.assign(std::max<std::size_t>(m, 1), Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    // Basis polynomial prod_{j != i} (t - x_j) / (x_i - x_j).
    std::vector<Rational> basis{Rational(1)};
    Rational denom = 1;
    for (std::size_t j = 0; j < m; ++j) {
      if (j == i) continue;
      const auto& xj = points[j].first;
      if (points[i].first == xj) throw std::invalid_argument("repeated interpolation abscissa");
      std::vector<Rational> next(basis.size() + 1, Rational(0));
      for (std::size_t k = 0; k < basis.size(); ++k) {
        next[k + 1] += basis[k];
        next[k] -= basis[k] * xj;
      }
      basis = std::move(next);
      denom *= points[i].first - xj;
    }
    const Rational scale = points[i].second / denom;
    for (std::size_t k = 0; k < basis.size(); ++k) result.coeffs[k] += basis[k] * scale;
  }
  return result;
}

EhrhartVolume ehrhart_volume(const SignedGraph& g, const Netflow& a) {
  EhrhartVolume out;
  out.dimension = polytope_dimension(g, a);
  out.table = ehrhart_values(g, a, out.dimension + 1);
  std::vector<std::pair<Rational, Rational>> points;
  for (long t = 0; t <= out.dimension; ++t) {
    const auto& row = out.table[static_cast<std::size_t>(t)];
    points.emplace_back(Rational(row.first), Rational(row.second));
  }
  out.polynomial = lagrange_interpolate(points);
  const auto& guard = out.table.back();
  if (out.polynomial(Rational(guard.first)) != Rational(guard.second)) {
    throw GuardMismatchError("Ehrhart interpolant of degree " + std::to_string(out.dimension) +
                             " predicts " + to_string(out.polynomial(Rational(guard.first))) +
                             " at t=" + std::to_string(guard.first) + " but K_G = " +
                             guard.second.get_str());
  }
  Rational vol = out.polynomial.coeffs.size() > static_cast<std::size_t>(out.dimension)
                     ? out.polynomial.coeffs[static_cast<std::size_t>(out.dimension)]
                     : Rational(0);
  vol *= Rational(factorial(static_cast<unsigned long>(out.dimension)));
  if (vol.get_den() != 1 || vol <= 0) {
    throw GuardMismatchError("normalized volume " + to_string(vol) + " is not a positive integer");
  }
  out.volume = vol.get_num();
  return out;
}

BigInt normalized_volume_ehrhart(const SignedGraph& g, const Netflow& a) {
  return ehrhart_volume(g, a).volume;
}

}  // namespace flowvol
