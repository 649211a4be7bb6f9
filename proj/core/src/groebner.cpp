#include "wres/groebner.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace wres {

bool MonomialOrder::greater(const Exponent& a, const Exponent& b) const {
  switch (kind) {
    case OrderKind::Grlex:
      return GrlexGreater{}(a, b);
    case OrderKind::Lex:
      return a > b;
    case OrderKind::Block: {
      std::vector<bool> elim(a.size(), false);
      for (auto v : eliminated) elim.at(v) = true;
      Exponent ha, hb, ta, tb;
      for (std::size_t i = 0; i < a.size(); ++i) {
        (elim[i] ? ha : ta).push_back(a[i]);
        (elim[i] ? hb : tb).push_back(b[i]);
      }
      if (ha != hb) return GrlexGreater{}(ha, hb);
      return GrlexGreater{}(ta, tb);
    }
  }
  return false;
}

std::string MonomialOrder::tag() const {
  switch (kind) {
    case OrderKind::Grlex:
      return "grlex";
    case OrderKind::Lex:
      return "lex";
    case OrderKind::Block:
      return "block";
  }
  return "?";
}

namespace {

struct Term {
  Exponent e;
  Rat c;
};
using Terms = std::vector<Term>;  // sorted descending in the active order

bool divides(const Exponent& a, const Exponent& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

Exponent lcm(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponent quotient(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

class Engine {
 public:
  explicit Engine(const MonomialOrder& order) : order_(order) {}

  Terms from_poly(const Poly& p) const {
    Terms t;
    for (const auto& [e, c] : p.terms()) t.push_back({e, c});
    std::sort(t.begin(), t.end(), [&](const Term& x, const Term& y) { return order_.greater(x.e, y.e); });
    return t;
  }

  Poly to_poly(const RingPtr& ring, const Terms& t) const {
    Poly::Terms m;
    for (const auto& [e, c] : t) m.emplace(e, c);
    return Poly(ring, std::move(m));
  }

  // a - c * x^shift * b, starting at a[from].
  Terms sub_mul(const Terms& a, std::size_t from, const Rat& c, const Exponent& shift, const Terms& b) const {
    Terms out;
    out.reserve(a.size() - from + b.size());
    std::size_t i = from, j = 0;
    Exponent eb;
    while (i < a.size() || j < b.size()) {
      if (j < b.size()) {
        eb = b[j].e;
        for (std::size_t k = 0; k < eb.size(); ++k) eb[k] += shift[k];
      }
      if (j >= b.size() || (i < a.size() && order_.greater(a[i].e, eb))) {
        out.push_back(a[i++]);
      } else if (i >= a.size() || order_.greater(eb, a[i].e)) {
        out.push_back({eb, -c * b[j].c});
        ++j;
      } else {
        Rat v = a[i].c - c * b[j].c;
        if (v != 0) out.push_back({eb, v});
        ++i;
        ++j;
      }
    }
    return out;
  }

  // Full reduction of f modulo the list.
  Terms reduce(Terms f, const std::vector<Terms>& basis) const {
    Terms rem;
    std::size_t head = 0;
    while (head < f.size()) {
      const Term& lt = f[head];
      const Terms* divisor = nullptr;
      for (const auto& g : basis) {
        if (!g.empty() && divides(g.front().e, lt.e)) {
          divisor = &g;
          break;
        }
      }
      if (divisor) {
        const Rat c = lt.c / divisor->front().c;
        const Exponent shift = quotient(lt.e, divisor->front().e);
        f = sub_mul(f, head, c, shift, *divisor);
        head = 0;
      } else {
        rem.push_back(lt);
        ++head;
      }
    }
    return rem;
  }

  static void make_primitive(Terms& t) {
    if (t.empty()) return;
    BigInt den = 1, content = 0;
    for (const auto& x : t) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.c.get_den_mpz_t());
    for (const auto& x : t) {
      BigInt v = x.c.get_num() * (den / x.c.get_den());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
    Rat scale = make_rat(den, content);
    if (t.front().c < 0) scale = -scale;
    for (auto& x : t) x.c *= scale;
  }

  static void make_monic(Terms& t) {
    if (t.empty()) return;
    const Rat inv = 1 / t.front().c;
    for (auto& x : t) x.c *= inv;
  }

 private:
  const MonomialOrder& order_;
};

}  // namespace

GBasis::GBasis(RingPtr ring, std::vector<Poly> basis, MonomialOrder order)
    : ring_(std::move(ring)), basis_(std::move(basis)), order_(std::move(order)) {}

Exponent GBasis::leading_monomial(const Poly& f) const {
  if (f.is_zero()) throw Error("leading monomial of zero");
  const Exponent* best = nullptr;
  for (const auto& [e, c] : f.terms()) {
    if (!best || order_.greater(e, *best)) best = &e;
  }
  return *best;
}

Poly GBasis::normal_form(const Poly& f) const {
  Engine eng(order_);
  std::vector<Terms> b;
  for (const auto& g : basis_) b.push_back(eng.from_poly(g));
  return eng.to_poly(ring_, eng.reduce(eng.from_poly(f.in_ring(ring_)), b));
}

bool GBasis::is_trivial() const {
  return std::any_of(basis_.begin(), basis_.end(), [](const Poly& g) { return !g.is_zero() && g.is_constant(); });
}

bool GBasis::is_zero_dimensional() const {
  if (is_trivial()) return true;
  const std::size_t n = ring_->size();
  std::vector<bool> hit(n, false);
  for (const auto& g : basis_) {
    const auto lm = leading_monomial(g);
    std::size_t nonzero = 0, which = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (lm[i]) {
        ++nonzero;
        which = i;
      }
    }
    if (nonzero == 1) hit[which] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

GBasis buchberger(std::span<const Poly> generators, MonomialOrder order, GroebnerBudget budget) {
  if (generators.empty()) throw Error("buchberger needs at least one generator");
  const RingPtr ring = generators.front().ring();
  if (ring->is_jet()) throw Error("buchberger requires an exact-mode ring");
  Engine eng(order);

  std::vector<Terms> basis;
  auto add = [&](Terms t) {
    Engine::make_primitive(t);
    basis.push_back(std::move(t));
  };
  for (const auto& g : generators) {
    if (!same_ring(g.ring(), ring)) throw RingMismatch("buchberger: generators in different rings");
    auto t = eng.reduce(eng.from_poly(g), basis);
    if (!t.empty()) add(std::move(t));
  }
  if (basis.empty()) return GBasis(ring, {Poly(ring)}, order);

  struct Pair {
    Exponent lcm;
    std::size_t i, j;
  };
  std::vector<Pair> pairs;
  std::set<std::pair<std::size_t, std::size_t>> done;
  auto push_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (basis[i].empty()) continue;
      pairs.push_back({lcm(basis[i].front().e, basis[j].front().e), i, j});
    }
  };
  for (std::size_t j = 1; j < basis.size(); ++j) push_pairs(j);

  auto has_unit = [&] {
    return std::any_of(basis.begin(), basis.end(), [](const Terms& t) { return !t.empty() && total_degree(t.front().e) == 0; });
  };

  while (!pairs.empty() && !has_unit()) {
    auto best = std::min_element(pairs.begin(), pairs.end(), [&](const Pair& a, const Pair& b) {
      if (a.lcm != b.lcm) return order.greater(b.lcm, a.lcm);
      return std::tie(a.j, a.i) < std::tie(b.j, b.i);
    });
    Pair p = *best;
    pairs.erase(best);
    done.insert({p.i, p.j});
    const Terms& f = basis[p.i];
    const Terms& g = basis[p.j];
    if (f.empty() || g.empty()) continue;
    // Coprime leading monomials.
    bool coprime = true;
    for (std::size_t k = 0; k < p.lcm.size() && coprime; ++k) coprime = !(f.front().e[k] && g.front().e[k]);
    if (coprime) continue;
    // Chain criterion.
    bool chain = false;
    for (std::size_t k = 0; k < basis.size() && !chain; ++k) {
      if (k == p.i || k == p.j || basis[k].empty()) continue;
      if (!divides(basis[k].front().e, p.lcm)) continue;
      auto key = [](std::size_t a, std::size_t b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
      chain = done.count(key(p.i, k)) && done.count(key(p.j, k));
    }
    if (chain) continue;

    Terms s = eng.sub_mul(Terms{}, 0, Rat(-1) / f.front().c, quotient(p.lcm, f.front().e), f);
    s = eng.sub_mul(s, 0, Rat(1) / g.front().c, quotient(p.lcm, g.front().e), g);
    auto r = eng.reduce(std::move(s), basis);
    if (r.empty()) continue;
    if (basis.size() >= budget.max_basis || total_degree(r.front().e) > budget.max_degree) {
      throw BudgetExceeded("Groebner basis exceeded its size/degree budget");
    }
    add(std::move(r));
    push_pairs(basis.size() - 1);
  }

  if (has_unit()) return GBasis(ring, {Poly::constant(ring, 1)}, order);

  // Auto-reduction.
  std::vector<Terms> minimal;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].empty()) continue;
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size() && !redundant; ++j) {
      if (i == j || basis[j].empty()) continue;
      if (divides(basis[j].front().e, basis[i].front().e)) {
        redundant = basis[j].front().e != basis[i].front().e || j < i;
      }
    }
    if (!redundant) minimal.push_back(basis[i]);
  }
  std::vector<Terms> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Terms> others;
    for (std::size_t j = 0; j < minimal.size(); ++j) {
      if (j != i) others.push_back(minimal[j]);
    }
    Terms head{minimal[i].front()};
    Terms tail(minimal[i].begin() + 1, minimal[i].end());
    auto r = eng.reduce(std::move(tail), others);
    head.insert(head.end(), r.begin(), r.end());
    Engine::make_monic(head);
    reduced.push_back(std::move(head));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const Terms& a, const Terms& b) { return order.greater(b.front().e, a.front().e); });
  std::vector<Poly> out;
  for (const auto& t : reduced) out.push_back(eng.to_poly(ring, t));
  return GBasis(ring, std::move(out), order);
}

bool is_trivial(std::span<const Poly> generators) {
  for (const auto& g : generators) {
    if (!g.is_zero() && g.is_constant()) return true;
  }
  std::vector<Poly> nonzero;
  for (const auto& g : generators) {
    if (!g.is_zero()) nonzero.push_back(g);
  }
  if (nonzero.empty()) return false;
  return buchberger(nonzero).is_trivial();
}

std::vector<Poly> eliminate(std::span<const Poly> generators, std::span<const std::size_t> keep_vars) {
  if (generators.empty()) return {};
  const auto n = generators.front().ring()->size();
  std::vector<std::size_t> elim;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::find(keep_vars.begin(), keep_vars.end(), i) == keep_vars.end()) elim.push_back(i);
  }
  const auto gb = buchberger(generators, MonomialOrder::block(elim));
  std::vector<Poly> out;
  for (const auto& g : gb.basis()) {
    if (g.is_zero()) continue;
    bool uses_elim = false;
    for (const auto& [e, c] : g.terms()) {
      for (auto v : elim) uses_elim = uses_elim || e[v] != 0;
    }
    if (!uses_elim) out.push_back(g);
  }
  return out;
}

std::optional<Poly> poly_gcd(const Poly& a, const Poly& b, GroebnerBudget budget) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.degree() == 0 || b.degree() == 0) return Poly::constant(a.ring(), Rat(1));
  const RingPtr big = a.ring()->with_leading("t");
  auto up = [&](const Poly& p) {
    Poly::Terms t;
    for (const auto& [e, c] : p.terms()) {
      Exponent x(e.size() + 1, 0);
      std::copy(e.begin(), e.end(), x.begin() + 1);
      t.emplace(std::move(x), c);
    }
    return Poly(big, std::move(t));
  };
  const Poly t = Poly::variable(big, 0);
  const Poly gens[] = {t * up(a), (Poly::constant(big, Rat(1)) - t) * up(b)};
  std::optional<GBasis> gb;
  try {
    gb = buchberger(gens, MonomialOrder::block({0}), budget);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
  const Poly* lcm = nullptr;
  for (const auto& g : gb->basis()) {
    if (g.is_zero() || g.degree_in(0) != 0) continue;
    if (!lcm || g.degree() < lcm->degree()) lcm = &g;
  }
  if (!lcm) return std::nullopt;
  const std::size_t kill[] = {0};
  const Poly l = lcm->restrict_to(kill, a.ring());
  auto q = (a * b).exact_divide(l);
  if (!q) return std::nullopt;
  return q->primitive();
}

// ---------------------------------------------------------------- univariate

namespace {

using UPoly = std::vector<Rat>;  // index = degree

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly umod(UPoly a, const UPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  return a;
}

UPoly udiv(UPoly a, const UPoly& b) {
  trim(a);
  if (a.size() < b.size()) return {};
  UPoly q(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const Rat f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    trim(a);
  }
  trim(q);
  return q;
}

UPoly ugcd(UPoly a, UPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    auto r = umod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Rat ueval(const UPoly& p, const Rat& x) {
  Rat acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Positive divisors of |n| by trial division (n != 0).
std::vector<BigInt> divisors(BigInt n) {
  n = abs(n);
  std::vector<std::pair<BigInt, unsigned>> factors;
  for (BigInt p = 2; p * p <= n; ++p) {
    if (p > 2000000) {
      if (mpz_probab_prime_p(n.get_mpz_t(), 30) == 0) throw BudgetExceeded("rational root search: coefficient too hard to factor");
      break;
    }
    unsigned k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    if (k) factors.push_back({p, k});
  }
  if (n > 1) factors.push_back({n, 1});
  std::vector<BigInt> divs{1};
  for (const auto& [p, k] : factors) {
    const std::size_t count = divs.size();
    BigInt pk = 1;
    for (unsigned e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < count; ++i) divs.push_back(divs[i] * pk);
    }
  }
  if (divs.size() > 20000) throw BudgetExceeded("rational root search: too many divisor candidates");
  return divs;
}

}  // namespace

std::vector<Rat> rational_roots(std::vector<Rat> coeffs, bool* irrational) {
  trim(coeffs);
  if (irrational) *irrational = false;
  if (coeffs.size() <= 1) return {};
  UPoly deriv;
  for (std::size_t i = 1; i < coeffs.size(); ++i) deriv.push_back(coeffs[i] * static_cast<unsigned long>(i));
  UPoly sqfree = coeffs;
  const auto g = ugcd(coeffs, deriv);
  if (g.size() > 1) sqfree = udiv(coeffs, g);
  std::vector<Rat> roots;
  UPoly rest = sqfree;
  if (rest.front() == 0) {
    roots.push_back(0);
    rest.erase(rest.begin());
  }
  if (rest.size() > 1) {
    BigInt den = 1;
    for (const auto& c : rest) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    std::vector<BigInt> ints;
    for (const auto& c : rest) ints.push_back(c.get_num() * (den / c.get_den()));
    const auto ps = divisors(ints.front());
    const auto qs = divisors(ints.back());
    std::set<Rat> found;
    for (const auto& p : ps) {
      for (const auto& q : qs) {
        for (int sign : {1, -1}) {
          Rat cand = make_rat(p * sign, q);
          if (!found.count(cand) && ueval(rest, cand) == 0) found.insert(cand);
        }
      }
    }
    roots.insert(roots.end(), found.begin(), found.end());
  }
  std::sort(roots.begin(), roots.end());
  if (irrational) *irrational = roots.size() + 1 < sqfree.size();
  return roots;
}

RationalPoints rational_points_zero_dim(std::span<const Poly> generators) {
  RationalPoints out;
  if (generators.empty()) throw Error("rational_points_zero_dim: empty generator list");
  const RingPtr ring = generators.front().ring();
  const std::size_t n = ring->size();
  const auto gb = buchberger(generators);
  if (gb.is_trivial()) return out;
  if (!gb.is_zero_dimensional()) {
    out.zero_dimensional = false;
    return out;
  }
  if (n == 0) {
    out.points.push_back({});
    return out;
  }

  // Minimal polynomial of each coordinate from linear dependencies among
  // normal forms of its powers.
  std::vector<std::vector<Rat>> coordinate_roots(n);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<Poly> nfs;
    Poly power = Poly::constant(ring, 1);
    const Poly x = Poly::variable(ring, v);
    // Row-reduced copies paired with the combination of powers producing them.
    std::vector<std::pair<Poly, std::vector<Rat>>> echelon;
    std::vector<Rat> minpoly;
    for (std::size_t d = 0;; ++d) {
      Poly r = gb.normal_form(power);
      std::vector<Rat> combo(d + 1, 0);
      combo[d] = 1;
      for (const auto& [row, rc] : echelon) {
        const auto& lead = row.leading();
        const Rat c = r.coefficient(lead.first);
        if (c == 0) continue;
        const Rat f = c / lead.second;
        r -= row * f;
        for (std::size_t i = 0; i < rc.size(); ++i) combo[i] -= f * rc[i];
      }
      if (r.is_zero()) {
        minpoly = combo;
        break;
      }
      echelon.push_back({r, combo});
      for (auto& [row, rc] : echelon) rc.resize(d + 2, 0);
      power *= x;
    }
    bool irr = false;
    coordinate_roots[v] = rational_roots(minpoly, &irr);
    out.irrational_points = out.irrational_points || irr;
  }

  std::vector<Rat> point(n);
  auto recurse = [&](auto&& self, std::size_t v) -> void {
    if (v == n) {
      for (const auto& g : generators) {
        if (g.evaluate(point) != 0) return;
      }
      out.points.push_back(point);
      return;
    }
    for (const auto& r : coordinate_roots[v]) {
      point[v] = r;
      self(self, v + 1);
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace wres
