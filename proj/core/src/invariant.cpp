#include "wres/invariant.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>

#include "wres/groebner.hpp"

namespace wres {

// ---------------------------------------------------------------- Invariant

Invariant Invariant::scaled(const Rat& k) const {
  std::vector<Rat> out;
  for (const auto& a : entries_) out.push_back(a * k);
  return Invariant(std::move(out));
}

std::string Invariant::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += ", ";
    s += wres::to_string(entries_[i]);
  }
  return s + ")";
}

std::strong_ordering operator<=>(const Invariant& a, const Invariant& b) {
  const auto n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (a.entries_[i] < b.entries_[i]) return std::strong_ordering::less;
    if (a.entries_[i] > b.entries_[i]) return std::strong_ordering::greater;
  }
  // A truncated sequence is larger.
  if (a.size() == b.size()) return std::strong_ordering::equal;
  return a.size() < b.size() ? std::strong_ordering::greater : std::strong_ordering::less;
}

int compare(const Invariant& a, const Invariant& b) {
  const auto c = a <=> b;
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

std::ostream& operator<<(std::ostream& os, const Invariant& inv) { return os << inv.to_string(); }

// ---------------------------------------------------------------- flags, centers

namespace {

std::string param_text(const Poly& p) {
  auto s = p.to_string();
  return p.term_count() > 1 ? "(" + s + ")" : s;
}

bool is_origin(std::span<const Rat> p) {
  return std::all_of(p.begin(), p.end(), [](const Rat& r) { return r == 0; });
}

constexpr unsigned kDefaultFlagJet = 32;

}  // namespace

std::string ContactFlag::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (i) s += ", ";
    s += parameters[i].to_string();
  }
  return s + ")";
}

ContactFlag make_flag(RingPtr ring, std::vector<Rat> base_point, std::vector<Poly> parameters,
                      std::vector<std::size_t> pivots, std::optional<unsigned> jet_bound) {
  if (parameters.size() != pivots.size()) throw Error("make_flag: one pivot per parameter");
  if (base_point.empty()) base_point.assign(ring->size(), Rat(0));
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ring->size(); ++i) images.push_back(Poly::variable(ring, i));
  for (std::size_t i = 0; i < parameters.size(); ++i) {
    if (parameters[i].constant_term() != 0) throw Error("flag parameter does not vanish at the base point");
    images.at(pivots[i]) = parameters[i].in_ring(ring);
  }
  PolyMap phi(ring, ring, std::move(images));
  PolyMap psi = invert_automorphism(phi, jet_bound.value_or(kDefaultFlagJet));
  return ContactFlag{std::move(ring), std::move(base_point), std::move(parameters), std::move(pivots), std::move(phi),
                     std::move(psi)};
}

std::string Center::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < exponents.size(); ++i) {
    if (i) s += ", ";
    const auto e = wres::to_string(exponents[i]);
    s += param_text(flag.parameters[i]) + "^" + (exponents[i].get_den() == 1 ? e : "(" + e + ")");
  }
  return s + ")";
}

std::vector<Rat> ReducedCenter::exponents() const {
  std::vector<Rat> out;
  for (auto w : weights) out.push_back(ell / Rat(static_cast<unsigned long>(w)));
  return out;
}

std::string ReducedCenter::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (i) s += ", ";
    s += param_text(flag.parameters[i]);
    if (weights[i] != 1) s += "^(1/" + std::to_string(weights[i]) + ")";
  }
  return s + ")";
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Yes:
      return "yes";
    case Verdict::No:
      return "no";
    case Verdict::Indeterminate:
      return "indeterminate";
  }
  return "?";
}

Center center_from(const Invariant& inv, const ContactFlag& flag) {
  if (inv.size() != flag.size()) throw Error("center_from: invariant length differs from flag length");
  for (std::size_t i = 0; i < inv.size(); ++i) {
    if (inv[i] <= 0) throw Error("center_from: exponents must be positive");
    if (i && inv[i] < inv[i - 1]) {
      throw AssertionFailure("center exponents are not nondecreasing: " + inv.to_string());
    }
  }
  return Center{flag, inv.entries()};
}

ReducedCenter reduce(const Center& c) {
  if (c.exponents.empty()) throw Error("reduce: empty center");
  BigInt m = 1;
  for (const auto& a : c.exponents) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), a.get_num_mpz_t());
  std::vector<BigInt> w;
  BigInt g = 0;
  for (const auto& a : c.exponents) {
    w.push_back(a.get_den() * (m / a.get_num()));
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), w.back().get_mpz_t());
  }
  ReducedCenter rc{c.flag, {}, c.exponents[0] * make_rat(w[0] / g, 1), {}};
  for (auto& x : w) {
    x /= g;
    if (!x.fits_ulong_p()) throw Error("reduce: weight too large");
    rc.weights.push_back(x.get_ui());
  }
  rc.cocharacter = rc.weights;
  rc.cocharacter.resize(c.flag.ring->size(), 0);
  return rc;
}

Center unreduce(const ReducedCenter& rc) { return Center{rc.flag, rc.exponents()}; }

// ---------------------------------------------------------------- valuations

MonomialValuation::MonomialValuation(const Center& c) : center_(&c) {
  for (const auto& a : c.exponents) weights_.push_back(1 / a);
}

Rat MonomialValuation::value(const Exponent& e) const {
  Rat v = 0;
  const auto& piv = center_->flag.pivots;
  for (std::size_t i = 0; i < piv.size(); ++i) v += weights_[i] * static_cast<unsigned long>(e.at(piv[i]));
  return v;
}

namespace {

// Value of an already centered polynomial, plus whether unseen jet terms
// could lower it.
QOrder centered_value(const MonomialValuation& v, const ContactFlag& flag, const Poly& centered, bool* complete) {
  const Poly rewritten = centered.in_ring(flag.psi.source()).substitute(flag.psi);
  QOrder best;
  for (const auto& [e, c] : rewritten.terms()) best = qmin(best, QOrder(v.value(e)));
  if (complete) *complete = flag.exact();
  return best;
}

Verdict centered_at_least(const MonomialValuation& v, const Center& c, const Poly& centered, const Rat& t) {
  bool complete = true;
  const QOrder val = centered_value(v, c.flag, centered, &complete);
  if (val && *val < t) return Verdict::No;
  if (complete) return Verdict::Yes;
  // Unseen monomials have degree above the jet bound. When the flag spans
  // every variable each such monomial has value >= degree / max a_i.
  if (c.flag.size() == c.flag.ring->size()) {
    const Rat amax = *std::max_element(c.exponents.begin(), c.exponents.end());
    const auto n = c.flag.psi.source()->truncation().value_or(0);
    if (Rat(static_cast<unsigned long>(n + 1)) / amax >= t) return Verdict::Yes;
  }
  return Verdict::Indeterminate;
}

}  // namespace

QOrder MonomialValuation::value(const Poly& f, bool* reliable) const {
  const auto& flag = center_->flag;
  const Poly centered = is_origin(flag.base_point) ? f : f.translate(flag.base_point);
  bool complete = true;
  auto v = centered_value(*this, flag, centered, &complete);
  if (reliable) *reliable = complete;
  return v;
}

Verdict MonomialValuation::at_least(const Poly& f, const Rat& t) const {
  const auto& flag = center_->flag;
  const Poly centered = is_origin(flag.base_point) ? f : f.translate(flag.base_point);
  return centered_at_least(*this, *center_, centered, t);
}

Verdict admissibility(const Center& c, const Ideal& I) {
  if (!same_ring(I.ring(), c.flag.ring)) throw RingMismatch("admissibility: center and ideal live in different rings");
  MonomialValuation v(c);
  Verdict out = Verdict::Yes;
  for (const auto& g : I.generators()) {
    const auto r = v.at_least(g, 1);
    if (r == Verdict::No) return Verdict::No;
    if (r == Verdict::Indeterminate) out = Verdict::Indeterminate;
  }
  return out;
}

bool is_admissible(const Center& c, const Ideal& I) {
  const auto v = admissibility(c, I);
  if (v == Verdict::Indeterminate) throw TruncationTooSmall("admissibility undecided at this truncation");
  return v == Verdict::Yes;
}

namespace {

Verdict dominates(const Center& judge, const Center& other) {
  MonomialValuation v(judge);
  Verdict out = Verdict::Yes;
  for (std::size_t i = 0; i < other.exponents.size(); ++i) {
    const auto r = centered_at_least(v, judge, other.flag.parameters[i].in_ring(judge.flag.ring), 1 / other.exponents[i]);
    if (r == Verdict::No) return Verdict::No;
    if (r == Verdict::Indeterminate) out = Verdict::Indeterminate;
  }
  return out;
}

}  // namespace

Verdict center_equality_verdict(const Center& c1, const Center& c2) {
  if (!same_ring(c1.flag.ring, c2.flag.ring) || c1.flag.base_point != c2.flag.base_point) {
    throw Error("center_equality: centers at different points or rings");
  }
  const auto a = dominates(c1, c2);
  if (a == Verdict::No) return Verdict::No;
  const auto b = dominates(c2, c1);
  if (b == Verdict::No) return Verdict::No;
  return (a == Verdict::Yes && b == Verdict::Yes) ? Verdict::Yes : Verdict::Indeterminate;
}

bool center_equality(const Center& c1, const Center& c2) {
  const auto v = center_equality_verdict(c1, c2);
  if (v == Verdict::Indeterminate) throw TruncationTooSmall("center comparison undecided at this truncation");
  return v == Verdict::Yes;
}

// ---------------------------------------------------------------- coefficient ideals

QOrder ord(const WeightedIdeal& w) {
  QOrder best;
  for (const auto& t : w) {
    const auto o = ord(t.ideal);
    if (o) best = qmin(best, QOrder(t.weight * static_cast<unsigned long>(*o)));
  }
  return best;
}

WeightedIdeal coefficient_collection(const Ideal& I, unsigned a) {
  if (a == 0) throw Error("coefficient ideal needs a >= 1");
  const BigInt fa = factorial(a);
  WeightedIdeal out;
  Ideal d = I;
  for (unsigned i = 0; i < a; ++i) {
    if (i) d = derivative_ideal(d);
    out.push_back({d, make_rat(fa, a - i)});
  }
  return out;
}

Ideal coefficient_ideal(const Ideal& I, unsigned a, std::span<const std::size_t> kill) {
  if (a == 0) throw Error("coefficient ideal needs a >= 1");
  const BigInt fa = factorial(a);
  if (!fa.fits_uint_p()) throw BudgetExceeded("coefficient ideal exponent a! too large to expand");
  const Ideal base = I.at_origin();
  std::optional<Ideal> total;
  Ideal d = base;
  for (unsigned i = 0; i < a; ++i) {
    if (i) d = derivative_ideal(d);
    const Ideal r = kill.empty() ? d : restrict(d, kill);
    const auto e = static_cast<unsigned>(fa.get_ui() / (a - i));
    Ideal p = r.is_zero() ? r : power(r, e);
    total = total ? sum(*total, p) : p;
  }
  return *total;
}

QOrder coefficient_order_shortcut(const Ideal& I, unsigned a, std::span<const std::size_t> kill) {
  if (a == 0) throw Error("coefficient ideal needs a >= 1");
  const BigInt fa = factorial(a);
  QOrder best;
  Ideal d = I.at_origin();
  for (unsigned i = 0; i < a; ++i) {
    if (i) d = derivative_ideal(d);
    const auto o = ord(kill.empty() ? d : restrict(d, kill));
    if (o) best = qmin(best, QOrder(make_rat(fa * static_cast<unsigned long>(*o), a - i)));
  }
  return best;
}

// ---------------------------------------------------------------- the recursion

namespace {

struct Term {
  std::vector<Poly> gens;
  Rat weight;
  // Terms of degree below prec are exact; empty means fully exact.
  std::optional<std::uint64_t> prec;
};

struct Level {
  RingPtr ring;
  std::vector<std::size_t> ambient;  // level variable -> ambient variable
  std::vector<Term> terms;
};

// nullopt order with known=true means the term is exactly zero.
struct TermOrder {
  Order ord;
  bool known = true;
};

TermOrder term_order(const Term& t) {
  Order o;
  for (const auto& g : t.gens) {
    const auto x = g.ord_origin();
    if (x && (!o || *x < *o)) o = x;
  }
  if (!t.prec) return {o, true};
  if (o && *o < *t.prec) return {o, true};
  return {std::nullopt, false};
}

QOrder level_order(const Level& L) {
  QOrder best;
  for (const auto& t : L.terms) {
    const auto o = term_order(t);
    if (o.known && o.ord) best = qmin(best, QOrder(t.weight * static_cast<unsigned long>(*o.ord)));
  }
  for (const auto& t : L.terms) {
    const auto o = term_order(t);
    if (o.known) continue;
    const Rat lower = t.weight * static_cast<unsigned long>(*t.prec);
    if (!best || lower <= *best) throw TruncationTooSmall("order not determined below the truncation bound");
  }
  return best;
}

bool triangular_in(const Poly& g, std::size_t v) {
  for (const auto& [e, c] : g.terms()) {
    if (e[v] == 0) continue;
    if (e[v] != 1 || total_degree(e) != 1) return false;
  }
  return true;
}

struct Contact {
  Poly g;
  std::size_t pivot;
};

// v * unit cuts out the same germ as v.
Poly strip_unit(const RingPtr& ring, Poly g, std::size_t pivot) {
  g *= 1 / g.linear_part()[pivot];
  if (g.var_valuation(pivot) >= 1) {
    const Poly unit = g.divide_by_var_power(pivot, 1);
    if (unit.constant_term() != 0) g = Poly::variable(ring, pivot);
  }
  return g;
}

// Deterministic choice among the candidates: a triangular element if any
// exists (earliest pivot, then fewest terms), else the first candidate with
// the earliest pivot in ring order.
Contact pick_contact(const RingPtr& ring, const std::vector<Poly>& candidates) {
  std::optional<Contact> best;
  std::optional<Contact> fallback;
  for (const auto& g : candidates) {
    const auto lin = g.linear_part();
    for (std::size_t v = 0; v < lin.size(); ++v) {
      if (lin[v] == 0) continue;
      if (!fallback || v < fallback->pivot) fallback = Contact{g, v};
      Poly h = strip_unit(ring, g, v);
      if (!triangular_in(h, v)) continue;
      if (!best || v < best->pivot || (v == best->pivot && h.term_count() < best->g.term_count())) {
        best = Contact{std::move(h), v};
      }
    }
  }
  if (best) return *best;
  if (!fallback) throw AssertionFailure("no maximal contact element: derivative ideal has no linear part");
  fallback->g = strip_unit(ring, fallback->g, fallback->pivot);
  return *fallback;
}

Contact choose_contact(const Level& L, const Rat& alpha) {
  std::vector<Poly> candidates;
  bool exact = true;
  for (const auto& t : L.terms) {
    const auto o = term_order(t);
    if (!o.known || !o.ord) continue;
    if (t.weight * static_cast<unsigned long>(*o.ord) != alpha) continue;
    std::vector<Poly> nonzero;
    for (const auto& g : t.gens) {
      if (!g.is_zero()) nonzero.push_back(g);
    }
    const Ideal d = derivative_power(Ideal(std::move(nonzero)), static_cast<unsigned>(*o.ord - 1));
    for (const auto& g : d.generators()) candidates.push_back(g);
    exact = exact && !t.prec;
  }
  Contact c = pick_contact(L.ring, candidates);
  if (!exact || L.ring->is_jet() || triangular_in(c.g, c.pivot)) return c;

  // A non-triangular element may still be h * unit with h shared by every
  // candidate, e.g. for a power of a smooth hypersurface.
  const GroebnerBudget budget{200, 60};
  Poly h = c.g;
  for (std::size_t i = 0; i < candidates.size() && i < 8 && h.degree() > 1; ++i) {
    auto next = poly_gcd(h, candidates[i], budget);
    if (!next) return c;
    h = std::move(*next);
  }
  if (h.ord_origin() != Order(1) || h.linear_part()[c.pivot] == 0) return c;
  h *= 1 / h.linear_part()[c.pivot];
  c.g = std::move(h);
  return c;
}

// Restricts every term to V(g), dropping the pivot variable.
Level restrict_level(const Level& L, const Contact& c, std::vector<Term> terms, std::optional<unsigned> jet) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < L.ring->size(); ++i) images.push_back(Poly::variable(L.ring, i));
  images[c.pivot] = c.g;
  const PolyMap phi(L.ring, L.ring, std::move(images));
  const PolyMap psi = invert_automorphism(phi, jet);
  const std::size_t kill[] = {c.pivot};
  RingPtr smaller = psi.target()->without(kill);

  std::optional<GBasis> modulo;
  if (!psi.exact() && !L.ring->is_jet()) {
    const Poly gs[] = {c.g};
    modulo = buchberger(gs);
  }
  const std::optional<std::uint64_t> cap =
      psi.exact() ? std::nullopt : std::optional<std::uint64_t>(*psi.source()->truncation() + 1);

  Level out{smaller, {}, {}};
  for (std::size_t i = 0; i < L.ambient.size(); ++i) {
    if (i != c.pivot) out.ambient.push_back(L.ambient[i]);
  }
  for (auto& t : terms) {
    Term r{{}, t.weight, t.prec};
    if (cap) r.prec = r.prec ? std::min(*r.prec, *cap) : *cap;
    bool exact_zero = !r.prec;
    for (const auto& f : t.gens) {
      Poly h = modulo ? modulo->normal_form(f) : f;
      // Multiples of the contact element vanish on V(g) exactly.
      if (modulo && !t.prec && h.is_zero()) continue;
      h = h.in_ring(psi.source()).substitute(psi);
      r.gens.push_back(h.restrict_to(kill, smaller));
      exact_zero = exact_zero && r.gens.back().is_zero();
    }
    // Exact zeros contribute nothing to later levels.
    if (r.gens.empty() || exact_zero) continue;
    r.gens = prune_generators(std::move(r.gens));
    out.terms.push_back(std::move(r));
  }
  return out;
}

Poly lift(const Poly& g, const std::vector<std::size_t>& ambient, const RingPtr& ring) {
  Poly::Terms t;
  for (const auto& [e, c] : g.terms()) {
    Exponent big(ring->size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) big[ambient[i]] = e[i];
    t.emplace(std::move(big), c);
  }
  return Poly(ring, std::move(t));
}

InvariantResult run_recursion(const WeightedIdeal& w, std::optional<unsigned> jet) {
  const RingPtr ring = w.front().ideal.ring();
  const std::vector<Rat> point = w.front().ideal.base_point();
  Level L{ring, {}, {}};
  for (std::size_t i = 0; i < ring->size(); ++i) L.ambient.push_back(i);
  std::optional<std::uint64_t> prec;
  if (ring->truncation()) prec = *ring->truncation() + 1;
  for (const auto& t : w) {
    if (!same_ring(t.ideal.ring(), ring) || t.ideal.base_point() != point) {
      throw Error("weighted ideal terms must share ring and base point");
    }
    if (t.weight <= 0) throw Error("weighted ideal exponents must be positive");
    L.terms.push_back({t.ideal.at_origin().generators(), t.weight, prec});
  }

  std::vector<Rat> inv;
  std::vector<Poly> params;
  std::vector<std::size_t> pivots;
  for (;;) {
    const QOrder alpha = level_order(L);
    if (!alpha) break;
    if (*alpha == 0) {
      if (inv.empty()) throw Error("the ideal is the unit ideal at this point");
      throw AssertionFailure("restricted coefficient ideal became a unit");
    }
    if (!inv.empty() && *alpha < inv.back()) throw AssertionFailure("invariant entries decreased");
    inv.push_back(*alpha);
    if (L.ring->size() == 0) throw AssertionFailure("positive order in a ring with no variables");
    const Contact c = choose_contact(L, *alpha);
    params.push_back(lift(c.g, L.ambient, ring));
    pivots.push_back(L.ambient[c.pivot]);

    std::vector<Term> next;
    for (const auto& t : L.terms) {
      const Rat mu = *alpha / t.weight;
      std::vector<Poly> d = t.gens;
      for (unsigned k = 0; Rat(k) < mu; ++k) {
        if (k) d = derivative_ideal(Ideal(d)).generators();
        std::optional<std::uint64_t> p = t.prec;
        if (p) p = *p > k ? *p - k : 0;
        next.push_back({d, *alpha / (mu - k), p});
      }
    }
    L = restrict_level(L, c, std::move(next), jet);
    if (L.terms.empty() || L.ring->size() == 0) break;
  }
  InvariantResult out{Invariant(std::move(inv)), make_flag(ring, point, std::move(params), std::move(pivots), jet), jet};
  if (out.flag.exact() && !jet) out.truncation.reset();
  return out;
}

unsigned initial_jet(const WeightedIdeal& w) {
  std::uint64_t d = 0;
  for (const auto& t : w) {
    for (const auto& g : t.ideal.generators()) d = std::max(d, g.degree());
  }
  return static_cast<unsigned>(std::max<std::uint64_t>(8, 2 * d));
}

}  // namespace

InvariantResult invariant_at(const WeightedIdeal& w, InvariantOptions opts) {
  if (w.empty()) throw Error("invariant of an empty weighted ideal");
  const RingPtr ring = w.front().ideal.ring();
  std::optional<unsigned> jet = opts.truncation;
  if (ring->truncation()) jet = jet ? std::min(*jet, *ring->truncation()) : *ring->truncation();
  for (;;) {
    try {
      return run_recursion(w, jet);
    } catch (const TruncationTooSmall&) {
      if (ring->truncation()) throw;
      const unsigned next = jet ? 2 * *jet : initial_jet(w);
      if (next > opts.max_truncation) throw;
      jet = next;
    }
  }
}

InvariantResult invariant_at(const Ideal& I, InvariantOptions opts) {
  if (I.is_zero()) {
    return {Invariant(), make_flag(I.ring(), I.base_point(), {}, {}, std::nullopt), std::nullopt};
  }
  return invariant_at(WeightedIdeal{{I, Rat(1)}}, opts);
}

InvariantResult invariant_at(const Ideal& I, std::span<const Rat> p, InvariantOptions opts) {
  return invariant_at(I.with_base_point(std::vector<Rat>(p.begin(), p.end())), opts);
}

Poly maximal_contact(const Ideal& I, unsigned a) {
  const Ideal base = I.at_origin();
  if (base.ring()->size() == 0) throw Error("maximal contact in a ring with no variables");
  const auto o = ord(base);
  if (o && *o == 0) return Poly::variable(base.ring(), 0);
  if (a == 0 || !o || *o != a) throw Error("maximal_contact: the ideal does not have order a at the point");
  const Ideal d = derivative_power(base, a - 1);
  return pick_contact(base.ring(), d.generators()).g;
}

}  // namespace wres
