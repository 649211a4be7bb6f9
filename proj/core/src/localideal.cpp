#include "wres/localideal.hpp"

#include <algorithm>

#include "wres/groebner.hpp"

namespace wres {

Ideal::Ideal(std::vector<Poly> generators, std::vector<Rat> base_point)
    : gens_(std::move(generators)), point_(std::move(base_point)) {
  if (gens_.empty()) throw Error("an ideal needs at least one generator");
  ring_ = gens_.front().ring();
  for (const auto& g : gens_) {
    if (!same_ring(g.ring(), ring_)) throw RingMismatch("ideal generators live in different rings");
  }
  if (point_.empty()) point_.assign(ring_->size(), Rat(0));
  if (point_.size() != ring_->size()) throw Error("base point has the wrong dimension");
}

Ideal Ideal::unit(const RingPtr& ring) { return Ideal({Poly::constant(ring, 1)}); }
Ideal Ideal::zero(const RingPtr& ring) { return Ideal({Poly(ring)}); }

Ideal Ideal::parse(const RingPtr& ring, std::span<const std::string> generators) {
  std::vector<Poly> gens;
  for (const auto& g : generators) gens.push_back(Poly::parse(ring, g));
  return Ideal(std::move(gens));
}

bool Ideal::is_zero() const {
  return std::all_of(gens_.begin(), gens_.end(), [](const Poly& g) { return g.is_zero(); });
}

bool Ideal::has_unit_generator() const {
  return std::any_of(gens_.begin(), gens_.end(), [](const Poly& g) { return !g.is_zero() && g.is_constant(); });
}

Ideal Ideal::at_origin() const {
  if (std::all_of(point_.begin(), point_.end(), [](const Rat& r) { return r == 0; })) return *this;
  std::vector<Poly> moved;
  for (const auto& g : gens_) moved.push_back(g.translate(point_));
  return Ideal(std::move(moved));
}

Ideal Ideal::with_base_point(std::vector<Rat> p) const { return Ideal(gens_, std::move(p)); }

Ideal Ideal::in_ring(const RingPtr& other) const {
  std::vector<Poly> moved;
  for (const auto& g : gens_) moved.push_back(g.in_ring(other));
  return Ideal(std::move(moved), point_);
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

std::vector<Poly> prune_generators(std::vector<Poly> gens) {
  if (gens.empty()) throw Error("prune_generators: empty list");
  const RingPtr ring = gens.front().ring();
  std::vector<Poly> kept;
  std::vector<Poly> echelon;  // distinct leading monomials
  for (auto& g : gens) {
    if (g.is_zero()) continue;
    if (g.is_constant()) return {Poly::constant(ring, 1)};
    Poly r = g;
    for (const auto& e : echelon) {
      const auto& lead = e.leading();
      const Rat c = r.coefficient(lead.first);
      if (c != 0) r -= e * (c / lead.second);
    }
    if (r.is_zero()) continue;
    for (auto& e : echelon) {
      const Rat c = e.coefficient(r.leading().first);
      if (c != 0) e -= r * (c / r.leading().second);
    }
    echelon.push_back(std::move(r));
    kept.push_back(std::move(g));
  }
  if (kept.empty()) kept.push_back(Poly(ring));
  return kept;
}

Order ord_at(const Ideal& I, std::span<const Rat> p) {
  if (p.size() != I.ring()->size()) throw Error("ord_at: point has the wrong dimension");
  Order best;
  const bool origin = std::all_of(p.begin(), p.end(), [](const Rat& r) { return r == 0; });
  for (const auto& g : I.generators()) {
    const auto o = origin ? g.ord_origin() : g.translate(p).ord_origin();
    if (o && (!best || *o < *best)) best = o;
  }
  return best;
}

Order ord(const Ideal& I) { return ord_at(I, I.base_point()); }

Ideal derivative_ideal(const Ideal& I) {
  std::vector<Poly> gens = I.generators();
  for (const auto& g : I.generators()) {
    for (std::size_t v = 0; v < I.ring()->size(); ++v) gens.push_back(g.partial(v));
  }
  return Ideal(prune_generators(std::move(gens)), I.base_point());
}

Ideal derivative_power(const Ideal& I, unsigned k) {
  Ideal out(prune_generators(I.generators()), I.base_point());
  for (unsigned i = 0; i < k && !out.has_unit_generator(); ++i) out = derivative_ideal(out);
  return out;
}

namespace {
void check_same(const Ideal& I, const Ideal& J) {
  if (!same_ring(I.ring(), J.ring())) throw RingMismatch("ideals live in different rings");
}
}  // namespace

Ideal sum(const Ideal& I, const Ideal& J) {
  check_same(I, J);
  std::vector<Poly> gens = I.generators();
  gens.insert(gens.end(), J.generators().begin(), J.generators().end());
  return Ideal(prune_generators(std::move(gens)), I.base_point());
}

Ideal product(const Ideal& I, const Ideal& J) {
  check_same(I, J);
  std::vector<Poly> gens;
  for (const auto& f : I.generators()) {
    for (const auto& g : J.generators()) gens.push_back(f * g);
  }
  return Ideal(prune_generators(std::move(gens)), I.base_point());
}

Ideal power(const Ideal& I, unsigned k) {
  Ideal out = Ideal::unit(I.ring()).with_base_point(I.base_point());
  Ideal base(prune_generators(I.generators()), I.base_point());
  // Binary powering keeps the intermediate generator lists small.
  while (k) {
    if (k & 1u) out = product(out, base);
    k >>= 1;
    if (k) base = product(base, base);
  }
  return out;
}

Ideal restrict(const Ideal& I, std::span<const std::size_t> kill) {
  const auto smaller = I.ring()->without(kill);
  std::vector<Poly> gens;
  for (const auto& g : I.generators()) gens.push_back(g.restrict_to(kill, smaller));
  std::vector<Rat> point;
  for (std::size_t i = 0; i < I.ring()->size(); ++i) {
    if (std::find(kill.begin(), kill.end(), i) == kill.end()) point.push_back(I.base_point()[i]);
  }
  return Ideal(prune_generators(std::move(gens)), std::move(point));
}

bool contains(const Ideal& I, const Poly& f) {
  if (f.is_zero()) return true;
  if (I.is_zero()) return false;
  return buchberger(prune_generators(I.generators())).contains(f);
}

bool ideal_equal(const Ideal& I, const Ideal& J) {
  check_same(I, J);
  if (I.is_zero() || J.is_zero()) return I.is_zero() == J.is_zero();
  const auto gi = buchberger(prune_generators(I.generators()));
  const auto gj = buchberger(prune_generators(J.generators()));
  return gi.basis() == gj.basis();
}

OrderStratum max_order_stratum(const Ideal& I) {
  if (I.is_zero()) throw Error("max_order_stratum: zero ideal");
  if (is_trivial(I.generators())) throw Error("max_order_stratum: unit ideal");
  std::uint64_t bound = 0;
  for (const auto& g : I.generators()) bound = std::max(bound, g.degree());
  Ideal current(prune_generators(I.generators()), I.base_point());
  std::uint64_t a = 1;
  for (;; ++a) {
    Ideal next = derivative_ideal(current);
    if (next.has_unit_generator() || is_trivial(next.generators())) break;
    if (a > bound) throw AssertionFailure("max_order_stratum: derivative chain did not terminate");
    current = std::move(next);
  }
  return {a, current};
}

}  // namespace wres
