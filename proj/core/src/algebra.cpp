#include "wres/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <sstream>
#include <unordered_set>

namespace wres {

Rat make_rat(const BigInt& num, const BigInt& den) {
  if (den == 0) throw Error("zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(std::string_view text) {
  std::string s(text);
  Rat r;
  if (s.empty() || r.set_str(s, 10) != 0) throw ParseError("malformed rational '" + s + "'", 0);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + s + "'", s.find('/') + 1);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r) { return r.get_str(); }

BigInt factorial(unsigned n) {
  BigInt f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return f;
}

bool order_less(const QOrder& a, const QOrder& b) {
  if (!a) return false;
  if (!b) return true;
  return *a < *b;
}

QOrder qmin(const QOrder& a, const QOrder& b) { return order_less(b, a) ? b : a; }

std::string to_string(const QOrder& q) { return q ? to_string(*q) : std::string("inf"); }

std::uint64_t total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

bool GrlexGreater::operator()(const Exponent& a, const Exponent& b) const {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<std::string> names, std::optional<unsigned> truncation)
    : names_(std::move(names)), truncation_(truncation) {
  if (truncation_ && *truncation_ < 1) throw Error("truncation bound must be >= 1");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw Error("duplicate variable name '" + n + "'");
  }
}

RingPtr Ring::make(std::vector<std::string> names, std::optional<unsigned> truncation) {
  return std::make_shared<const Ring>(std::move(names), truncation);
}

std::optional<std::size_t> Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return i;
  }
  return std::nullopt;
}

RingPtr Ring::with_truncation(std::optional<unsigned> n) const { return make(names_, n); }

RingPtr Ring::without(std::span<const std::size_t> kill) const {
  std::vector<std::string> kept;
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (std::find(kill.begin(), kill.end(), i) == kill.end()) kept.push_back(names_[i]);
  }
  return make(std::move(kept), truncation_);
}

RingPtr Ring::with_leading(const std::string& preferred) const {
  std::vector<std::string> names{fresh_name(preferred, names_)};
  names.insert(names.end(), names_.begin(), names_.end());
  return make(std::move(names), truncation_);
}

bool same_ring(const RingPtr& a, const RingPtr& b) { return a == b || *a == *b; }

std::string fresh_name(const std::string& preferred, std::span<const std::string> taken) {
  auto used = [&](const std::string& s) { return std::find(taken.begin(), taken.end(), s) != taken.end(); };
  if (!used(preferred)) return preferred;
  for (int i = 0;; ++i) {
    auto candidate = preferred + "_" + std::to_string(i);
    if (!used(candidate)) return candidate;
  }
}

// ---------------------------------------------------------------- Poly

namespace {

void require_same(const RingPtr& a, const RingPtr& b, const char* op) {
  if (!same_ring(a, b)) throw RingMismatch(std::string("ring mismatch in ") + op);
}

void add_term(Poly::Terms& terms, const Exponent& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

}  // namespace

Poly::Poly(RingPtr ring) : ring_(std::move(ring)) {}

Poly::Poly(RingPtr ring, Terms terms) : ring_(std::move(ring)), terms_(std::move(terms)) {
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.size() != ring_->size()) throw Error("exponent length does not match ring");
    it = it->second == 0 ? terms_.erase(it) : std::next(it);
  }
  truncate();
}

Poly Poly::constant(RingPtr ring, const Rat& c) {
  Poly p(ring);
  if (c != 0) p.terms_.emplace(Exponent(ring->size(), 0), c);
  return p;
}

Poly Poly::variable(RingPtr ring, std::size_t index) {
  if (index >= ring->size()) throw Error("variable index out of range");
  Exponent e(ring->size(), 0);
  e[index] = 1;
  return monomial(std::move(ring), std::move(e));
}

Poly Poly::monomial(RingPtr ring, Exponent e, const Rat& c) {
  Poly p(std::move(ring));
  if (e.size() != p.ring_->size()) throw Error("exponent length does not match ring");
  if (c != 0) p.terms_.emplace(std::move(e), c);
  p.truncate();
  return p;
}

void Poly::truncate() {
  const auto n = ring_->truncation();
  if (!n) return;
  // Terms are sorted by descending degree.
  while (!terms_.empty() && total_degree(terms_.begin()->first) > *n) terms_.erase(terms_.begin());
}

bool Poly::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
}

Rat Poly::constant_term() const { return coefficient(Exponent(ring_->size(), 0)); }

Rat Poly::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rat(0) : it->second;
}

std::uint64_t Poly::degree() const { return terms_.empty() ? 0 : total_degree(terms_.begin()->first); }

std::uint64_t Poly::degree_in(std::size_t var) const {
  std::uint64_t d = 0;
  for (const auto& [e, c] : terms_) d = std::max<std::uint64_t>(d, e[var]);
  return d;
}

Order Poly::ord_origin() const {
  if (terms_.empty()) return std::nullopt;
  return total_degree(terms_.rbegin()->first);
}

Poly Poly::homogeneous_part(std::uint64_t d) const {
  Poly out(ring_);
  for (const auto& [e, c] : terms_) {
    if (total_degree(e) == d) out.terms_.emplace_hint(out.terms_.end(), e, c);
  }
  return out;
}

std::vector<Rat> Poly::linear_part() const {
  std::vector<Rat> lin(ring_->size());
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    Exponent e(ring_->size(), 0);
    e[i] = 1;
    lin[i] = coefficient(e);
  }
  return lin;
}

const std::pair<const Exponent, Rat>& Poly::leading() const {
  if (terms_.empty()) throw Error("leading term of the zero polynomial");
  return *terms_.begin();
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& q) {
  require_same(ring_, q.ring_, "add");
  for (const auto& [e, c] : q.terms_) add_term(terms_, e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& q) {
  require_same(ring_, q.ring_, "sub");
  for (const auto& [e, c] : q.terms_) add_term(terms_, e, -c);
  return *this;
}

Poly operator*(const Poly& p, const Poly& q) {
  require_same(p.ring_, q.ring_, "mul");
  Poly out(p.ring_);
  const auto bound = p.ring_->truncation();
  const std::size_t n = p.ring_->size();
  Exponent e(n);
  for (const auto& [ea, ca] : p.terms_) {
    const auto da = total_degree(ea);
    for (const auto& [eb, cb] : q.terms_) {
      if (bound && da + total_degree(eb) > *bound) continue;
      for (std::size_t i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      add_term(out.terms_, e, ca * cb);
    }
  }
  return out;
}

Poly& Poly::operator*=(const Poly& q) { return *this = *this * q; }

Poly& Poly::operator*=(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

bool Poly::operator==(const Poly& q) const { return same_ring(ring_, q.ring_) && terms_ == q.terms_; }

Poly Poly::pow(unsigned k) const {
  Poly result = constant(ring_, 1);
  Poly base = *this;
  while (k > 0) {
    if (k & 1U) result *= base;
    k >>= 1U;
    if (k > 0) base *= base;
  }
  return result;
}

Poly Poly::partial(std::size_t var) const {
  if (var >= ring_->size()) throw Error("variable index out of range");
  Poly out(ring_);
  for (const auto& [e, c] : terms_) {
    if (e[var] == 0) continue;
    Exponent d = e;
    d[var] -= 1;
    out.terms_.emplace(std::move(d), c * e[var]);
  }
  return out;
}

Poly Poly::translate(std::span<const Rat> point) const {
  if (point.size() != ring_->size()) throw Error("point dimension does not match ring");
  if (std::all_of(point.begin(), point.end(), [](const Rat& r) { return r == 0; })) return *this;
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ring_->size(); ++i) {
    images.push_back(variable(ring_, i) + constant(ring_, point[i]));
  }
  return substitute(PolyMap(ring_, ring_, std::move(images)));
}

Poly Poly::substitute(const PolyMap& m) const {
  require_same(ring_, m.source(), "substitute");
  const auto& target = m.target();
  const std::size_t n = ring_->size();
  std::vector<std::vector<Poly>> powers(n);
  for (std::size_t i = 0; i < n; ++i) powers[i].push_back(constant(target, 1));
  auto power = [&](std::size_t i, std::uint32_t k) -> const Poly& {
    auto& cache = powers[i];
    while (cache.size() <= k) cache.push_back(cache.back() * m.image(i));
    return cache[k];
  };
  Poly out(target);
  for (const auto& [e, c] : terms_) {
    Poly term = constant(target, c);
    for (std::size_t i = 0; i < n && !term.is_zero(); ++i) {
      if (e[i] != 0) term *= power(i, e[i]);
    }
    out += term;
  }
  return out;
}

Rat Poly::evaluate(std::span<const Rat> point) const {
  if (point.size() != ring_->size()) throw Error("point dimension does not match ring");
  Rat sum = 0;
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (std::size_t i = 0; i < e.size() && t != 0; ++i) {
      for (std::uint32_t k = 0; k < e[i]; ++k) t *= point[i];
    }
    sum += t;
  }
  return sum;
}

Poly Poly::restrict_to(std::span<const std::size_t> kill, const RingPtr& smaller) const {
  if (smaller->size() + kill.size() != ring_->size()) throw Error("restriction ring has wrong size");
  std::vector<bool> killed(ring_->size(), false);
  for (auto k : kill) killed.at(k) = true;
  Terms out;
  for (const auto& [e, c] : terms_) {
    bool vanishes = false;
    Exponent r;
    r.reserve(smaller->size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (killed[i]) {
        if (e[i] != 0) vanishes = true;
      } else {
        r.push_back(e[i]);
      }
    }
    if (!vanishes) out.emplace(std::move(r), c);
  }
  return Poly(smaller, std::move(out));
}

Poly Poly::in_ring(const RingPtr& other) const {
  if (other->size() != ring_->size()) throw RingMismatch("in_ring: variable count differs");
  return Poly(other, terms_);
}

std::uint64_t Poly::var_valuation(std::size_t var) const {
  if (terms_.empty()) return 0;
  std::uint64_t v = UINT64_MAX;
  for (const auto& [e, c] : terms_) v = std::min<std::uint64_t>(v, e[var]);
  return v;
}

Poly Poly::divide_by_var_power(std::size_t var, std::uint64_t k) const {
  Terms out;
  for (const auto& [e, c] : terms_) {
    if (e[var] < k) throw AssertionFailure("polynomial not divisible by " + ring_->name(var) + "^" + std::to_string(k));
    Exponent d = e;
    d[var] -= static_cast<std::uint32_t>(k);
    out.emplace(std::move(d), c);
  }
  return Poly(ring_, std::move(out));
}

std::optional<Poly> Poly::exact_divide(const Poly& g) const {
  if (!same_ring(ring_, g.ring_)) throw RingMismatch("exact_divide: different rings");
  if (g.is_zero()) throw Error("division by the zero polynomial");
  if (ring_->is_jet()) throw Error("exact_divide needs an exact-mode ring");
  const auto& [glead, gc] = g.leading();
  Poly q(ring_);
  Poly r = *this;
  while (!r.is_zero()) {
    const auto& [e, c] = r.leading();
    Exponent shift(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < glead[i]) return std::nullopt;
      shift[i] = e[i] - glead[i];
    }
    Poly t = Poly::monomial(ring_, std::move(shift), c / gc);
    r -= t * g;
    q += t;
  }
  return q;
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  Rat inv = 1 / leading().second;
  return *this * inv;
}

Poly Poly::primitive() const {
  if (is_zero()) return *this;
  BigInt den_lcm = 1;
  for (const auto& [e, c] : terms_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  BigInt content = 0;
  for (const auto& [e, c] : terms_) {
    BigInt v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
  }
  Rat scale = make_rat(den_lcm, content);
  if (leading().second < 0) scale = -scale;
  return *this * scale;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    const bool negative = c < 0;
    Rat mag = abs(c);
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    const bool unit_monomial = total_degree(e) == 0;
    bool wrote = false;
    if (mag != 1 || unit_monomial) {
      os << mag.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << ring_->name(i);
      if (e[i] > 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

// ---------------------------------------------------------------- PolyMap

PolyMap::PolyMap(RingPtr source, RingPtr target, std::vector<Poly> images, bool exact)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)), exact_(exact) {
  if (images_.size() != source_->size()) throw Error("PolyMap needs one image per source variable");
  for (const auto& p : images_) require_same(p.ring(), target_, "PolyMap");
}

PolyMap PolyMap::identity(RingPtr ring) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < ring->size(); ++i) images.push_back(Poly::variable(ring, i));
  return PolyMap(ring, ring, std::move(images));
}

PolyMap PolyMap::then(const PolyMap& next) const {
  std::vector<Poly> images;
  images.reserve(images_.size());
  for (const auto& p : images_) images.push_back(p.substitute(next));
  return PolyMap(source_, next.target_, std::move(images), exact_ && next.exact_);
}

bool PolyMap::operator==(const PolyMap& other) const {
  return same_ring(source_, other.source_) && same_ring(target_, other.target_) && images_ == other.images_;
}

std::string PolyMap::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ", ";
    os << source_->name(i) << " = " << images_[i].to_string();
  }
  return os.str();
}

// ---------------------------------------------------------------- inversion

namespace {

// Inverse of a square rational matrix by Gauss-Jordan; nullopt when singular.
std::optional<std::vector<std::vector<Rat>>> invert_matrix(std::vector<std::vector<Rat>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rat>> inv(n, std::vector<Rat>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rat scale = 1 / a[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      a[col][j] *= scale;
      inv[col][j] *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rat f = a[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

// One step psi <- L^{-1} (X - Q(psi)), with Q the nonlinear part of phi.
std::vector<Poly> iterate_inverse(const std::vector<Poly>& nonlinear, const std::vector<std::vector<Rat>>& linv,
                                  const RingPtr& src, const RingPtr& dst, const std::vector<Poly>& psi) {
  const std::size_t n = nonlinear.size();
  PolyMap current(src, dst, psi);
  std::vector<Poly> rhs;
  for (std::size_t i = 0; i < n; ++i) {
    rhs.push_back(Poly::variable(dst, i) - nonlinear[i].in_ring(src).substitute(current));
  }
  std::vector<Poly> next;
  for (std::size_t j = 0; j < n; ++j) {
    Poly acc(dst);
    for (std::size_t i = 0; i < n; ++i) {
      if (linv[j][i] != 0) acc += rhs[i] * linv[j][i];
    }
    next.push_back(std::move(acc));
  }
  return next;
}

}  // namespace

PolyMap invert_automorphism(const PolyMap& m, std::optional<unsigned> jet_bound) {
  const std::size_t n = m.source()->size();
  if (m.target()->size() != n) throw Error("automorphism must preserve the variable count");
  const auto exact_ring = m.source()->with_truncation(std::nullopt);
  std::vector<std::vector<Rat>> lin(n);
  std::vector<Poly> nonlinear;
  for (std::size_t i = 0; i < n; ++i) {
    const Poly img = m.image(i).in_ring(exact_ring);
    if (img.constant_term() != 0) throw Error("automorphism must fix the origin");
    lin[i] = img.linear_part();
    Poly q = img;
    for (std::size_t j = 0; j < n; ++j) {
      if (lin[i][j] != 0) q -= Poly::variable(exact_ring, j) * lin[i][j];
    }
    nonlinear.push_back(std::move(q));
  }
  const auto linv = invert_matrix(lin);
  if (!linv) throw Error("automorphism has a non-invertible linear part");

  std::vector<Poly> psi;
  for (std::size_t j = 0; j < n; ++j) {
    Poly acc(exact_ring);
    for (std::size_t i = 0; i < n; ++i) {
      if ((*linv)[j][i] != 0) acc += Poly::variable(exact_ring, i) * (*linv)[j][i];
    }
    psi.push_back(std::move(acc));
  }

  const bool all_linear = std::all_of(nonlinear.begin(), nonlinear.end(), [](const Poly& p) { return p.is_zero(); });
  if (all_linear) return PolyMap(m.target(), m.source(), [&] {
    std::vector<Poly> out;
    for (auto& p : psi) out.push_back(p.in_ring(m.source()));
    return out;
  }());

  // Triangular systems reach a fixed point after at most n+1 rounds. The
  // attempt stops once the predicted degree of the next round gets large.
  constexpr std::uint64_t kDegreeCap = 64;
  constexpr std::size_t kTermCap = 4000;
  std::uint64_t qdeg = 0;
  for (const auto& q : nonlinear) qdeg = std::max(qdeg, q.degree());
  for (std::size_t round = 0; round < n + 2; ++round) {
    std::uint64_t pdeg = 0;
    std::size_t terms = 0;
    for (const auto& p : psi) {
      pdeg = std::max(pdeg, p.degree());
      terms += p.term_count();
    }
    if (pdeg * qdeg > kDegreeCap || terms > kTermCap) break;
    auto next = iterate_inverse(nonlinear, *linv, exact_ring, exact_ring, psi);
    if (next == psi) {
      PolyMap forward(exact_ring, exact_ring, [&] {
        std::vector<Poly> out;
        for (std::size_t i = 0; i < n; ++i) out.push_back(m.image(i).in_ring(exact_ring));
        return out;
      }());
      PolyMap inverse(exact_ring, exact_ring, psi);
      if (forward.then(inverse) == PolyMap::identity(exact_ring)) {
        std::vector<Poly> out;
        for (auto& p : psi) out.push_back(p.in_ring(m.source()));
        return PolyMap(m.target(), m.source(), std::move(out));
      }
      break;
    }
    psi = std::move(next);
  }

  const auto bound = jet_bound ? jet_bound : m.source()->truncation();
  if (!bound) throw TruncationTooSmall("automorphism has no polynomial inverse; a jet bound is required");
  const auto jet_ring = exact_ring->with_truncation(*bound);
  std::vector<Poly> jet_nonlinear;
  for (auto& q : nonlinear) jet_nonlinear.push_back(q.in_ring(jet_ring));
  std::vector<Poly> jpsi;
  for (std::size_t j = 0; j < n; ++j) {
    Poly acc(jet_ring);
    for (std::size_t i = 0; i < n; ++i) {
      if ((*linv)[j][i] != 0) acc += Poly::variable(jet_ring, i) * (*linv)[j][i];
    }
    jpsi.push_back(std::move(acc));
  }
  // Each round fixes at least one more degree.
  for (unsigned round = 0; round < *bound; ++round) {
    auto next = iterate_inverse(jet_nonlinear, *linv, jet_ring, jet_ring, jpsi);
    if (next == jpsi) break;
    jpsi = std::move(next);
  }
  return PolyMap(jet_ring, jet_ring, std::move(jpsi), false);
}

}  // namespace wres
