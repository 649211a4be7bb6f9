#pragma once

// Exact sparse multivariate polynomials over the rationals.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "wres/error.hpp"

namespace wres {

using Rat = mpq_class;
using BigInt = mpz_class;

Rat make_rat(const BigInt& num, const BigInt& den);
/// Accepts "p", "-p" and "p/q"; the result is canonical.
Rat parse_rat(std::string_view text);
/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rat& r);
BigInt factorial(unsigned n);

/// Natural number or +infinity (nullopt).
using Order = std::optional<std::uint64_t>;
/// Nonnegative rational or +infinity (nullopt).
using QOrder = std::optional<Rat>;

bool order_less(const QOrder& a, const QOrder& b);
QOrder qmin(const QOrder& a, const QOrder& b);
std::string to_string(const QOrder& q);

using Exponent = std::vector<std::uint32_t>;

std::uint64_t total_degree(const Exponent& e);

/// Graded lexicographic "greater": higher total degree first, ties broken
/// by the first variable with a larger exponent.
struct GrlexGreater {
  bool operator()(const Exponent& a, const Exponent& b) const;
};

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

/// Ordered variable names plus an optional jet truncation bound N.
class Ring {
 public:
  explicit Ring(std::vector<std::string> names, std::optional<unsigned> truncation = {});

  static RingPtr make(std::vector<std::string> names, std::optional<unsigned> truncation = {});

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  std::optional<std::size_t> index_of(std::string_view name) const;
  std::optional<unsigned> truncation() const { return truncation_; }
  bool is_jet() const { return truncation_.has_value(); }

  RingPtr with_truncation(std::optional<unsigned> n) const;
  /// Same ring without the listed variables.
  RingPtr without(std::span<const std::size_t> kill) const;
  /// Prepends a fresh variable whose name avoids every existing one.
  RingPtr with_leading(const std::string& preferred) const;

  bool operator==(const Ring& other) const = default;

 private:
  std::vector<std::string> names_;
  std::optional<unsigned> truncation_;
};

bool same_ring(const RingPtr& a, const RingPtr& b);
/// A variable name based on `preferred` not present in `taken`.
std::string fresh_name(const std::string& preferred, std::span<const std::string> taken);

class PolyMap;

class Poly {
 public:
  using Terms = std::map<Exponent, Rat, GrlexGreater>;

  explicit Poly(RingPtr ring);
  Poly(RingPtr ring, Terms terms);

  static Poly constant(RingPtr ring, const Rat& c);
  static Poly variable(RingPtr ring, std::size_t index);
  static Poly monomial(RingPtr ring, Exponent e, const Rat& c = Rat(1));
  static Poly parse(RingPtr ring, std::string_view text);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_term() const;
  Rat coefficient(const Exponent& e) const;
  /// Maximal total degree; 0 for the zero polynomial.
  std::uint64_t degree() const;
  std::uint64_t degree_in(std::size_t var) const;
  /// Minimal total degree of a stored term, infinity for zero.
  Order ord_origin() const;
  /// Homogeneous component of degree d.
  Poly homogeneous_part(std::uint64_t d) const;
  /// Coefficients of the degree-one component, one per variable.
  std::vector<Rat> linear_part() const;
  /// Leading term (graded-lex) and its coefficient. Requires nonzero.
  const std::pair<const Exponent, Rat>& leading() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& q);
  Poly& operator-=(const Poly& q);
  Poly& operator*=(const Poly& q);
  Poly& operator*=(const Rat& c);
  friend Poly operator+(Poly p, const Poly& q) { return p += q; }
  friend Poly operator-(Poly p, const Poly& q) { return p -= q; }
  friend Poly operator*(const Poly& p, const Poly& q);
  friend Poly operator*(Poly p, const Rat& c) { return p *= c; }
  friend Poly operator*(const Rat& c, Poly p) { return p *= c; }
  bool operator==(const Poly& q) const;

  Poly pow(unsigned k) const;
  Poly partial(std::size_t var) const;
  Poly translate(std::span<const Rat> point) const;
  Poly substitute(const PolyMap& m) const;
  Rat evaluate(std::span<const Rat> point) const;
  /// Sets the listed variables to zero and drops them from the ring.
  Poly restrict_to(std::span<const std::size_t> kill, const RingPtr& smaller) const;
  /// Reinterprets the terms in another ring with the same number of variables.
  Poly in_ring(const RingPtr& other) const;
  /// Largest k such that var^k divides every term.
  std::uint64_t var_valuation(std::size_t var) const;
  /// Exact division by var^k; throws if some term is not divisible.
  Poly divide_by_var_power(std::size_t var, std::uint64_t k) const;
  /// Quotient f / g when g divides f exactly (exact rings only).
  std::optional<Poly> exact_divide(const Poly& g) const;
  /// Same polynomial scaled so the leading coefficient is 1.
  Poly monic() const;
  /// Scaled to an integer-coefficient polynomial with content 1 and positive leading coefficient.
  Poly primitive() const;

  std::string to_string() const;

 private:
  void truncate();
  RingPtr ring_;
  Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Poly& p);

/// Ring homomorphism given by the images of the source variables.
class PolyMap {
 public:
  PolyMap(RingPtr source, RingPtr target, std::vector<Poly> images, bool exact = true);

  static PolyMap identity(RingPtr ring);

  const RingPtr& source() const { return source_; }
  const RingPtr& target() const { return target_; }
  const std::vector<Poly>& images() const { return images_; }
  const Poly& image(std::size_t i) const { return images_.at(i); }
  bool exact() const { return exact_; }

  /// First this map, then `next`: variables of the source map to images
  /// of this map rewritten through `next`.
  PolyMap then(const PolyMap& next) const;
  bool operator==(const PolyMap& other) const;
  std::string to_string() const;

 private:
  RingPtr source_;
  RingPtr target_;
  std::vector<Poly> images_;
  bool exact_;
};

/// Inverse of an automorphism fixing the origin with invertible linear part.
/// Returns an exact polynomial inverse when the fixed-point iteration
/// terminates (triangular maps). Otherwise, with a jet bound N (argument or
/// the ring's truncation), returns the inverse modulo degree N+1 marked
/// inexact; with no bound it throws.
PolyMap invert_automorphism(const PolyMap& m, std::optional<unsigned> jet_bound = {});

}  // namespace wres
