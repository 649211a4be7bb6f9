#pragma once

// A small Buchberger engine over the rationals: membership, triviality,
// elimination and rational points of zero-dimensional loci.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "wres/algebra.hpp"

namespace wres {

enum class OrderKind { Grlex, Lex, Block };

struct MonomialOrder {
  OrderKind kind = OrderKind::Grlex;
  /// Block order only: variables ordered first (graded-lex inside each block).
  std::vector<std::size_t> eliminated;

  static MonomialOrder grlex() { return {}; }
  static MonomialOrder lex() { return {OrderKind::Lex, {}}; }
  static MonomialOrder block(std::vector<std::size_t> eliminated) { return {OrderKind::Block, std::move(eliminated)}; }

  /// True when a is strictly greater than b.
  bool greater(const Exponent& a, const Exponent& b) const;
  std::string tag() const;
};

struct GroebnerBudget {
  std::size_t max_basis = 4000;
  std::uint64_t max_degree = 400;
};

class GBasis {
 public:
  GBasis(RingPtr ring, std::vector<Poly> basis, MonomialOrder order);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& basis() const { return basis_; }
  const MonomialOrder& order() const { return order_; }

  Poly normal_form(const Poly& f) const;
  bool contains(const Poly& f) const { return normal_form(f).is_zero(); }
  bool is_trivial() const;
  /// Every variable has a pure power among the leading monomials.
  bool is_zero_dimensional() const;
  Exponent leading_monomial(const Poly& f) const;

 private:
  RingPtr ring_;
  std::vector<Poly> basis_;
  MonomialOrder order_;
};

/// Reduced Groebner basis. Pairs are processed by the normal strategy
/// (smallest lcm first, ties by index); intermediate results are made
/// primitive to curb coefficient growth. Jet-mode rings are rejected.
GBasis buchberger(std::span<const Poly> generators, MonomialOrder order = {}, GroebnerBudget budget = {});

/// True iff 1 lies in the ideal.
bool is_trivial(std::span<const Poly> generators);

/// Generators of the ideal intersected with the subring in `keep_vars`.
/// The polynomials stay in the input ring and only involve kept variables.
std::vector<Poly> eliminate(std::span<const Poly> generators, std::span<const std::size_t> keep_vars);

/// Greatest common divisor, up to a scalar, from the intersection
/// (a) ∩ (b) = (lcm). Empty when the Groebner computation exceeds `budget`.
std::optional<Poly> poly_gcd(const Poly& a, const Poly& b, GroebnerBudget budget = {});

struct RationalPoints {
  std::vector<std::vector<Rat>> points;
  bool zero_dimensional = true;
  /// Some point has an irrational coordinate.
  bool irrational_points = false;
};

/// All rational points of a zero-dimensional locus. A positive-dimensional
/// input is reported through `zero_dimensional = false`, not as an error.
RationalPoints rational_points_zero_dim(std::span<const Poly> generators);

/// Rational roots of a univariate polynomial given by coefficients
/// (index = degree). Sets `irrational` when the squarefree part has roots
/// outside Q.
std::vector<Rat> rational_roots(std::vector<Rat> coeffs, bool* irrational = nullptr);

}  // namespace wres
