#pragma once

// Ideals with a marked rational base point, and the local calculus on them:
// order, derivative ideals, sums, products, restriction and order strata.

#include <span>
#include <string>
#include <vector>

#include "wres/algebra.hpp"

namespace wres {

class Ideal {
 public:
  /// Generators must be nonempty and share a ring. The base point defaults
  /// to the origin.
  explicit Ideal(std::vector<Poly> generators, std::vector<Rat> base_point = {});

  static Ideal unit(const RingPtr& ring);
  static Ideal zero(const RingPtr& ring);
  static Ideal parse(const RingPtr& ring, std::span<const std::string> generators);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  const std::vector<Rat>& base_point() const { return point_; }

  bool is_zero() const;
  /// Some generator is a nonzero constant.
  bool has_unit_generator() const;
  /// Generators translated so that the base point becomes the origin.
  Ideal at_origin() const;
  Ideal with_base_point(std::vector<Rat> p) const;
  Ideal in_ring(const RingPtr& other) const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  std::vector<Poly> gens_;
  std::vector<Rat> point_;
};

/// Dedupes, drops zeros and generators in the rational span of earlier
/// ones; a nonzero constant collapses the list to (1).
std::vector<Poly> prune_generators(std::vector<Poly> gens);

/// Minimal order of the generators after moving p to the origin.
Order ord_at(const Ideal& I, std::span<const Rat> p);
/// Order at the ideal's base point.
Order ord(const Ideal& I);

/// D^{<=1}I: generators together with all their first partials.
Ideal derivative_ideal(const Ideal& I);
/// D^{<=k}I.
Ideal derivative_power(const Ideal& I, unsigned k);

Ideal sum(const Ideal& I, const Ideal& J);
Ideal product(const Ideal& I, const Ideal& J);
Ideal power(const Ideal& I, unsigned k);

/// Sets the listed variables to zero and drops them from the ring.
Ideal restrict(const Ideal& I, std::span<const std::size_t> kill);

/// Ideal membership and equality through Groebner bases (exact rings only).
bool contains(const Ideal& I, const Poly& f);
bool ideal_equal(const Ideal& I, const Ideal& J);

struct OrderStratum {
  std::uint64_t a_max = 0;
  /// V(D^{<= a_max - 1} I): where the order reaches a_max.
  Ideal stratum;
};

/// Largest order attained anywhere on V(I), with its locus.
OrderStratum max_order_stratum(const Ideal& I);

}  // namespace wres
