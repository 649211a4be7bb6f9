#pragma once

// Charts of a stack-theoretic weighted blowup, transforms of ideals along
// them, and the cyclic group action on each chart.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wres/algebra.hpp"
#include "wres/invariant.hpp"
#include "wres/localideal.hpp"

namespace wres {

struct Chart {
  /// Flag parameter this chart is attached to.
  std::size_t index;
  RingPtr parent;
  RingPtr ring;
  /// Parent coordinates in terms of chart coordinates, including the flag
  /// change of variables and the translation to the base point.
  PolyMap substitution;
  /// Equation of the exceptional divisor in the chart ring.
  Poly exceptional;
  /// Position of the exceptional variable, when the divisor is a coordinate.
  std::optional<std::size_t> exceptional_var;
  std::uint64_t group_order;
  /// Weight of the cyclic action on each chart variable, modulo group_order.
  std::vector<std::uint64_t> action_weights;

  bool exact() const { return substitution.exact(); }
  /// "x = u^3, y = u^2*y'".
  std::string to_string() const;
};

struct Blowup {
  ReducedCenter center;
  unsigned root_factor = 1;
  std::vector<Chart> charts;
  /// Exceptional multiplicity of an admissible ideal: ell * root_factor.
  std::uint64_t multiplicity = 0;
};

struct BlowupOptions {
  unsigned root_factor = 1;
  /// Depth in the resolution tree; picks the exceptional variable name.
  unsigned depth = 1;
  /// A single-parameter center with c = 1 is a Cartier divisor already; its
  /// blowup is the identity, and the divisor keeps its equation.
  bool identity_for_divisors = true;
  /// Accept a jet flag inverse; the resulting substitutions are marked inexact.
  bool allow_inexact = false;
};

Blowup blowup_charts(const ReducedCenter& rc, BlowupOptions opts = {});

Ideal total_transform(const Ideal& I, const Chart& ch);
/// Divides every pulled-back generator by exceptional^m; throws
/// AssertionFailure when a generator is not divisible.
Ideal weak_transform(const Ideal& I, const Chart& ch, std::uint64_t m);
/// Divides every pulled-back generator by the largest possible power of the
/// exceptional equation.
Ideal proper_transform(const Ideal& I, const Chart& ch);

/// Charts for weights c*w agree with the c = 1 charts followed by u -> u^c.
bool root_stack_check(const ReducedCenter& rc, unsigned c);

/// Weight of the action on f when every monomial has the same weight.
std::optional<std::uint64_t> semi_invariant_weight(const Poly& f, const Chart& ch);

/// Group order of each chart.
std::vector<std::uint64_t> group_orders(const Blowup& b);

}  // namespace wres
