#pragma once

// The resolution invariant inv_p(I), maximal contact, coefficient ideals,
// centers and their admissibility.

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wres/algebra.hpp"
#include "wres/localideal.hpp"

namespace wres {

/// Finite sequence of positive rationals. Ordered lexicographically, with a
/// proper prefix counting as larger; the empty sequence is the maximum.
class Invariant {
 public:
  Invariant() = default;
  explicit Invariant(std::vector<Rat> entries) : entries_(std::move(entries)) {}

  const std::vector<Rat>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const Rat& operator[](std::size_t i) const { return entries_.at(i); }

  Invariant scaled(const Rat& k) const;
  /// "(5, 15/2)"; "()" when empty.
  std::string to_string() const;

  friend std::strong_ordering operator<=>(const Invariant& a, const Invariant& b);
  friend bool operator==(const Invariant& a, const Invariant& b) { return a.entries_ == b.entries_; }

 private:
  std::vector<Rat> entries_;
};

int compare(const Invariant& a, const Invariant& b);
std::ostream& operator<<(std::ostream& os, const Invariant& inv);

/// Parameters x_1..x_k in coordinates centered at `base_point`. Parameter i
/// has pivot variable pivots[i]: `phi` sends each pivot to its parameter and
/// fixes the other variables, and `psi` is its inverse, so f.substitute(psi)
/// writes f in flag coordinates.
struct ContactFlag {
  RingPtr ring;
  std::vector<Rat> base_point;
  std::vector<Poly> parameters;
  std::vector<std::size_t> pivots;
  PolyMap phi;
  PolyMap psi;

  std::size_t size() const { return parameters.size(); }
  bool exact() const { return psi.exact(); }
  std::string to_string() const;
};

/// Builds phi and psi for the given parameters. Tries an exact inverse,
/// then a jet inverse modulo degree jet_bound+1.
ContactFlag make_flag(RingPtr ring, std::vector<Rat> base_point, std::vector<Poly> parameters,
                      std::vector<std::size_t> pivots, std::optional<unsigned> jet_bound);

struct Center {
  ContactFlag flag;
  std::vector<Rat> exponents;

  std::string to_string() const;
};

struct ReducedCenter {
  ContactFlag flag;
  std::vector<std::uint64_t> weights;
  Rat ell;
  /// Weights followed by zeros up to the ring dimension.
  std::vector<std::uint64_t> cocharacter;

  /// Exponents ell / w_i.
  std::vector<Rat> exponents() const;
  /// "(x^(1/3), y^(1/2))".
  std::string to_string() const;
};

enum class Verdict { Yes, No, Indeterminate };
std::string to_string(Verdict v);

/// v(prod x_i^{c_i}) = sum c_i / a_i on the flag coordinates.
class MonomialValuation {
 public:
  explicit MonomialValuation(const Center& c);

  const std::vector<Rat>& weights() const { return weights_; }
  /// Value on a monomial in flag coordinates.
  Rat value(const Exponent& e) const;
  /// Value of f (given in the ambient ring, uncentered). `reliable` is false
  /// when the flag is a jet and no monomial below the truncation was found.
  QOrder value(const Poly& f, bool* reliable = nullptr) const;
  /// Compares v(f) against a threshold: Yes when v(f) >= t.
  Verdict at_least(const Poly& f, const Rat& t) const;

 private:
  const Center* center_;
  std::vector<Rat> weights_;
};

/// One term J^e of a weighted sum of ideals sum_t J_t^{e_t}.
struct WeightedTerm {
  Ideal ideal;
  Rat weight;
};
using WeightedIdeal = std::vector<WeightedTerm>;

/// min_t e_t * ord(J_t) at the common base point.
QOrder ord(const WeightedIdeal& w);

/// Vertex form of the coefficient ideal as a weighted sum:
/// {(D^{<=i} I, a!/(a-i)) : 0 <= i < a}.
WeightedIdeal coefficient_collection(const Ideal& I, unsigned a);

/// A maximal contact element of D^{<=a-1}I at the base point (origin
/// coordinates of the ideal's ring), pivot coefficient normalized to 1.
Poly maximal_contact(const Ideal& I, unsigned a);

/// The honest vertex-form coefficient ideal sum_{i<a} (D^{<=i}I)^{a!/(a-i)},
/// restricted to the zero set of `kill` before powering.
Ideal coefficient_ideal(const Ideal& I, unsigned a, std::span<const std::size_t> kill = {});

/// a! * min_{i<a} ord(D^{<=i}I restricted) / (a-i).
QOrder coefficient_order_shortcut(const Ideal& I, unsigned a, std::span<const std::size_t> kill);

struct InvariantOptions {
  /// Starting jet bound; empty means try exact arithmetic first.
  std::optional<unsigned> truncation;
  /// The automatic retry doubles the bound up to this value.
  unsigned max_truncation = 256;
};

struct InvariantResult {
  Invariant inv;
  ContactFlag flag;
  /// Jet bound used, if any step needed one.
  std::optional<unsigned> truncation;
};

/// inv_p(I) and its flag. The zero ideal gives the empty invariant; a unit
/// at p is rejected.
InvariantResult invariant_at(const Ideal& I, std::span<const Rat> p, InvariantOptions opts = {});
InvariantResult invariant_at(const Ideal& I, InvariantOptions opts = {});
/// Invariant of a weighted sum of ideals sharing one base point.
InvariantResult invariant_at(const WeightedIdeal& w, InvariantOptions opts = {});

/// Pairs entries with the flag; asserts a_i <= a_{i+1}.
Center center_from(const Invariant& inv, const ContactFlag& flag);
ReducedCenter reduce(const Center& c);
Center unreduce(const ReducedCenter& rc);

/// v_J(f) >= 1 for every generator of I.
Verdict admissibility(const Center& c, const Ideal& I);
/// Throws TruncationTooSmall on an indeterminate verdict.
bool is_admissible(const Center& c, const Ideal& I);

/// Mutual domination of the two monomial valuations.
Verdict center_equality_verdict(const Center& c1, const Center& c2);
bool center_equality(const Center& c1, const Center& c2);

}  // namespace wres
