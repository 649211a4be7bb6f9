#pragma once

// The resolution driver: maximal invariant over candidate points, one
// blowup step, and iteration into a tree of charts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wres/blowup.hpp"
#include "wres/invariant.hpp"
#include "wres/localideal.hpp"

namespace wres {

enum class Mode { Principalize, Embed };
std::string to_string(Mode m);

struct ResolveConfig {
  /// Starting jet bound; empty means exact arithmetic with automatic retry.
  std::optional<unsigned> truncation;
  /// Upper bound on the number of blowups in the whole tree.
  unsigned max_steps = 64;
  /// Extra points to try when the top order stratum is positive dimensional.
  std::vector<std::vector<Rat>> hints;
  Mode mode = Mode::Principalize;
  unsigned root_factor = 1;
};

struct PointInvariant {
  std::vector<Rat> point;
  Invariant inv;
};

struct Candidates {
  /// Sorted with the maximal invariant first.
  std::vector<PointInvariant> points;
  /// False when the top stratum was only probed at finitely many points, or
  /// when some of its points are irrational.
  bool certified = true;
};

/// Points of V(I) that may carry maxinv, each with its invariant.
Candidates maxinv_candidates(const Ideal& I, const ResolveConfig& cfg = {});

struct CenterSummary {
  std::vector<Rat> point;
  std::vector<std::string> parameters;
  std::vector<Rat> exponents;
  std::vector<std::uint64_t> weights;
  Rat ell;
  /// "(x^(1/3), y^(1/2))".
  std::string text;
};

struct StepResult {
  PointInvariant top;
  bool certified = true;
  ReducedCenter center;
  Blowup blowup;
  /// Weak transforms (principalization) or proper transforms (embedded),
  /// one per chart.
  std::vector<Ideal> transforms;
};

/// Blows up the center of the top candidate and transforms I to each chart.
/// Throws AssertionFailure when the center is not admissible.
StepResult step(const Ideal& I, const ResolveConfig& cfg = {}, unsigned depth = 1);

enum class NodeStatus { Active, Smooth, Principalized, BudgetExceeded };
std::string to_string(NodeStatus s);

struct ResolutionNode {
  /// Chart of the parent blowup this node lives on; empty at the root.
  std::optional<std::size_t> chart_index;
  std::string substitution;
  std::uint64_t group_order = 1;
  std::vector<std::uint64_t> action_weights;
  /// Equation of the new exceptional divisor in this chart.
  std::optional<Poly> exceptional;
  Ideal ideal;
  std::vector<PointInvariant> points;
  bool certified = true;
  std::optional<CenterSummary> center;
  std::vector<ResolutionNode> children;
  NodeStatus status = NodeStatus::Active;
  std::string note;
};

/// Iterates steps until every leaf is smooth (embedded mode, hypersurfaces
/// only) or has unit ideal (principalization). Leaves that run out of budget
/// are marked as such. Strict descent of the invariant is asserted at every
/// child.
ResolutionNode resolve(const Ideal& I, const ResolveConfig& cfg = {});

/// Number of blowups on the longest root-to-leaf path.
unsigned rounds(const ResolutionNode& root);
bool all_leaves_final(const ResolutionNode& root);
std::size_t node_count(const ResolutionNode& root);

/// Smoothness of V(f) on the whole chart: (f, df/dx_1, ...) is the unit ideal.
bool jacobian_smooth(const Poly& f);

/// Invariant of (x0) + I in the ring with a fresh leading variable x0.
InvariantResult reembedded_invariant(const Ideal& I);
/// The re-embedded invariant is (1, inv(I)) with leading parameter x0.
bool reembedding_check(const Ideal& I);

}  // namespace wres
