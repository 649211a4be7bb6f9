#include "wres/resolve.hpp"

#include <algorithm>
#include <functional>

#include "wres/error.hpp"
#include "wres/groebner.hpp"

namespace wres {

std::string to_string(Mode m) { return m == Mode::Embed ? "embed" : "principalize"; }

std::string to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Active:
      return "active";
    case NodeStatus::Smooth:
      return "smooth";
    case NodeStatus::Principalized:
      return "principalized";
    case NodeStatus::BudgetExceeded:
      return "budget-exceeded";
  }
  return "?";
}

namespace {

bool vanishes_at(std::span<const Poly> gens, std::span<const Rat> p) {
  return std::all_of(gens.begin(), gens.end(), [&](const Poly& g) { return g.evaluate(p) == 0; });
}

bool is_origin(const std::vector<Rat>& p) {
  return std::all_of(p.begin(), p.end(), [](const Rat& x) { return x == 0; });
}

// Grid {-2..2}^n for small n, otherwise points on the coordinate axes.
std::vector<std::vector<Rat>> probe_points(std::size_t n) {
  std::vector<std::vector<Rat>> out;
  if (n <= 5) {
    std::vector<int> digits(n, 0);
    for (;;) {
      std::vector<Rat> p;
      for (int d : digits) p.emplace_back(d - 2);
      out.push_back(std::move(p));
      std::size_t i = 0;
      while (i < n && ++digits[i] == 5) digits[i++] = 0;
      if (i == n) break;
    }
    return out;
  }
  out.emplace_back(n, Rat(0));
  for (std::size_t i = 0; i < n; ++i) {
    for (int c : {-2, -1, 1, 2}) {
      std::vector<Rat> p(n, Rat(0));
      p[i] = c;
      out.push_back(std::move(p));
    }
  }
  return out;
}

bool candidate_before(const PointInvariant& a, const PointInvariant& b) {
  if (a.inv != b.inv) return a.inv > b.inv;
  const bool ao = is_origin(a.point);
  const bool bo = is_origin(b.point);
  if (ao != bo) return ao;
  return a.point < b.point;
}

bool principal_smooth(const Ideal& I) {
  const auto gens = prune_generators(I.generators());
  return gens.size() == 1 && jacobian_smooth(gens.front());
}

CenterSummary summarize(const ReducedCenter& rc) {
  CenterSummary s{rc.flag.base_point, {}, rc.exponents(), rc.weights, rc.ell, rc.to_string()};
  for (const auto& p : rc.flag.parameters) s.parameters.push_back(p.to_string());
  return s;
}

Poly single_generator(const Ideal& I) {
  const auto gens = prune_generators(I.generators());
  if (gens.size() != 1) throw Error("embedded mode is restricted to hypersurfaces (one generator)");
  return gens.front();
}

}  // namespace

bool jacobian_smooth(const Poly& f) {
  std::vector<Poly> gens{f};
  for (std::size_t i = 0; i < f.ring()->size(); ++i) gens.push_back(f.partial(i));
  return is_trivial(gens);
}

Candidates maxinv_candidates(const Ideal& I, const ResolveConfig& cfg) {
  if (I.is_zero() || is_trivial(I.generators())) throw Error("maxinv of a trivial ideal");
  const std::size_t n = I.ring()->size();
  const auto stratum = max_order_stratum(I);
  const auto& sgens = stratum.stratum.generators();

  Candidates out;
  std::vector<std::vector<Rat>> points;
  const auto rp = rational_points_zero_dim(sgens);
  if (rp.zero_dimensional) {
    points = rp.points;
    out.certified = !rp.irrational_points;
  } else {
    out.certified = false;
    points.emplace_back(n, Rat(0));
    for (const auto& h : cfg.hints) {
      if (h.size() != n) throw Error("hint point has the wrong number of coordinates");
      points.push_back(h);
    }
    for (auto& p : probe_points(n)) points.push_back(std::move(p));
  }
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  InvariantOptions opts;
  opts.truncation = cfg.truncation;
  for (const auto& p : points) {
    if (!vanishes_at(sgens, p)) continue;
    out.points.push_back({p, invariant_at(I, p, opts).inv});
  }
  std::sort(out.points.begin(), out.points.end(), candidate_before);
  if (out.points.empty()) out.certified = false;
  return out;
}

StepResult step(const Ideal& I, const ResolveConfig& cfg, unsigned depth) {
  if (cfg.mode == Mode::Embed) single_generator(I);
  const auto cands = maxinv_candidates(I, cfg);
  if (cands.points.empty()) throw BudgetExceeded("maxinv locus not certified: no rational candidate point");
  const auto& top = cands.points.front();

  InvariantOptions opts;
  opts.truncation = cfg.truncation;
  const auto res = invariant_at(I, top.point, opts);
  const Center c = center_from(res.inv, res.flag);
  if (!c.flag.exact() && !(c.flag.size() == 1 && cfg.root_factor == 1)) {
    throw BudgetExceeded("flag automorphism is only known up to a jet");
  }
  if (!is_admissible(c, I.with_base_point(top.point))) throw AssertionFailure("center is not admissible");
  const ReducedCenter rc = reduce(c);

  BlowupOptions bopts;
  bopts.root_factor = cfg.root_factor;
  bopts.depth = depth;
  Blowup b = blowup_charts(rc, bopts);
  std::vector<Ideal> transforms;
  const Ideal based = I.with_base_point(top.point);
  for (const auto& ch : b.charts) {
    transforms.push_back(cfg.mode == Mode::Embed ? proper_transform(based, ch)
                                                 : weak_transform(based, ch, b.multiplicity));
  }
  return {top, cands.certified, rc, std::move(b), std::move(transforms)};
}

namespace {

struct Driver {
  const ResolveConfig& cfg;
  unsigned steps = 0;

  bool finished(ResolutionNode& node) {
    if (cfg.mode == Mode::Embed) {
      if (is_trivial(node.ideal.generators()) || jacobian_smooth(single_generator(node.ideal))) {
        node.status = NodeStatus::Smooth;
        return true;
      }
    } else if (is_trivial(node.ideal.generators())) {
      node.status = NodeStatus::Principalized;
      return true;
    }
    return false;
  }

  // A smooth principal ideal is its own center everywhere on V(I); the blowup
  // is the identity and the weak transform is the unit ideal.
  void divisor_step(ResolutionNode& node) {
    const Poly f = prune_generators(node.ideal.generators()).front();
    const RingPtr& r = node.ideal.ring();
    node.center = CenterSummary{{}, {f.to_string()}, {Rat(1)}, {1}, Rat(1), "(" + f.to_string() + ")"};
    node.children.push_back(ResolutionNode{.chart_index = 0,
                                           .substitution = PolyMap::identity(r).to_string(),
                                           .group_order = 1,
                                           .action_weights = std::vector<std::uint64_t>(r->size(), 0),
                                           .exceptional = f,
                                           .ideal = Ideal::unit(r),
                                           .status = NodeStatus::Principalized});
    ++steps;
  }

  void check_descent(const ResolutionNode& child, const Poly& exceptional, const Invariant& parent) {
    for (const auto& p : child.points) {
      if (exceptional.evaluate(p.point) != 0) continue;
      if (!(p.inv < parent)) {
        throw AssertionFailure("invariant did not drop over the center: " + p.inv.to_string() +
                               " >= " + parent.to_string());
      }
    }
  }

  void run(ResolutionNode& node, unsigned depth, const Invariant* parent, const Poly* exceptional) {
    try {
      if (finished(node)) return;
      if (cfg.mode == Mode::Principalize && principal_smooth(node.ideal)) {
        if (steps >= cfg.max_steps) {
          node.status = NodeStatus::BudgetExceeded;
          node.note = "step budget exhausted";
          return;
        }
        divisor_step(node);
        node.status = NodeStatus::Principalized;
        return;
      }
      auto cands = maxinv_candidates(node.ideal, cfg);
      node.points = cands.points;
      node.certified = cands.certified;
      if (parent) {
        const std::vector<Rat> origin(node.ideal.ring()->size(), Rat(0));
        const bool tracked = std::any_of(node.points.begin(), node.points.end(),
                                         [&](const PointInvariant& p) { return p.point == origin; });
        if (!tracked && vanishes_at(node.ideal.generators(), origin)) {
          InvariantOptions opts;
          opts.truncation = cfg.truncation;
          node.points.push_back({origin, invariant_at(node.ideal, origin, opts).inv});
        }
        check_descent(node, *exceptional, *parent);
      }
      if (steps >= cfg.max_steps) {
        node.status = NodeStatus::BudgetExceeded;
        node.note = "step budget exhausted";
        return;
      }
      StepResult s = step(node.ideal, cfg, depth + 1);
      ++steps;
      node.center = summarize(s.center);
      if (!s.certified) node.note = "maxinv locus not certified";
      for (std::size_t i = 0; i < s.blowup.charts.size(); ++i) {
        const auto& ch = s.blowup.charts[i];
        node.children.push_back(ResolutionNode{.chart_index = i,
                                               .substitution = ch.to_string(),
                                               .group_order = ch.group_order,
                                               .action_weights = ch.action_weights,
                                               .exceptional = ch.exceptional,
                                               .ideal = s.transforms[i]});
      }
      const Invariant top = s.top.inv;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        run(node.children[i], depth + 1, &top, &s.blowup.charts[i].exceptional);
      }
      node.status = cfg.mode == Mode::Embed ? NodeStatus::Smooth : NodeStatus::Principalized;
      for (const auto& c : node.children) {
        if (c.status == NodeStatus::BudgetExceeded) node.status = NodeStatus::BudgetExceeded;
      }
    } catch (const BudgetExceeded& e) {
      node.status = NodeStatus::BudgetExceeded;
      node.note = e.what();
    } catch (const TruncationTooSmall& e) {
      node.status = NodeStatus::BudgetExceeded;
      node.note = e.what();
    }
  }
};

}  // namespace

ResolutionNode resolve(const Ideal& I, const ResolveConfig& cfg) {
  if (cfg.max_steps == 0) throw Error("max steps must be at least 1");
  if (cfg.root_factor == 0) throw Error("root factor must be at least 1");
  if (I.is_zero()) throw Error("cannot resolve the zero ideal");
  if (cfg.mode == Mode::Embed) single_generator(I);
  ResolutionNode root{.ideal = Ideal(I.generators())};
  Driver d{cfg};
  d.run(root, 0, nullptr, nullptr);
  return root;
}

unsigned rounds(const ResolutionNode& root) {
  unsigned best = 0;
  for (const auto& c : root.children) best = std::max(best, rounds(c));
  return root.center ? best + 1 : best;
}

bool all_leaves_final(const ResolutionNode& root) {
  if (root.children.empty()) {
    return root.status == NodeStatus::Smooth || root.status == NodeStatus::Principalized;
  }
  return std::all_of(root.children.begin(), root.children.end(), all_leaves_final);
}

std::size_t node_count(const ResolutionNode& root) {
  std::size_t n = 1;
  for (const auto& c : root.children) n += node_count(c);
  return n;
}

InvariantResult reembedded_invariant(const Ideal& I) {
  const RingPtr big = I.ring()->with_leading("x0");
  std::vector<Poly> gens{Poly::variable(big, 0)};
  for (const auto& g : I.generators()) {
    Poly::Terms t;
    for (const auto& [e, c] : g.terms()) {
      Exponent x(e.size() + 1, 0);
      std::copy(e.begin(), e.end(), x.begin() + 1);
      t.emplace(std::move(x), c);
    }
    if (!t.empty()) gens.emplace_back(big, std::move(t));
  }
  std::vector<Rat> point{Rat(0)};
  for (const auto& x : I.base_point()) point.push_back(x);
  return invariant_at(Ideal(std::move(gens), std::move(point)));
}

bool reembedding_check(const Ideal& I) {
  const auto before = invariant_at(I);
  const auto after = reembedded_invariant(I);
  std::vector<Rat> expected{Rat(1)};
  for (const auto& a : before.inv.entries()) expected.push_back(a);
  if (after.inv.entries() != expected) return false;
  if (after.flag.parameters.empty()) return false;
  return after.flag.parameters.front() == Poly::variable(after.flag.ring, 0) && after.flag.pivots.front() == 0;
}

}  // namespace wres
