// Prints one PASS/FAIL line per acceptance criterion. Details of failed
// checks go to stderr. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <exception>
#include <functional>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "test_util.hpp"
#include "wres/blowup.hpp"
#include "wres/groebner.hpp"
#include "wres/resolve.hpp"

using namespace wres;
using wres::test::P;

namespace {

class Criterion {
 public:
  explicit Criterion(int n) : n_(n) {}

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      std::cerr << "criterion " << n_ << ": " << what << "\n";
    }
  }
  template <class A, class B>
  void equal(const A& a, const B& b, const std::string& what) {
    expect(a == b, what);
  }
  bool ok() const { return ok_; }

 private:
  int n_;
  bool ok_ = true;
};

Ideal hyper(std::vector<std::string> vars, const char* f) { return Ideal({P(Ring::make(std::move(vars)), f)}); }

Invariant inv(std::initializer_list<const char*> xs) {
  std::vector<Rat> v;
  for (auto x : xs) v.push_back(parse_rat(x));
  return Invariant(std::move(v));
}

ReducedCenter center_of(const Ideal& I) {
  const auto res = invariant_at(I);
  return reduce(center_from(res.inv, res.flag));
}

Poly in_chart(const Chart& ch, std::vector<std::string> names, const char* text) {
  return Poly::parse(Ring::make(std::move(names)), text).in_ring(ch.ring);
}

ReducedCenter ordinary_center(const RingPtr& r) {
  std::vector<Poly> params;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < r->size(); ++i) {
    params.push_back(Poly::variable(r, i));
    pivots.push_back(i);
  }
  return reduce(Center{make_flag(r, {}, params, pivots, std::nullopt), std::vector<Rat>(r->size(), Rat(1))});
}

Center coordinate_center(const RingPtr& r, std::vector<Rat> exps) {
  std::sort(exps.begin(), exps.end());
  std::vector<Poly> params;
  std::vector<std::size_t> pivots;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    params.push_back(Poly::variable(r, i));
    pivots.push_back(i);
  }
  return Center{make_flag(r, {}, params, pivots, std::nullopt), exps};
}

Center scaled(const Center& c, const Rat& s) {
  Center out = c;
  for (auto& e : out.exponents) e *= s;
  return out;
}

Rat rat_factorial(unsigned n) {
  Rat r(1);
  for (unsigned i = 2; i <= n; ++i) r *= i;
  return r;
}

void walk(const ResolutionNode& n, const std::function<void(const ResolutionNode&)>& fn) {
  fn(n);
  for (const auto& c : n.children) walk(c, fn);
}

ResolveConfig embed() {
  ResolveConfig cfg;
  cfg.mode = Mode::Embed;
  return cfg;
}

bool all_smooth_leaves(const ResolutionNode& tree) {
  bool ok = all_leaves_final(tree);
  walk(tree, [&](const ResolutionNode& n) {
    if (n.children.empty()) ok = ok && n.status == NodeStatus::Smooth && jacobian_smooth(n.ideal.generators()[0]);
  });
  return ok;
}

void criterion1(Criterion& c) {
  const Ideal f = hyper({"x", "y"}, "x^5 + x^3*y^3 + y^8");
  const auto res = invariant_at(f);
  c.equal(res.inv, inv({"5", "15/2"}), "invariant (5, 15/2)");
  const auto top = maxinv_candidates(f).points.front();
  c.equal(top.point, std::vector<Rat>(2, Rat(0)), "maxinv at the origin");
  c.equal(top.inv, res.inv, "maxinv equals the origin invariant");
  const std::size_t kx[] = {0};
  c.equal(coefficient_order_shortcut(f, 5, kx), QOrder(Rat(180)), "b2 = 180 by the vertex formula");
  c.equal(ord(coefficient_ideal(f, 5, kx)), Order(180), "b2 = 180 explicitly");
  const auto rc = center_of(f);
  c.equal(rc.to_string(), std::string("(x^(1/3), y^(1/2))"), "reduced center");
  const auto b = blowup_charts(rc);
  c.equal(b.charts.size(), std::size_t{2}, "two charts");
  const auto& cx = b.charts.at(0);
  c.equal(cx.to_string(), std::string("x = u^3, y = u^2*y'"), "x-chart substitution");
  c.equal(total_transform(f, cx).generators()[0], P(cx.ring, "u^15*(1 + y'^3 + u*y'^8)"), "x-chart total transform");
  c.equal(cx.group_order, std::uint64_t{3}, "x-chart group order");
  c.equal(cx.action_weights, std::vector<std::uint64_t>{1, 1}, "x-chart action weights");
  for (const auto& ch : b.charts) {
    c.expect(jacobian_smooth(proper_transform(f, ch).generators()[0]), "proper transform smooth in " + ch.to_string());
  }
}

void criterion2(Criterion& c) {
  const Ideal f = hyper({"x", "y"}, "x^5 + x^3*y^3 + y^9");
  const auto b = blowup_charts(center_of(f));
  const auto& cy = b.charts.at(1);
  const Ideal p = proper_transform(f, cy);
  c.equal(p.generators()[0], in_chart(cy, {"x'", "v"}, "x'^5 + x'^3 + v^3"), "y-chart proper transform");
  c.equal(invariant_at(p).inv, inv({"3", "3"}), "y-chart invariant (3, 3)");
  const auto tree = resolve(f, embed());
  c.equal(rounds(tree), 2u, "two rounds");
  c.expect(all_smooth_leaves(tree), "all leaves smooth");
}

void criterion3(Criterion& c) {
  const Ideal f = hyper({"x", "y"}, "x^5 + x^3*y^3 + y^7");
  c.equal(invariant_at(f).inv, inv({"5", "7"}), "invariant (5, 7)");
  const auto rc = center_of(f);
  c.equal(rc.to_string(), std::string("(x^(1/7), y^(1/5))"), "reduced center");
  const auto b = blowup_charts(rc);
  c.equal(b.charts.size(), std::size_t{2}, "two charts");
  c.equal(b.charts.at(0).group_order, std::uint64_t{7}, "mu_7 on the x-chart");
  c.equal(b.charts.at(0).action_weights, std::vector<std::uint64_t>{1, (7 - 5 % 7) % 7}, "mu_7 weights (1, -5)");
  c.equal(b.charts.at(1).group_order, std::uint64_t{5}, "mu_5 on the y-chart");
  c.equal(b.charts.at(1).action_weights, std::vector<std::uint64_t>{(5 - 7 % 5) % 5, 1}, "mu_5 weights (-7, 1)");
  for (const auto& ch : b.charts) {
    c.expect(jacobian_smooth(proper_transform(f, ch).generators()[0]), "proper transform smooth in " + ch.to_string());
  }
  const auto tree = resolve(f, embed());
  c.equal(rounds(tree), 1u, "one round");
  c.expect(all_smooth_leaves(tree), "all leaves smooth");
}

void criterion4(Criterion& c) {
  const Ideal f = hyper({"x", "y1", "y2", "y3"}, "x^2 - y1*y2*y3");
  c.equal(invariant_at(f).inv, inv({"2", "3", "3", "3"}), "invariant (2, 3, 3, 3)");
  const auto rc = center_of(f);
  c.equal(rc.to_string(), std::string("(x^(1/3), y1^(1/2), y2^(1/2), y3^(1/2))"), "reduced center");
  const auto b = blowup_charts(rc);
  const auto& c3 = b.charts.at(3);
  c.equal(proper_transform(f, c3).generators()[0], in_chart(c3, {"x'", "y1'", "y2'", "u"}, "x'^2 - y1'*y2'"),
          "y3-chart proper transform");
  const auto tree = resolve(f, embed());
  c.equal(rounds(tree), 2u, "two rounds");
  c.expect(all_smooth_leaves(tree), "all leaves smooth");
  const auto ordinary = blowup_charts(ordinary_center(f.ring()));
  const auto& o3 = ordinary.charts.at(3);
  c.equal(proper_transform(f, o3).generators()[0], in_chart(o3, {"x'", "y1'", "y2'", "y3'"}, "x'^2 - y1'*y2'*y3'"),
          "ordinary blowup reproduces the equation");
}

void criterion5(Criterion& c) {
  const Ideal f = hyper({"x", "y", "z"}, "x^2*y*z + y*z^4");
  const auto cand = maxinv_candidates(f);
  c.equal(cand.points.front().inv, inv({"4", "4", "4"}), "maxinv (4, 4, 4)");
  c.equal(cand.points.front().point, std::vector<Rat>(3, Rat(0)), "maxinv at the origin");
  const auto rc = center_of(f);
  c.equal(rc.to_string(), std::string("(x, y, z)"), "reduced center");
  const auto b = blowup_charts(rc);
  const auto& cz = b.charts.at(2);
  const Ideal w = weak_transform(f, cz, 4);
  c.equal(w.generators()[0], in_chart(cz, {"x3", "y3", "z"}, "y3*(x3^2 + z)"), "z-chart weak transform");
  const auto next = invariant_at(w);
  c.equal(next.inv, inv({"2", "2"}), "next invariant (2, 2)");
  const auto rc2 = reduce(center_from(next.inv, next.flag));
  c.equal(rc2.to_string(), std::string("(y', (x'^2 + u))"), "next reduced center");
  c.expect(rc2.flag.parameters.at(1).degree() == 2, "second parameter is not linear");
}

void criterion6(Criterion& c) {
  const Invariant chain[] = {inv({"1", "1", "1"}), inv({"1", "1", "2"}), inv({"1", "2", "1"}), inv({"1", "2"}),
                             inv({"2", "2", "1"})};
  for (std::size_t i = 0; i < 5; ++i) {
    for (std::size_t j = 0; j < 5; ++j) {
      const int want = i < j ? -1 : (i > j ? 1 : 0);
      c.equal(compare(chain[i], chain[j]), want, "chain " + chain[i].to_string() + " vs " + chain[j].to_string());
    }
  }
  std::mt19937 rng(wres::test::seed());
  auto random_inv = [&] {
    std::vector<Rat> e;
    const unsigned len = rng() % 5;
    for (unsigned i = 0; i < len; ++i) e.push_back(make_rat(1 + rng() % 4, 1 + rng() % 2));
    return Invariant(std::move(e));
  };
  for (int i = 0; i < 1000; ++i) {
    const auto a = random_inv(), b = random_inv(), d = random_inv();
    c.expect(int(a < b) + int(a == b) + int(b < a) == 1, "totality " + a.to_string() + " " + b.to_string());
    c.expect(compare(a, b) == -compare(b, a), "antisymmetry " + a.to_string() + " " + b.to_string());
    if (a <= b && b <= d) c.expect(a <= d, "transitivity");
  }
}

void criterion7(Criterion& c) {
  for (const auto& g : wres::test::golden()) {
    const Ideal I = hyper(g.vars, g.f);
    const std::string tag = std::string(" for ") + g.f;
    const auto res = invariant_at(I);

    for (unsigned k : {2u, 3u}) c.equal(invariant_at(power(I, k)).inv, res.inv.scaled(Rat(k)), "homogeneity" + tag);

    const unsigned a = static_cast<unsigned>(res.inv[0].get_num().get_ui());
    c.equal(invariant_at(coefficient_collection(I, a)).inv, res.inv.scaled(rat_factorial(a - 1)),
            "coefficient homogeneity" + tag);

    const std::size_t kill[] = {res.flag.pivots[0]};
    const auto shortcut = coefficient_order_shortcut(I, a, kill);
    const auto explicit_ord = ord(coefficient_ideal(I, a, kill));
    c.expect(shortcut && explicit_ord && *shortcut == Rat(static_cast<unsigned long>(*explicit_ord)),
             "shortcut order" + tag);

    c.expect(reembedding_check(I), "re-embedding" + tag);
    const auto re = reembedded_invariant(I).inv.entries();
    const auto base = res.inv.entries();
    c.expect(re.size() == base.size() + 1 && re.front() == 1 && std::equal(base.begin(), base.end(), re.begin() + 1),
             "re-embedding prepends one entry 1" + tag);

    const auto rc = center_of(I);
    for (unsigned r : {2u, 3u}) c.expect(root_stack_check(rc, r), "root stack c=" + std::to_string(r) + tag);

    for (auto mode : {Mode::Principalize, Mode::Embed}) {
      ResolveConfig cfg;
      cfg.mode = mode;
      const auto tree = resolve(I, cfg);
      walk(tree, [&](const ResolutionNode& n) {
        if (!n.center || n.points.empty()) return;
        const auto at_res = invariant_at(n.ideal, n.center->point);
        const Center ctr = center_from(at_res.inv, at_res.flag);
        const Ideal at = n.ideal.with_base_point(n.center->point);
        c.expect(is_admissible(ctr, at), "emitted center admissible" + tag);
        if (ctr.flag.exact()) c.expect(oracle::brute_admissible(ctr, at), "emitted center admissible (oracle)" + tag);
        const auto& top = n.points.front().inv;
        for (const auto& ch : n.children) {
          if (is_trivial(ch.ideal.generators())) continue;
          for (const auto& p : ch.points) {
            if (ch.exceptional->evaluate(p.point) == 0) c.expect(p.inv < top, "strict descent" + tag);
          }
        }
      });
    }
  }

  // Vertex form against the full coefficient ideal, a <= 3.
  std::mt19937 rng(wres::test::seed() + 1);
  const std::vector<std::vector<std::string>> rings{{"x"}, {"x", "y"}, {"x", "y", "z"}};
  auto random_ideal = [&] {
    const auto r = Ring::make(rings[rng() % 3]);
    std::vector<Poly> gens;
    const unsigned ngens = 1 + rng() % 2;
    for (unsigned g = 0; g < ngens; ++g) {
      Poly p(r);
      const unsigned terms = 1 + rng() % 2;
      for (unsigned t = 0; t < terms; ++t) {
        Exponent e(r->size(), 0);
        const unsigned deg = 1 + rng() % 4;
        for (unsigned k = 0; k < deg; ++k) e[rng() % r->size()]++;
        p += Poly::monomial(r, e, make_rat(1 + rng() % 3, 1));
      }
      gens.push_back(p.is_zero() ? Poly::variable(r, 0) : p);
    }
    return Ideal(std::move(gens));
  };
  for (int checked = 0; checked < 200;) {
    const Ideal I = random_ideal();
    const auto o = ord(I);
    if (!o || *o == 0 || *o > 3) continue;
    const unsigned a = static_cast<unsigned>(*o);
    std::vector<std::size_t> kill;
    for (std::size_t v = 0; v < I.ring()->size(); ++v) {
      if (rng() % 2) kill.push_back(v);
    }
    const auto lit = oracle::restricted_order(oracle::full_coefficient_ideal(I, a, kill), kill);
    const auto fast = coefficient_order_shortcut(I, a, kill);
    c.expect(lit ? (fast && *fast == Rat(static_cast<unsigned long>(*lit))) : !fast,
             "vertex form vs full G for " + I.to_string());
    ++checked;
  }

  // Admissibility against the oracle, and the sum, product and derivative lemmas.
  for (int i = 0; i < 200; ++i) {
    const Ideal I = random_ideal();
    const RingPtr r = I.ring();
    const Ideal other = random_ideal();
    std::vector<Poly> jg;
    for (const auto& g : other.generators()) {
      if (g.ring()->size() == r->size()) jg.push_back(g.in_ring(r));
    }
    const Ideal J = jg.empty() ? I : Ideal(jg);
    std::vector<Rat> exps;
    const std::size_t k = 1 + rng() % r->size();
    for (std::size_t j = 0; j < k; ++j) exps.push_back(make_rat(2 + rng() % 7, 2));
    const Center ctr = coordinate_center(r, exps);
    const bool ai = is_admissible(ctr, I), aj = is_admissible(ctr, J);
    c.expect(ai == oracle::brute_admissible(ctr, I), "admissibility oracle for " + I.to_string());
    if (ai && aj) c.expect(is_admissible(ctr, sum(I, J)), "sum lemma");
    if (ai && aj) c.expect(is_admissible(scaled(ctr, Rat(2)), product(I, J)), "product lemma");
    c.expect(is_admissible(scaled(ctr, Rat(2)), power(I, 2)) == ai, "power lemma");
    const Rat a1 = ctr.exponents.front();
    if (ai && a1 > 1) c.expect(is_admissible(scaled(ctr, (a1 - 1) / a1), derivative_ideal(I)), "derivative lemma");
  }

  // Center uniqueness on the (x^2, y^4) / ((x+y^3)^2, y^4) pair.
  auto r = Ring::make({"x", "y"});
  const auto a = invariant_at(Ideal({P(r, "x^2"), P(r, "y^4")}));
  const auto b = invariant_at(Ideal({P(r, "(x + y^3)^2"), P(r, "y^4")}));
  c.equal(a.inv, b.inv, "equal invariants of the pair");
  c.expect(center_equality(center_from(a.inv, a.flag), center_from(b.inv, b.flag)), "centers dominate each other");
}

void criterion8(Criterion& c) {
  for (const auto& g : wres::test::golden()) {
    const Ideal I = hyper(g.vars, g.f);
    const Poly& f = I.generators()[0];
    const int bound = f.ring()->size() > 3 ? 1 : 2;
    for (const auto& p : oracle::grid_points(I, bound)) {
      bool gradient = false;
      for (std::size_t v = 0; v < f.ring()->size(); ++v) gradient = gradient || f.partial(v).evaluate(p) != 0;
      c.expect((invariant_at(I, p).inv == inv({"1"})) == gradient, std::string("smooth points of ") + g.f);
    }
  }
  auto r = Ring::make({"x", "y", "z"});
  for (const auto& gens : std::vector<std::vector<const char*>>{{"x", "y"}, {"x - y^2", "z - x*y"}}) {
    std::vector<Poly> ps;
    for (auto s : gens) ps.push_back(P(r, s));
    const Ideal I(ps);
    for (const auto& p : oracle::grid_points(I, 2)) {
      c.equal(invariant_at(I, p).inv, inv({"1", "1"}), std::string("codimension two at points of ") + gens[0]);
    }
  }
  for (const auto& g : wres::test::golden()) {
    const auto tree = resolve(hyper(g.vars, g.f), embed());
    walk(tree, [&](const ResolutionNode& n) {
      if (!n.children.empty() || n.status != NodeStatus::Smooth) return;
      if (is_trivial(n.ideal.generators())) return;
      c.expect(jacobian_smooth(n.ideal.generators()[0]), "Jacobian certificate of a smooth leaf");
      for (const auto& pi : n.points) c.equal(pi.inv, inv({"1"}), "leaf invariant (1)");
    });
  }
}

}  // namespace

int main() {
  const std::vector<std::function<void(Criterion&)>> criteria{criterion1, criterion2, criterion3, criterion4,
                                                              criterion5, criterion6, criterion7, criterion8};
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Criterion c(static_cast<int>(i + 1));
    try {
      criteria[i](c);
    } catch (const std::exception& e) {
      c.expect(false, std::string("exception: ") + e.what());
    }
    std::cout << "criterion " << i + 1 << ": " << (c.ok() ? "PASS" : "FAIL") << std::endl;
    all = all && c.ok();
  }
  return all ? 0 : 1;
}
