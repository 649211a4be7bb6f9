#include <gtest/gtest.h>

#include <random>

#include "test_util.hpp"
#include "wres/groebner.hpp"

using namespace wres;
using wres::test::P;

TEST(Groebner, Basics) {
  auto r = Ring::make({"x", "y"});
  std::vector<Poly> xy{P(r, "x"), P(r, "y")};
  auto gb = buchberger(xy);
  ASSERT_EQ(gb.basis().size(), 2u);
  EXPECT_EQ(gb.basis()[0], P(r, "y"));
  EXPECT_EQ(gb.basis()[1], P(r, "x"));

  std::vector<Poly> cyclic{P(r, "x^2 - y"), P(r, "x*y - 1")};
  auto g2 = buchberger(cyclic);
  EXPECT_TRUE(g2.contains(P(r, "y^2 - x")));
  bool found = false;
  for (const auto& g : g2.basis()) found = found || g == P(r, "y^2 - x");
  EXPECT_TRUE(found);

  std::vector<Poly> one{P(r, "1")};
  auto g3 = buchberger(one);
  ASSERT_EQ(g3.basis().size(), 1u);
  EXPECT_EQ(g3.basis()[0], P(r, "1"));

  auto jet = Ring::make({"x"}, 3u);
  std::vector<Poly> j{P(jet, "x")};
  EXPECT_THROW(buchberger(j), Error);
}

TEST(Groebner, Trivial) {
  auto r = Ring::make({"x"});
  std::vector<Poly> a{P(r, "x"), P(r, "1 + x")};
  EXPECT_TRUE(is_trivial(a));
  auto r4 = Ring::make({"x", "y1", "y2", "y3"});
  std::vector<Poly> b{P(r4, "x^2 - y1*y2*y3")};
  EXPECT_FALSE(is_trivial(b));
  auto c = Ring::make({"u", "y'"});
  auto f = P(c, "1 + y'^3 + u*y'^8");
  std::vector<Poly> jac{f, f.partial(0), f.partial(1)};
  EXPECT_TRUE(is_trivial(jac));
}

TEST(Groebner, Eliminate) {
  auto r = Ring::make({"t", "x", "y"});
  std::vector<Poly> cubic{P(r, "x - t^2"), P(r, "y - t^3")};
  std::vector<std::size_t> keep{1, 2};
  auto e = eliminate(cubic, keep);
  ASSERT_EQ(e.size(), 1u);
  EXPECT_EQ(e[0].monic(), P(r, "x^3 - y^2").monic());

  auto r1 = Ring::make({"x"});
  std::vector<Poly> x{P(r1, "x")};
  std::vector<std::size_t> k0{0};
  auto ex = eliminate(x, k0);
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0], P(r1, "x"));

  auto r4 = Ring::make({"x", "y1", "y2", "y3"});
  std::vector<Poly> sing{P(r4, "x"), P(r4, "y1*y2"), P(r4, "y1*y3"), P(r4, "y2*y3")};
  std::vector<std::size_t> k1{1};
  auto es = eliminate(sing, k1);
  for (const auto& g : es) EXPECT_TRUE(g.is_zero());
  auto gb = buchberger(cubic);
  for (const auto& g : e) EXPECT_TRUE(gb.contains(g));
}

TEST(Groebner, RationalPoints) {
  auto r = Ring::make({"x", "y"});
  std::vector<Poly> a{P(r, "x"), P(r, "y")};
  auto pa = rational_points_zero_dim(a);
  ASSERT_EQ(pa.points.size(), 1u);
  EXPECT_EQ(pa.points[0], (std::vector<Rat>{0, 0}));

  std::vector<Poly> b{P(r, "x^2 - 1"), P(r, "y")};
  auto pb = rational_points_zero_dim(b);
  ASSERT_EQ(pb.points.size(), 2u);
  EXPECT_EQ(pb.points[0], (std::vector<Rat>{-1, 0}));
  EXPECT_EQ(pb.points[1], (std::vector<Rat>{1, 0}));
  EXPECT_FALSE(pb.irrational_points);

  std::vector<Poly> c{P(r, "x^2 - 2"), P(r, "y")};
  auto pc = rational_points_zero_dim(c);
  EXPECT_TRUE(pc.points.empty());
  EXPECT_TRUE(pc.irrational_points);

  std::vector<Poly> d{P(r, "x*y")};
  EXPECT_FALSE(rational_points_zero_dim(d).zero_dimensional);

  std::vector<Poly> e{P(r, "x^2 - y"), P(r, "y^2 - 4*y"), P(r, "x*y - 8")};
  auto pe = rational_points_zero_dim(e);
  ASSERT_EQ(pe.points.size(), 1u);
  EXPECT_EQ(pe.points[0], (std::vector<Rat>{2, 4}));
}

// Membership in bounded degree by linear algebra over products m*g.
static bool span_member(const std::vector<Poly>& gens, const Poly& f, unsigned deg) {
  const auto& r = f.ring();
  std::vector<Poly> rows;
  std::vector<Exponent> monos;
  auto rec = [&](auto&& self, Exponent e, std::size_t v, unsigned left) -> void {
    if (v == r->size()) {
      monos.push_back(e);
      return;
    }
    for (unsigned k = 0; k <= left; ++k) {
      e[v] = k;
      self(self, e, v + 1, left - k);
    }
  };
  rec(rec, Exponent(r->size(), 0), 0, deg);
  for (const auto& g : gens) {
    for (const auto& m : monos) {
      if (total_degree(m) + g.degree() <= deg) rows.push_back(Poly::monomial(r, m) * g);
    }
  }
  std::vector<Poly> ech;
  auto reduce = [&](Poly p) {
    for (const auto& e : ech) {
      const auto& lead = e.leading();
      Rat c = p.coefficient(lead.first);
      if (c != 0) p -= e * (c / lead.second);
    }
    return p;
  };
  for (auto& row : rows) {
    auto p = reduce(row);
    if (p.is_zero()) continue;
    // keep echelon rows with distinct leading monomials
    for (auto& e : ech) {
      Rat c = e.coefficient(p.leading().first);
      if (c != 0) e -= p * (c / p.leading().second);
    }
    ech.push_back(p);
  }
  return reduce(f).is_zero();
}

TEST(GroebnerProperties, MembershipAgreesWithLinearAlgebra) {
  std::mt19937 rng(wres::test::seed() + 7);
  auto r = Ring::make({"x", "y"});
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Poly> gens{wres::test::random_poly(r, rng, 2, 2), wres::test::random_poly(r, rng, 2, 2)};
    if (gens[0].is_zero() || gens[1].is_zero()) continue;
    auto gb = buchberger(gens);
    auto a = wres::test::random_poly(r, rng, 2, 1), b = wres::test::random_poly(r, rng, 2, 1);
    Poly in = a * gens[0] + b * gens[1];
    EXPECT_TRUE(gb.contains(in));
    EXPECT_TRUE(span_member(gens, in, 4));
    auto out = wres::test::random_poly(r, rng, 3, 3);
    // bounded-degree span membership implies ideal membership
    if (span_member(gens, out, 3)) EXPECT_TRUE(gb.contains(out));
    if (!gb.contains(out)) EXPECT_FALSE(span_member(gens, out, 5));
    ++checked;
  }
  EXPECT_GT(checked, 150);
}

TEST(GroebnerProperties, PointsSatisfyGenerators) {
  std::mt19937 rng(wres::test::seed() + 8);
  auto r = Ring::make({"x", "y"});
  for (int i = 0; i < 200; ++i) {
    Rat a = Rat(static_cast<int>(rng() % 7) - 3), b = make_rat(static_cast<int>(rng() % 7) - 3, 1 + rng() % 2);
    Rat c = Rat(static_cast<int>(rng() % 7) - 3);
    auto xa = P(r, "x") - Poly::constant(r, a), xc = P(r, "x") - Poly::constant(r, c);
    auto yb = P(r, "y") - Poly::constant(r, b);
    std::vector<Poly> gens{xa * xc, yb * (P(r, "x") + P(r, "y")), yb * yb * xa};
    auto pts = rational_points_zero_dim(gens);
    ASSERT_TRUE(pts.zero_dimensional);
    for (const auto& p : pts.points) {
      for (const auto& g : gens) EXPECT_EQ(g.evaluate(p), 0);
    }
    std::vector<Rat> expect{a, b};
    EXPECT_NE(std::find(pts.points.begin(), pts.points.end(), expect), pts.points.end());
  }
}
