#include "wres/blowup.hpp"

#include <algorithm>

namespace wres {

std::string Chart::to_string() const { return substitution.to_string(); }

namespace {

std::vector<Rat> negated(const std::vector<Rat>& p) {
  std::vector<Rat> out;
  for (const auto& x : p) out.push_back(-x);
  return out;
}

Chart divisor_chart(const ReducedCenter& rc) {
  const auto& flag = rc.flag;
  const auto& g = flag.parameters[0];
  std::optional<std::size_t> var;
  if (g == Poly::variable(flag.ring, flag.pivots[0])) var = flag.pivots[0];
  return Chart{.index = 0,
               .parent = flag.ring,
               .ring = flag.ring,
               .substitution = PolyMap::identity(flag.ring),
               .exceptional = g.translate(negated(flag.base_point)),
               .exceptional_var = var,
               .group_order = 1,
               .action_weights = std::vector<std::uint64_t>(flag.ring->size(), 0)};
}

}  // namespace

Blowup blowup_charts(const ReducedCenter& rc, BlowupOptions opts) {
  const auto& flag = rc.flag;
  const std::size_t k = flag.size();
  const std::size_t n = flag.ring->size();
  const unsigned c = opts.root_factor;
  if (c == 0) throw Error("root factor must be at least 1");
  if (k == 0) throw Error("cannot blow up an empty center");
  const Rat m = rc.ell * c;
  if (m.get_den() != 1) throw Error("exceptional multiplicity ell*c is not an integer");

  Blowup b{rc, c, {}, m.get_num().get_ui()};
  if (k == 1 && c == 1 && opts.identity_for_divisors) {
    b.charts.push_back(divisor_chart(rc));
    return b;
  }
  if (!flag.exact() && !opts.allow_inexact) throw Error("flag automorphism is only known up to a jet");

  const std::string exc = opts.depth <= 1 ? "u" : "u" + std::to_string(opts.depth);
  const auto& names = flag.ring->names();
  std::vector<bool> in_flag(n, false);
  for (auto v : flag.pivots) in_flag[v] = true;

  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t vi = flag.pivots[i];
    std::vector<std::string> chart_names(n);
    std::vector<std::string> taken;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_flag[v]) {
        chart_names[v] = names[v];
        taken.push_back(names[v]);
      }
    }
    chart_names[vi] = fresh_name(exc, taken);
    taken.push_back(chart_names[vi]);
    for (std::size_t j = 0; j < k; ++j) {
      const auto vj = flag.pivots[j];
      if (j == i) continue;
      chart_names[vj] = fresh_name(names[vj] + "'", taken);
      taken.push_back(chart_names[vj]);
    }
    const RingPtr chart_ring = Ring::make(chart_names);

    const Poly u = Poly::variable(chart_ring, vi);
    std::vector<Poly> images;
    for (std::size_t v = 0; v < n; ++v) images.push_back(Poly::variable(chart_ring, v));
    for (std::size_t j = 0; j < k; ++j) {
      const auto vj = flag.pivots[j];
      const Poly uw = u.pow(static_cast<unsigned>(c * rc.weights[j]));
      images[vj] = (j == i) ? uw : uw * Poly::variable(chart_ring, vj);
    }
    const PolyMap to_chart(flag.psi.target(), chart_ring, std::move(images));

    std::vector<Poly> subst;
    for (std::size_t v = 0; v < n; ++v) {
      subst.push_back(flag.psi.image(v).substitute(to_chart) + Poly::constant(chart_ring, flag.base_point[v]));
    }

    const std::uint64_t order = static_cast<std::uint64_t>(c) * rc.weights[i];
    std::vector<std::uint64_t> action(n, 0);
    for (std::size_t j = 0; j < k; ++j) {
      const auto vj = flag.pivots[j];
      const std::uint64_t wj = (static_cast<std::uint64_t>(c) * rc.weights[j]) % order;
      action[vj] = (j == i) ? 1 % order : (order - wj) % order;
    }
    Chart ch{.index = i,
             .parent = flag.ring,
             .ring = chart_ring,
             .substitution = PolyMap(flag.ring, chart_ring, std::move(subst), flag.exact()),
             .exceptional = u,
             .exceptional_var = vi,
             .group_order = order,
             .action_weights = std::move(action)};
    b.charts.push_back(std::move(ch));
  }
  return b;
}

namespace {

std::vector<Poly> pulled_back(const Ideal& I, const Chart& ch) {
  if (!same_ring(I.ring(), ch.parent)) throw RingMismatch("ideal does not live on the chart's parent");
  std::vector<Poly> out;
  for (const auto& g : I.generators()) out.push_back(g.substitute(ch.substitution));
  return out;
}

std::vector<Rat> chart_point(const Ideal& I, const Chart& ch) {
  // The identity chart keeps the base point; otherwise the chart origin lies
  // over the center.
  if (ch.ring == ch.parent) return I.base_point();
  return std::vector<Rat>(ch.ring->size(), Rat(0));
}

// Divides by the exceptional equation once; nullopt when it does not divide.
std::optional<Poly> divide_once(const Poly& f, const Chart& ch) {
  if (f.is_zero()) return f;
  if (ch.exceptional_var) {
    if (f.var_valuation(*ch.exceptional_var) == 0) return std::nullopt;
    return f.divide_by_var_power(*ch.exceptional_var, 1);
  }
  return f.exact_divide(ch.exceptional);
}

}  // namespace

Ideal total_transform(const Ideal& I, const Chart& ch) {
  return Ideal(prune_generators(pulled_back(I, ch)), chart_point(I, ch));
}

Ideal weak_transform(const Ideal& I, const Chart& ch, std::uint64_t m) {
  std::vector<Poly> out;
  for (auto& g : pulled_back(I, ch)) {
    if (g.is_zero()) {
      out.push_back(g);
      continue;
    }
    if (ch.exceptional_var) {
      if (g.var_valuation(*ch.exceptional_var) < m) {
        throw AssertionFailure("weak transform: generator not divisible by the exceptional power (center not admissible)");
      }
      out.push_back(g.divide_by_var_power(*ch.exceptional_var, m));
      continue;
    }
    for (std::uint64_t i = 0; i < m; ++i) {
      auto q = divide_once(g, ch);
      if (!q) throw AssertionFailure("weak transform: generator not divisible by the exceptional power (center not admissible)");
      g = std::move(*q);
    }
    out.push_back(std::move(g));
  }
  return Ideal(prune_generators(std::move(out)), chart_point(I, ch));
}

Ideal proper_transform(const Ideal& I, const Chart& ch) {
  std::vector<Poly> out;
  for (auto& g : pulled_back(I, ch)) {
    if (!g.is_zero() && ch.exceptional_var) {
      g = g.divide_by_var_power(*ch.exceptional_var, g.var_valuation(*ch.exceptional_var));
    } else if (!g.is_zero()) {
      while (auto q = divide_once(g, ch)) g = std::move(*q);
    }
    out.push_back(std::move(g));
  }
  return Ideal(prune_generators(std::move(out)), chart_point(I, ch));
}

bool root_stack_check(const ReducedCenter& rc, unsigned c) {
  BlowupOptions base;
  base.identity_for_divisors = false;
  base.allow_inexact = true;
  BlowupOptions rooted = base;
  rooted.root_factor = c;
  const auto b1 = blowup_charts(rc, base);
  const auto bc = blowup_charts(rc, rooted);
  if (b1.charts.size() != bc.charts.size()) return false;
  for (std::size_t i = 0; i < b1.charts.size(); ++i) {
    const auto& ch1 = b1.charts[i];
    const auto& chc = bc.charts[i];
    if (!(*ch1.ring == *chc.ring)) return false;
    std::vector<Poly> images;
    for (std::size_t v = 0; v < ch1.ring->size(); ++v) images.push_back(Poly::variable(chc.ring, v));
    images[*ch1.exceptional_var] = Poly::variable(chc.ring, *ch1.exceptional_var).pow(c);
    const PolyMap root(ch1.ring, chc.ring, std::move(images));
    if (!(ch1.substitution.then(root) == chc.substitution)) return false;
    if (chc.group_order != ch1.group_order * c) return false;
  }
  return true;
}

std::optional<std::uint64_t> semi_invariant_weight(const Poly& f, const Chart& ch) {
  std::optional<std::uint64_t> weight;
  for (const auto& [e, coeff] : f.terms()) {
    std::uint64_t w = 0;
    for (std::size_t v = 0; v < e.size(); ++v) w = (w + e[v] * ch.action_weights[v]) % ch.group_order;
    if (weight && *weight != w) return std::nullopt;
    weight = w;
  }
  return weight.value_or(0);
}

std::vector<std::uint64_t> group_orders(const Blowup& b) {
  std::vector<std::uint64_t> out;
  for (const auto& ch : b.charts) out.push_back(ch.group_order);
  return out;
}

}  // namespace wres
