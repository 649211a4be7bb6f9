#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <functional>
#include <json.hpp>
#include <ostream>
#include <regex>
#include <sstream>

#include "wres/blowup.hpp"
#include "wres/error.hpp"
#include "wres/invariant.hpp"
#include "wres/resolve.hpp"

namespace wres::cli {

namespace {

using Json = nlohmann::ordered_json;

// Input errors that name the flag they came from.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Request {
  std::string ring_text;
  std::vector<std::string> ideal_text;
  std::string point_text;
  std::string mode = "embed";
  unsigned max_steps = 64;
  std::optional<unsigned> truncate;
  std::string hints_text;
  std::string format = "text";
  unsigned root_factor = 1;
  std::string params_text;
  std::string exponents_text;
};

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

RingPtr parse_ring(const std::string& text) {
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_']*");
  std::vector<std::string> names;
  for (auto& n : split(text, ',')) {
    if (!std::regex_match(n, ident)) throw InputError("--ring: invalid variable name '" + n + "'");
    names.push_back(n);
  }
  if (names.empty()) throw InputError("--ring: no variables declared");
  try {
    return Ring::make(std::move(names));
  } catch (const Error& e) {
    throw InputError(std::string("--ring: ") + e.what());
  }
}

Ideal parse_ideal(const RingPtr& ring, const std::vector<std::string>& texts) {
  std::vector<Poly> gens;
  for (const auto& t : texts) {
    for (const auto& g : split(t, ';')) {
      try {
        gens.push_back(Poly::parse(ring, g));
      } catch (const ParseError& e) {
        throw InputError("--ideal: " + std::string(e.what()) + " in '" + g + "'");
      }
    }
  }
  if (gens.empty()) throw InputError("--ideal: no generators given");
  return Ideal(std::move(gens));
}

std::vector<Rat> parse_point(const std::string& text, std::size_t n, const std::string& flag) {
  std::vector<Rat> p;
  for (const auto& c : split(text, ',')) {
    try {
      p.push_back(parse_rat(c));
    } catch (const Error&) {
      throw InputError(flag + ": invalid coordinate '" + c + "'");
    }
  }
  if (p.size() != n) {
    throw InputError(flag + ": expected " + std::to_string(n) + " coordinates, got " + std::to_string(p.size()));
  }
  return p;
}

std::string tuple(const std::vector<std::string>& xs) {
  std::string s = "(";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
  return s + ")";
}

template <class T>
std::vector<std::string> strings(const std::vector<T>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) {
    if constexpr (std::is_same_v<T, Rat>) {
      out.push_back(wres::to_string(x));
    } else if constexpr (std::is_same_v<T, Poly>) {
      out.push_back(x.to_string());
    } else {
      out.push_back(std::to_string(x));
    }
  }
  return out;
}

Json node_json(const ResolutionNode& n) {
  Json j;
  j["ideal"] = strings(n.ideal.generators());
  Json pts = Json::array();
  for (const auto& p : n.points) pts.push_back({{"point", strings(p.point)}, {"invariant", strings(p.inv.entries())}});
  j["point_invariants"] = pts;
  j["certified"] = n.certified;
  if (n.center) {
    j["center"] = {{"point", strings(n.center->point)},
                   {"params", n.center->parameters},
                   {"exponents", strings(n.center->exponents)},
                   {"weights", strings(n.center->weights)},
                   {"l", wres::to_string(n.center->ell)}};
  } else {
    j["center"] = nullptr;
  }
  Json charts = Json::array();
  for (const auto& c : n.children) {
    charts.push_back({{"substitution", c.substitution},
                      {"group_order", c.group_order},
                      {"action_weights", c.action_weights},
                      {"exceptional", c.exceptional ? c.exceptional->to_string() : ""},
                      {"child", node_json(c)}});
  }
  j["charts"] = charts;
  j["status"] = to_string(n.status);
  if (!n.note.empty()) j["note"] = n.note;
  return j;
}

void print_node(std::ostream& out, const ResolutionNode& n, const std::string& name, int depth) {
  const std::string pad(2 * depth, ' ');
  out << pad << "node " << name;
  if (n.chart_index) out << ": " << n.substitution;
  out << "\n";
  if (n.chart_index) {
    out << pad << "  group order " << n.group_order << ", action weights " << tuple(strings(n.action_weights)) << "\n";
  }
  out << pad << "  ideal " << n.ideal.to_string() << "\n";
  if (!n.points.empty()) {
    out << pad << "  maxinv " << n.points.front().inv << " at " << tuple(strings(n.points.front().point));
    if (!n.certified) out << ", not certified";
    out << "\n";
  }
  if (n.center) out << pad << "  reduced center " << n.center->text << "\n";
  out << pad << "  status " << to_string(n.status);
  if (!n.note.empty()) out << " (" << n.note << ")";
  out << "\n";
  for (std::size_t i = 0; i < n.children.size(); ++i) {
    print_node(out, n.children[i], name + "." + std::to_string(i), depth + 1);
  }
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

void print_dot(std::ostream& out, const ResolutionNode& root) {
  out << "digraph resolution {\n  node [shape=box];\n";
  std::size_t next = 0;
  std::function<std::size_t(const ResolutionNode&)> emit = [&](const ResolutionNode& n) {
    const std::size_t id = next++;
    std::string label = dot_escape(n.ideal.to_string());
    if (!n.points.empty()) label += "\\nmaxinv " + n.points.front().inv.to_string();
    label += "\\n" + to_string(n.status);
    out << "  n" << id << " [label=\"" << label << "\"];\n";
    for (const auto& c : n.children) {
      const std::size_t child = emit(c);
      out << "  n" << id << " -> n" << child << " [label=\"" << dot_escape(c.substitution) << "\"];\n";
    }
    return id;
  };
  emit(root);
  out << "}\n";
}

void emit_tree(std::ostream& out, const Request& rq, const RingPtr& ring, const std::string& mode,
               const ResolutionNode& root) {
  if (rq.format == "json") {
    Json j;
    j["ring"] = ring->names();
    j["mode"] = mode;
    j["rounds"] = rounds(root);
    j["tree"] = node_json(root);
    out << j.dump(2) << "\n";
  } else if (rq.format == "dot") {
    print_dot(out, root);
  } else {
    out << "mode " << mode << "\n";
    print_node(out, root, "root", 0);
    out << "rounds = " << rounds(root) << "\n";
  }
}

void reject_dot(const Request& rq, const std::string& cmd) {
  if (rq.format == "dot") throw InputError("--format: dot output is not available for '" + cmd + "'");
}

struct Inputs {
  RingPtr ring;
  Ideal ideal;
  std::vector<Rat> point;
  ResolveConfig cfg;
};

Inputs load(const Request& rq) {
  RingPtr ring = parse_ring(rq.ring_text);
  Ideal ideal = parse_ideal(ring, rq.ideal_text);
  std::vector<Rat> point(ring->size(), Rat(0));
  if (!rq.point_text.empty()) point = parse_point(rq.point_text, ring->size(), "--point");
  ResolveConfig cfg;
  cfg.truncation = rq.truncate;
  if (rq.max_steps == 0) throw InputError("--max-steps: must be at least 1");
  cfg.max_steps = rq.max_steps;
  if (rq.root_factor == 0) throw InputError("--root-factor: must be at least 1");
  cfg.root_factor = rq.root_factor;
  cfg.mode = rq.mode == "principalize" ? Mode::Principalize : Mode::Embed;
  if (!rq.hints_text.empty()) {
    for (const auto& h : split(rq.hints_text, ';')) cfg.hints.push_back(parse_point(h, ring->size(), "--hints"));
  }
  return {ring, ideal, point, cfg};
}

InvariantResult point_invariant(const Inputs& in) {
  const auto& gens = in.ideal.generators();
  if (std::any_of(gens.begin(), gens.end(), [&](const Poly& g) { return g.evaluate(in.point) != 0; })) {
    throw InputError("--point: the ideal is the unit ideal at this point");
  }
  InvariantOptions opts;
  opts.truncation = in.cfg.truncation;
  return invariant_at(in.ideal, in.point, opts);
}

Json center_json(const ReducedCenter& rc) {
  std::vector<std::string> params;
  for (const auto& p : rc.flag.parameters) params.push_back(p.to_string());
  return {{"point", strings(rc.flag.base_point)},
          {"params", params},
          {"exponents", strings(rc.exponents())},
          {"weights", strings(rc.weights)},
          {"l", wres::to_string(rc.ell)},
          {"cocharacter", strings(rc.cocharacter)},
          {"text", rc.to_string()}};
}

int cmd_invariant(const Request& rq, std::ostream& out) {
  reject_dot(rq, "invariant");
  const Inputs in = load(rq);
  const auto res = point_invariant(in);
  if (rq.format == "json") {
    std::vector<std::string> flag;
    for (const auto& p : res.flag.parameters) flag.push_back(p.to_string());
    Json j{{"ring", in.ring->names()},
           {"point", strings(in.point)},
           {"invariant", strings(res.inv.entries())},
           {"flag", flag},
           {"exact", res.flag.exact()}};
    j["truncation"] = res.truncation ? Json(*res.truncation) : Json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << "inv = " << res.inv << "\n";
    out << "flag = " << res.flag.to_string() << "\n";
    out << "point = " << tuple(strings(in.point)) << "\n";
    if (res.truncation) out << "truncation = " << *res.truncation << "\n";
  }
  return kOk;
}

int cmd_center(const Request& rq, std::ostream& out) {
  reject_dot(rq, "center");
  const Inputs in = load(rq);
  const auto res = point_invariant(in);
  const Center c = center_from(res.inv, res.flag);
  const ReducedCenter rc = reduce(c);
  if (rq.format == "json") {
    Json j{{"ring", in.ring->names()}, {"invariant", strings(res.inv.entries())}, {"center", center_json(rc)}};
    out << j.dump(2) << "\n";
  } else {
    out << "inv = " << res.inv << "\n";
    out << "center " << c.to_string() << "\n";
    out << "reduced center " << rc.to_string() << "\n";
    out << "weights = " << tuple(strings(rc.weights)) << "\n";
    out << "ell = " << wres::to_string(rc.ell) << "\n";
    out << "cocharacter = " << tuple(strings(rc.cocharacter)) << "\n";
  }
  return kOk;
}

int cmd_blowup(const Request& rq, std::ostream& out) {
  const Inputs in = load(rq);
  const auto res = point_invariant(in);
  const Center c = center_from(res.inv, res.flag);
  if (!c.flag.exact() && !(c.flag.size() == 1 && rq.root_factor == 1)) {
    throw BudgetExceeded("flag automorphism is only known up to a jet");
  }
  const ReducedCenter rc = reduce(c);
  BlowupOptions bopts;
  bopts.root_factor = rq.root_factor;
  const Blowup b = blowup_charts(rc, bopts);
  const Ideal based = in.ideal.with_base_point(in.point);
  const bool embed = in.cfg.mode == Mode::Embed;
  if (embed && prune_generators(in.ideal.generators()).size() != 1) {
    throw InputError("--mode: embed is restricted to hypersurfaces (one generator)");
  }

  ResolutionNode root{.ideal = Ideal(in.ideal.generators())};
  root.points.push_back({in.point, res.inv});
  root.center = CenterSummary{rc.flag.base_point, {}, rc.exponents(), rc.weights, rc.ell, rc.to_string()};
  for (const auto& p : rc.flag.parameters) root.center->parameters.push_back(p.to_string());
  std::vector<Ideal> totals;
  for (std::size_t i = 0; i < b.charts.size(); ++i) {
    const auto& ch = b.charts[i];
    totals.push_back(total_transform(based, ch));
    root.children.push_back(ResolutionNode{.chart_index = i,
                                           .substitution = ch.to_string(),
                                           .group_order = ch.group_order,
                                           .action_weights = ch.action_weights,
                                           .exceptional = ch.exceptional,
                                           .ideal = embed ? proper_transform(based, ch)
                                                          : weak_transform(based, ch, b.multiplicity)});
  }

  if (rq.format == "dot") {
    print_dot(out, root);
  } else if (rq.format == "json") {
    Json charts = Json::array();
    for (std::size_t i = 0; i < b.charts.size(); ++i) {
      const auto& ch = root.children[i];
      charts.push_back({{"substitution", ch.substitution},
                        {"group_order", ch.group_order},
                        {"action_weights", ch.action_weights},
                        {"exceptional", ch.exceptional->to_string()},
                        {"total_transform", strings(totals[i].generators())},
                        {embed ? "proper_transform" : "weak_transform", strings(ch.ideal.generators())}});
    }
    Json j{{"ring", in.ring->names()},
           {"mode", to_string(in.cfg.mode)},
           {"invariant", strings(res.inv.entries())},
           {"center", center_json(rc)},
           {"root_factor", rq.root_factor},
           {"multiplicity", b.multiplicity},
           {"charts", charts}};
    out << j.dump(2) << "\n";
  } else {
    out << "inv = " << res.inv << "\n";
    out << "reduced center " << rc.to_string() << "\n";
    out << "exceptional multiplicity " << b.multiplicity << "\n";
    for (std::size_t i = 0; i < b.charts.size(); ++i) {
      const auto& ch = root.children[i];
      out << "chart " << i << ": " << ch.substitution << "\n";
      out << "  group order " << ch.group_order << ", action weights " << tuple(strings(ch.action_weights)) << "\n";
      out << "  exceptional " << ch.exceptional->to_string() << "\n";
      out << "  total transform " << totals[i].to_string() << "\n";
      out << (embed ? "  proper transform " : "  weak transform ") << ch.ideal.to_string() << "\n";
    }
  }
  return kOk;
}

int cmd_tree(const Request& rq, std::ostream& out, Mode mode) {
  Inputs in = load(rq);
  in.cfg.mode = mode;
  if (mode == Mode::Embed && prune_generators(in.ideal.generators()).size() != 1) {
    throw InputError("--ideal: embedded resolution is restricted to hypersurfaces (one generator)");
  }
  const auto tree = resolve(in.ideal, in.cfg);
  emit_tree(out, rq, in.ring, to_string(mode), tree);
  return tree.status == NodeStatus::BudgetExceeded ? kBudgetExceeded : kOk;
}

int cmd_admissible(const Request& rq, std::ostream& out) {
  reject_dot(rq, "check-admissible");
  const Inputs in = load(rq);
  Center c = [&] {
    if (rq.params_text.empty()) {
      if (!rq.exponents_text.empty()) throw InputError("--exponents: given without --params");
      const auto res = point_invariant(in);
      return center_from(res.inv, res.flag);
    }
    std::vector<Poly> params;
    std::vector<std::size_t> pivots;
    for (const auto& t : split(rq.params_text, ';')) {
      Poly p = Poly::parse(in.ring, t).translate(in.point);
      if (p.constant_term() != 0) throw InputError("--params: '" + t + "' does not vanish at the point");
      const auto lin = p.linear_part();
      std::optional<std::size_t> pivot;
      for (std::size_t v = 0; v < lin.size() && !pivot; ++v) {
        if (lin[v] != 0 && std::find(pivots.begin(), pivots.end(), v) == pivots.end()) pivot = v;
      }
      if (!pivot) throw InputError("--params: '" + t + "' is not a new regular parameter");
      params.push_back(std::move(p));
      pivots.push_back(*pivot);
    }
    const auto exps = split(rq.exponents_text, ',');
    if (exps.size() != params.size()) throw InputError("--exponents: expected one exponent per parameter");
    std::vector<Rat> e;
    for (const auto& x : exps) {
      try {
        e.push_back(parse_rat(x));
      } catch (const Error&) {
        throw InputError("--exponents: invalid exponent '" + x + "'");
      }
      if (e.back() <= 0) throw InputError("--exponents: exponents must be positive");
    }
    return Center{make_flag(in.ring, in.point, params, pivots, in.cfg.truncation.value_or(32)), e};
  }();
  const Verdict v = admissibility(c, in.ideal.with_base_point(in.point));
  if (rq.format == "json") {
    Json j{{"ring", in.ring->names()}, {"center", c.to_string()}, {"admissible", to_string(v)}};
    out << j.dump(2) << "\n";
  } else {
    out << "center " << c.to_string() << "\n";
    out << "admissible = " << to_string(v) << "\n";
  }
  return v == Verdict::Indeterminate ? kBudgetExceeded : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functorial embedded resolution by weighted blowups"};
  app.require_subcommand(1);
  Request rq;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--ring", rq.ring_text, "Comma-separated variable names")->required();
    sub->add_option("--ideal", rq.ideal_text, "Generators, separated by ';' or repeated")->required();
    sub->add_option("--point", rq.point_text, "Rational base point, comma-separated");
    sub->add_option("--mode", rq.mode, "principalize or embed")->check(CLI::IsMember({"principalize", "embed"}));
    sub->add_option("--max-steps", rq.max_steps, "Blowup budget for the whole tree");
    sub->add_option("--truncate", rq.truncate, "Jet truncation bound");
    sub->add_option("--hints", rq.hints_text, "Extra candidate points p1;p2");
    sub->add_option("--format", rq.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
    sub->add_option("--root-factor", rq.root_factor, "Root stack factor c");
  };
  auto* inv = app.add_subcommand("invariant", "Invariant and maximal contact flag at a point");
  auto* cen = app.add_subcommand("center", "Center, reduced weights and cocharacter");
  auto* blw = app.add_subcommand("blowup", "Charts of the weighted blowup of the center");
  auto* pri = app.add_subcommand("principalize", "Iterate blowups until the weak transform is (1)");
  auto* res = app.add_subcommand("resolve", "Full resolution tree");
  auto* adm = app.add_subcommand("check-admissible", "Admissibility of a center for the ideal");
  for (auto* s : {inv, cen, blw, pri, res, adm}) common(s);
  adm->add_option("--params", rq.params_text, "Center parameters separated by ';'");
  adm->add_option("--exponents", rq.exponents_text, "Center exponents, comma-separated");

  if (!args.empty() && args.front().rfind("-", 0) != 0 && !app.get_subcommand_no_throw(args.front())) {
    err << "error: unknown subcommand '" << args.front() << "'\n";
    return kInputError;
  }
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*inv) return cmd_invariant(rq, out);
    if (*cen) return cmd_center(rq, out);
    if (*blw) return cmd_blowup(rq, out);
    if (*pri) return cmd_tree(rq, out, Mode::Principalize);
    if (*res) return cmd_tree(rq, out, rq.mode == "principalize" ? Mode::Principalize : Mode::Embed);
    if (*adm) return cmd_admissible(rq, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const TruncationTooSmall& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudgetExceeded;
  } catch (const AssertionFailure& e) {
    err << "internal error: " << e.what() << "\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace wres::cli
