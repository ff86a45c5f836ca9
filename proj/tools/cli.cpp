// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The blue authors

#include "cli.hpp"

#include <CLI11.hpp>
#include <cctype>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "blue/catalog.hpp"
#include "blue/congruence.hpp"
#include "blue/error.hpp"
#include "blue/scheme.hpp"

namespace blue::cli {

namespace {

using Json = nlohmann::json;

enum class Format { Text, Json, Dot };

struct Config {
  Budget budget;
  Format format = Format::Text;
  std::string out_path;
};

// A report and the decision that sets the exit code.
struct Report {
  std::string text;
  Decision status = Decision::holds();
};

std::string sanitized(const std::string& s) {
  std::string out;
  for (char c : s) out += std::isalnum(static_cast<unsigned char>(c)) || c == '_' ? c : '_';
  if (out.empty() || std::isdigit(static_cast<unsigned char>(out[0]))) out = "B" + out;
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) {
    auto b = cur.find_first_not_of(' '), e = cur.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(cur.substr(b, e - b + 1));
  }
  return out;
}

std::string join(const std::vector<std::string>& xs, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

BlueprintPtr builtin(const std::string& name) {
  static const std::map<std::string, BlueprintPtr (*)()> table{
      {"F1", catalog::f1},
      {"B1", catalog::boolean},
      {"F2", catalog::field_two},
      {"E0", catalog::idempotent_with_zero},
      {"E", catalog::idempotent},
      {"B", catalog::two_chart_line},
  };
  if (auto it = table.find(name); it != table.end()) return it->second();
  if (name.rfind("F1^", 0) == 0) return cyclotomic(static_cast<unsigned>(std::stoul(name.substr(3))));
  throw Error(ErrorCode::TypeMismatch, "no built-in blueprint @" + name);
}

// Everything named on the command line: declarations from files and
// built-ins, in order, plus the morphisms of the files.
struct Workspace {
  std::vector<std::string> order;
  std::map<std::string, BlueprintPtr> blueprints;
  std::vector<MorphismDeclaration> morphisms;
  std::vector<std::string> names;  // operands that are neither files nor built-ins
  std::vector<std::string> equations;

  BlueprintPtr get(const std::string& name) const {
    auto it = blueprints.find(name);
    if (it == blueprints.end()) throw Error(ErrorCode::TypeMismatch, "unknown blueprint " + name);
    return it->second;
  }
  // The k-th named blueprint, or the k-th loaded one when no names were given.
  BlueprintPtr pick(std::size_t k) const {
    if (k < names.size()) return get(names[k]);
    if (!names.empty() || k >= order.size())
      throw Error(ErrorCode::TypeMismatch, "command needs " + std::to_string(k + 1) + " blueprint(s)");
    return get(order[k]);
  }
  Morphism morphism(const std::string& name) const {
    for (const auto& m : morphisms)
      if (m.name == name) return build(m, blueprints);
    throw Error(ErrorCode::TypeMismatch, "unknown morphism " + name);
  }
};

Workspace load(const std::vector<std::string>& operands, const Budget& budget) {
  Workspace w;
  auto add = [&](const std::string& name, BlueprintPtr b) {
    if (w.blueprints.count(name)) throw Error(ErrorCode::NameClash, "blueprint " + name + " declared twice");
    w.order.push_back(name);
    w.blueprints[name] = std::move(b);
  };
  for (const auto& op : operands) {
    if (op.size() > 4 && op.compare(op.size() - 4, 4, ".blu") == 0) {
      auto file = parse(read_file(op));
      for (const auto& d : file.blueprints) add(d.name, build(d, budget));
      w.morphisms.insert(w.morphisms.end(), file.morphisms.begin(), file.morphisms.end());
    } else if (!op.empty() && op[0] == '@') {
      add(op, builtin(op.substr(1)));
    } else if (op.find('=') != std::string::npos) {
      w.equations.push_back(op);
    } else {
      w.names.push_back(op);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------
// Rendering

std::vector<std::string> rendered(const std::vector<Monomial>& ms, const Blueprint& b) {
  std::vector<std::string> out;
  for (const auto& m : ms) out.push_back(b.render(m));
  return out;
}

Json blueprint_json(const BlueprintPtr& b) {
  auto d = declaration_of(b);
  const auto& names = d.presentation.generators;
  Json j;
  j["name"] = d.name;
  j["kind"] = to_string(b->kind());
  j["generators"] = names;
  j["zero"] = d.presentation.has_zero;
  j["monoid"] = Json::array();
  for (const auto& [l, r] : d.presentation.relations) j["monoid"].push_back({render(l, names), render(r, names)});
  j["addition"] = Json::array();
  for (const auto& [l, r] : d.addition) j["addition"].push_back({render(l, names), render(r, names)});
  j["approximate"] = b->approximate();
  return j;
}

std::string blueprint_text(const BlueprintPtr& b) {
  std::string out = print(declaration_of(b));
  if (b->approximate()) out += "# relations found by bounded search\n";
  return out;
}

std::string decision_text(const Decision& d) {
  std::string out = to_string(d.verdict);
  if (!d.note.empty()) out += " (" + d.note + ")";
  return out;
}

Report emit(const Config& cfg, const std::string& text, const Json& json, Decision status = Decision::holds()) {
  if (cfg.format == Format::Dot) throw Error(ErrorCode::UnsupportedFormat, "dot output is available for spec only");
  return {cfg.format == Format::Json ? json.dump(2) + "\n" : text, std::move(status)};
}

Report closure_report(const Config& cfg, const Closure& c, const std::string& heading) {
  std::string text = heading + "\n" + blueprint_text(c.result);
  if (!c.status.is_holds()) text += "status: " + decision_text(c.status) + "\n";
  Json j{{"result", blueprint_json(c.result)}, {"status", to_string(c.status.verdict)}};
  return emit(cfg, text, j, c.status.is_fails() ? Decision::unknown(c.status.note) : c.status);
}

std::vector<Monomial> monomials(const Blueprint& b, const std::string& list) {
  std::vector<Monomial> out;
  for (const auto& t : split(list, ',')) out.push_back(parse_monomial(b, t));
  return out;
}

// ---------------------------------------------------------------------------
// Commands

Report cmd_check(const Config& cfg, const Workspace& w) {
  auto b = w.pick(0);
  auto c = classify(b);
  std::vector<std::pair<std::string, Decision>> rows{
      {"proper", c.proper},           {"with_zero", c.with_zero},
      {"with_inverses", c.with_inverses}, {"cancellative", c.cancellative},
      {"monoid_with_zero", c.monoid_with_zero}, {"blue_field", c.is_blue_field},
  };
  std::string text = blueprint_text(b);
  Json j{{"blueprint", blueprint_json(b)}};
  for (const auto& [k, d] : rows) {
    text += k + ": " + to_string(d.verdict) + "\n";
    j[k] = to_string(d.verdict);
  }
  text += "units: " + join(rendered(c.units, *b), ", ") + "\n";
  text += "integral: " + join(rendered(c.integral_elements, *b), ", ") + "\n";
  text += std::string("scope: ") + (c.exact ? "whole carrier" : "sample up to the degree bound") + "\n";
  j["units"] = rendered(c.units, *b);
  j["integral"] = rendered(c.integral_elements, *b);
  j["exact"] = c.exact;
  return emit(cfg, text, j);
}

Report cmd_spec(const Config& cfg, const Workspace& w) {
  auto x = spec(w.pick(0));
  Report r{x.text(), x.complete};
  if (cfg.format == Format::Json) r.text = x.json();
  if (cfg.format == Format::Dot) r.text = x.dot();
  return r;
}

Report cmd_gamma(const Config& cfg, const Workspace& w) {
  auto b = w.pick(0);
  auto g = globalization(b);
  auto global = is_global(b);
  std::string text = blueprint_text(g.result);
  text += "new sections: " + (g.new_sections.empty() ? std::string("none") : join(g.new_sections, ", ")) + "\n";
  auto x = spec(b);
  for (const auto& s : g.new_sections) {
    auto m = parse_monomial(*g.result, s);
    for (std::size_t k = 0; k < g.closed.size(); ++k) {
      const auto& stalk = *g.stalks[k];
      text += "  " + s + " at point " + std::to_string(k + 1) + ": " + stalk.render(g.value_at(x, m, g.closed[k])) + "\n";
    }
  }
  text += "is_global: " + decision_text(global) + "\n";
  if (!g.exact.is_holds()) text += "sections: " + decision_text(g.exact) + "\n";
  Json j{{"gamma", blueprint_json(g.result)}, {"new_sections", g.new_sections},
         {"is_global", to_string(global.verdict)}, {"exact", g.exact.is_holds()}};
  return emit(cfg, text, j, g.exact.is_holds() ? Decision::holds() : Decision::unknown(g.exact.note));
}

Report cmd_holds(const Config& cfg, const Workspace& w) {
  auto b = w.pick(0);
  if (w.equations.size() != 1) throw Error(ErrorCode::ParseError, "holds needs one relation \"LHS = RHS\"");
  const auto& eq = w.equations[0];
  auto at = eq.find('=');
  auto lhs = parse_sum(*b, eq.substr(0, at)), rhs = parse_sum(*b, eq.substr(at + 1));
  auto d = b->holds(lhs, rhs);
  std::string text = b->render(lhs) + " = " + b->render(rhs) + ": " + decision_text(d) + "\n";
  Json j{{"lhs", b->render(lhs)}, {"rhs", b->render(rhs)}, {"verdict", to_string(d.verdict)}};
  return emit(cfg, text, j, d);
}

Report cmd_localize(const Config& cfg, const Workspace& w, const std::string& invert) {
  auto b = w.pick(0);
  auto elems = monomials(*b, invert);
  return closure_report(cfg, localize(b, elems), "localization of " + b->name() + " at " + join(rendered(elems, *b), ", "));
}

Report cmd_quotient(const Config& cfg, const Workspace& w, const std::string& ideal, const std::string& pairs) {
  auto b = w.pick(0);
  if (ideal.empty() == pairs.empty()) throw Error(ErrorCode::ParseError, "quotient needs exactly one of --ideal, --pairs");
  Congruence c;
  std::string heading;
  if (!ideal.empty()) {
    auto i = ideal_generated(b, monomials(*b, ideal));
    c = congruence_of_ideal(i);
    heading = "quotient of " + b->name() + " by the ideal " + i.label();
  } else {
    std::vector<MonomialPair> ps;
    for (const auto& p : split(pairs, ',')) {
      auto sides = split(p, '~');
      if (sides.size() != 2) throw Error(ErrorCode::ParseError, "pair '" + p + "' is not of the form a~b");
      ps.emplace_back(parse_monomial(*b, sides[0]), parse_monomial(*b, sides[1]));
    }
    c = congruence_generated(b, ps);
    heading = "quotient of " + b->name() + " by " + c.describe();
  }
  return closure_report(cfg, quotient_by(c), heading);
}

Report cmd_zext(const Config& cfg, const Workspace& w, bool rank) {
  auto r = base_extend_Z(w.pick(0));
  if (!rank) return emit(cfg, r.text() + "\n", Json::parse(r.json()));
  auto n = z_rank(r);
  if (!n) return emit(cfg, "rank: unknown (infinite carrier)\n", Json{{"rank", nullptr}}, Decision::unknown("infinite carrier"));
  return emit(cfg, "rank " + std::to_string(*n) + "\n", Json{{"rank", *n}});
}

Report cmd_next(const Config& cfg, const Workspace& w, bool semiring) {
  auto b = w.pick(0);
  auto r = base_extend_N(b);
  if (!semiring) return emit(cfg, r.text() + "\n", Json::parse(r.json()));
  auto d = semiring_reconstructs(b);
  return emit(cfg, r.text() + "\nsemiring reconstructs: " + decision_text(d) + "\n",
              Json{{"presentation", Json::parse(r.json())}, {"reconstructs", to_string(d.verdict)}}, d);
}

Report cmd_tensor(const Config& cfg, const Workspace& w, const std::string& over, const std::string& maps) {
  auto left = w.pick(0), right = w.pick(1);
  Morphism f, g;
  if (!maps.empty()) {
    auto ms = split(maps, ',');
    if (ms.size() != 2) throw Error(ErrorCode::ParseError, "--maps needs two morphism names");
    f = w.morphism(ms[0]);
    g = w.morphism(ms[1]);
  } else {
    if (over.empty()) throw Error(ErrorCode::ParseError, "tensor needs --over or --maps");
    auto base = w.get(over);
    auto find = [&](const BlueprintPtr& target) {
      std::optional<Morphism> found;
      for (const auto& m : w.morphisms) {
        if (m.source != over) continue;
        auto candidate = build(m, w.blueprints);
        if (candidate.target != target) continue;
        if (found) throw Error(ErrorCode::TypeMismatch, "several morphisms from " + over + "; use --maps");
        found = candidate;
      }
      if (!found) {
        // The unique map out of the initial blueprints.
        if (base->arity() != 0) throw Error(ErrorCode::TypeMismatch, "no morphism from " + over + " declared");
        found = Morphism{base, target, {}, std::nullopt};
      }
      return *found;
    };
    f = find(left);
    g = find(right);
  }
  if (f.target != left || g.target != right) throw Error(ErrorCode::TypeMismatch, "morphism targets do not match");
  if (!over.empty() && f.source != w.get(over)) throw Error(ErrorCode::SourceMismatch, "maps do not start at " + over);
  auto t = tensor(f, g);
  return emit(cfg, "tensor product over " + f.source->name() + "\n" + blueprint_text(t.result),
              Json{{"result", blueprint_json(t.result)}});
}

Report cmd_closure(const Config& cfg, const Workspace& w, const std::string& which) {
  auto b = w.pick(0);
  if (which == "proper") return closure_report(cfg, proper_closure(b), "proper closure of " + b->name());
  if (which == "inv") return closure_report(cfg, inverse_closure(b), "closure with inverses of " + b->name());
  if (which == "zero") return closure_report(cfg, zero_closure(b), "closure with zero of " + b->name());
  return closure_report(cfg, cancellative_closure(b), "cancellative closure of " + b->name());
}

Report cmd_verify_global(const Config& cfg, const Workspace& w) {
  auto b = w.pick(0);
  auto g = globalization(b);
  auto global = is_global(b);
  auto r = verify_spec_iso(b);
  std::string sigma = global.is_holds()         ? "isomorphism"
                      : !g.new_sections.empty() ? "not surjective"
                      : global.is_fails()       ? "not an isomorphism"
                                                : "undecided";
  auto v = r.verdict();
  std::string iso = v.is_holds() ? "verified" : v.is_fails() ? "refuted" : "undecided";
  std::string text = "sigma: " + sigma + "; Spec iso: " + iso + "\n" + r.text();
  Json pts = Json::array();
  for (std::size_t q = 0; q < r.pullback.size(); ++q)
    pts.push_back({r.gamma_space.points[q].id, r.base_space.points[r.pullback[q]].id});
  Json j{{"sigma", sigma},
         {"spec_iso", iso},
         {"pullback", pts},
         {"bijection", to_string(r.bijection.verdict)},
         {"opens", to_string(r.opens.verdict)},
         {"stalks", to_string(r.stalks.verdict)}};
  return emit(cfg, text, j, v);
}

Report cmd_union(const Config& cfg, const Workspace& w) {
  std::vector<BlueprintPtr> pieces;
  if (w.names.empty())
    for (const auto& n : w.order) pieces.push_back(w.get(n));
  else
    for (const auto& n : w.names) pieces.push_back(w.get(n));
  auto u = disjoint_union(pieces);
  std::string text = "disjoint union of " + std::to_string(u.parts.size()) + " affine piece(s), " +
                     std::to_string(u.size()) + " point(s)\n";
  Json pts = Json::array();
  for (std::size_t k = 0; k < u.parts.size(); ++k)
    for (const auto& p : u.parts[k].points) {
      text += "  " + std::to_string(k + 1) + ":" + p.id + "\n";
      pts.push_back(std::to_string(k + 1) + ":" + p.id);
    }
  text += "global sections:\n" + blueprint_text(u.gamma);
  return emit(cfg, text, Json{{"points", pts}, {"gamma", blueprint_json(u.gamma)}});
}

int exit_code(const Decision& d) { return d.is_holds() ? kSuccess : d.is_fails() ? kFails : kUnknown; }

std::string budget_report(const Budget& b) {
  return "budget: pairs " + std::to_string(b.max_pairs) + ", terms " + std::to_string(b.max_terms) + ", degree " +
         std::to_string(b.max_degree) + ", exponent " + std::to_string(b.max_exponent) + "\n";
}

}  // namespace

Declaration declaration_of(const BlueprintPtr& b) {
  auto presented = presented_form(b);
  return {sanitized(b->name()), presented->monoid().presentation(), presented->relations()};
}

Outcome run(const std::vector<std::string>& args) {
  CLI::App app{"Exact computations with blueprints and their spectra", "blue"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  std::string format = "text";
  app.add_option("--budget", cfg.budget.max_pairs, "sums visited by one search")->check(CLI::PositiveNumber);
  app.add_option("--max-terms", cfg.budget.max_terms, "terms per formal sum")->check(CLI::PositiveNumber);
  app.add_option("--max-degree", cfg.budget.max_degree, "degree of searched monomials")->check(CLI::PositiveNumber);
  app.add_option("--max-exponent", cfg.budget.max_exponent, "exponent bound for powers and denominators")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  app.add_option("--out", cfg.out_path, "write the report to a file");

  std::vector<std::string> operands;
  auto command = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("operands", operands, "files (.blu), built-ins (@F1, @B1, @F2, @E0, @E, @B, @F1^n), names")
        ->required();
    return sub;
  };
  command("check", "validate and classify");
  command("spec", "prime spectrum");
  command("gamma", "global sections and the globalization");
  command("holds", "decide a relation \"LHS = RHS\"");
  std::string invert, ideal, pairs, over, maps;
  command("localize", "adjoin inverses")->add_option("--invert", invert, "elements g1,g2")->required();
  auto* quotient = command("quotient", "quotient by an ideal or by pairs");
  auto* by_ideal = quotient->add_option("--ideal", ideal, "ideal generators g1,g2");
  quotient->add_option("--pairs", pairs, "pairs a~b,c~d")->excludes(by_ideal);
  bool rank = false, semiring = false;
  command("zext", "base extension to rings")->add_flag("--rank", rank, "rank of the additive group");
  command("next", "base extension to semirings")->add_flag("--semiring", semiring, "check a semiring round trip");
  auto* tensor_cmd = command("tensor", "tensor product A B over C");
  tensor_cmd->add_option("--over", over, "common source");
  tensor_cmd->add_option("--maps", maps, "morphisms f,g");
  auto* closure = command("closure", "closures");
  std::string which;
  auto* group = closure->add_option_group("kind");
  group->add_flag_callback("--proper", [&] { which = "proper"; });
  group->add_flag_callback("--inv", [&] { which = "inv"; });
  group->add_flag_callback("--zero", [&] { which = "zero"; });
  group->add_flag_callback("--canc", [&] { which = "canc"; });
  group->require_option(1);
  command("verify-global", "verify Spec of the global sections against Spec");
  command("union", "disjoint union of affine pieces");

  Outcome outcome;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    outcome.out = app.help();
    return outcome;
  } catch (const CLI::ParseError& e) {
    outcome.code = kInvalid;
    outcome.err = std::string("error: ") + e.what() + "\n";
    return outcome;
  }
  cfg.format = format == "json" ? Format::Json : format == "dot" ? Format::Dot : Format::Text;
  const std::string cmd = app.get_subcommands().front()->get_name();

  Report report;
  try {
    auto w = load(operands, cfg.budget);
    if (cfg.format == Format::Dot && cmd != "spec") throw Error(ErrorCode::UnsupportedFormat, "dot output is available for spec only");
    if (cmd == "check") report = cmd_check(cfg, w);
    else if (cmd == "spec") report = cmd_spec(cfg, w);
    else if (cmd == "gamma") report = cmd_gamma(cfg, w);
    else if (cmd == "holds") report = cmd_holds(cfg, w);
    else if (cmd == "localize") report = cmd_localize(cfg, w, invert);
    else if (cmd == "quotient") report = cmd_quotient(cfg, w, ideal, pairs);
    else if (cmd == "zext") report = cmd_zext(cfg, w, rank);
    else if (cmd == "next") report = cmd_next(cfg, w, semiring);
    else if (cmd == "tensor") report = cmd_tensor(cfg, w, over, maps);
    else if (cmd == "closure") report = cmd_closure(cfg, w, which);
    else if (cmd == "verify-global") report = cmd_verify_global(cfg, w);
    else report = cmd_union(cfg, w);
  } catch (const Error& e) {
    bool budget = e.code() == ErrorCode::IncompleteEnumeration;
    outcome.code = budget ? kUnknown : kInvalid;
    outcome.err = std::string("error: ") + e.what() + "\n" + (budget ? budget_report(cfg.budget) : "");
    return outcome;
  } catch (const std::exception& e) {
    outcome.code = kInvalid;
    outcome.err = std::string("error: ") + e.what() + "\n";
    return outcome;
  }

  outcome.code = exit_code(report.status);
  if (outcome.code == kUnknown) outcome.err = "undecided within the budget\n" + budget_report(cfg.budget);
  if (cfg.out_path.empty()) {
    outcome.out = report.text;
  } else {
    std::ofstream f(cfg.out_path, std::ios::binary);
    if (!f) {
      outcome.code = kInvalid;
      outcome.err += "error: cannot write " + cfg.out_path + "\n";
    }
    f << report.text;
  }
  return outcome;
}

}  // namespace blue::cli
