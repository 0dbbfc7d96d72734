#include "movcat/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "movcat/generate.hpp"
#include "movcat/shapebridge.hpp"

#ifndef MOVCAT_DATA_DIR
#define MOVCAT_DATA_DIR "data/fixtures"
#endif

namespace movcat {

using nlohmann::json;

std::string CommandResult::output() const {
  if (json) return report.dump(2) + "\n";
  return text;
}

json to_json(const FinCategory& cat, const Witness& w) {
  json factors = json::object();
  for (const auto& [p, u] : w.factors) factors[cat.name(p)] = cat.name(u);
  return {{"target", cat.name(w.target)},
          {"mover", cat.name(w.mover)},
          {"movability", cat.name(w.movability)},
          {"factors", factors}};
}

json to_json(const FinCategory& cat, const CandidateFailure& f) {
  json j = {{"mover", cat.name(f.mover)}, {"movability", cat.name(f.movability)}};
  switch (f.reason) {
  case FailureReason::empty_domain:
    j["reason"] = "empty_domain";
    j["variable"] = cat.name(*f.variable);
    break;
  case FailureReason::contradiction:
    j["reason"] = "contradiction";
    j["triple"] = {cat.name((*f.triple)[0]), cat.name((*f.triple)[1]), cat.name((*f.triple)[2])};
    break;
  case FailureReason::exhausted:
    j["reason"] = "exhausted";
    break;
  }
  return j;
}

namespace {

ObjId object_named(const FinCategory& cat, const std::string& name) {
  if (auto o = cat.find_object(name)) return *o;
  throw Error(Errc::unresolved_reference, "object " + name);
}

MorId morphism_named(const FinCategory& cat, const std::string& name) {
  if (auto m = cat.find_morphism(name)) return *m;
  throw Error(Errc::unresolved_reference, "morphism " + name);
}

json diagnostics_json(const Diagnostics& d) {
  json out = json::array();
  for (const auto& item : d.items())
    out.push_back({{"code", std::string(to_string(item.code))},
                   {"law", item.law},
                   {"ids", item.ids},
                   {"message", item.message}});
  return out;
}

std::string indent(const Diagnostics& d) {
  std::string out;
  for (const auto& item : d.items()) out += "  " + item.str() + "\n";
  return out;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

std::string witness_text(const FinCategory& cat, const Witness& w) { return "witness " + describe(cat, w) + "\n"; }

json thread_json(const FiniteSystem& sys, const ProThread& t) {
  const FinCategory& C = ambient(sys);
  json comps = json::array();
  for (std::size_t i = 0; i < t.components.values.size(); ++i)
    comps.push_back({{"level", level_name(sys, t.components.first + i)}, {"value", C.name(t.components.values[i])}});
  json j = {{"source", level_name(sys, t.source)}, {"index", level_name(sys, t.index)}, {"components", comps}};
  if (t.components.loop_from) j["loop_from"] = level_name(sys, *t.components.loop_from);
  return j;
}

std::string thread_text(const FiniteSystem& sys, const ProThread& t) {
  const FinCategory& C = ambient(sys);
  std::ostringstream out;
  out << "  level " << level_name(sys, t.source) << ": index " << level_name(sys, t.index) << ", thread";
  for (std::size_t i = 0; i < t.components.values.size(); ++i)
    out << ' ' << level_name(sys, t.components.first + i) << ':' << C.name(t.components.values[i]);
  if (t.components.loop_from) out << " (repeats from " << level_name(sys, *t.components.loop_from) << ")";
  out << '\n';
  return out.str();
}

FiniteSystem as_finite(const AnySystem& any) {
  if (auto f = std::get_if<FiniteIndexSystem>(&any)) return *f;
  return std::get<PeriodicSequence>(any);
}

struct Context {
  const Workspace& ws;
  CommandResult& r;
};

void cmd_validate(Context c) {
  std::ostringstream out;
  json rep = {{"categories", json::array()}, {"subcategories", json::array()}, {"systems", json::array()},
              {"expansions", json::array()}, {"witnesses", json::array()}};
  int status = 0;
  for (const auto& e : c.ws.categories) {
    out << "category " << e.name << ": ok (" << e.category->object_count() << " objects, "
        << e.category->morphism_count() << " morphisms)\n";
    rep["categories"].push_back({{"name", e.name}, {"ok", true}});
  }
  for (const auto& e : c.ws.subcategories) {
    const auto d = is_subcategory(*c.ws.category(e.category), e.spec);
    out << "subcategory " << e.name << ": " << (d.ok() ? "ok" : "invalid") << "\n" << indent(d);
    rep["subcategories"].push_back({{"name", e.name}, {"ok", d.ok()}, {"diagnostics", diagnostics_json(d)}});
    if (!d.ok()) status = 2;
  }
  for (const auto& e : c.ws.systems) {
    const AnySystem s = c.ws.system(e.name);
    const Diagnostics d = std::visit([](const auto& x) { return validate_system(x); }, s);
    out << "system " << e.name << ": " << (d.ok() ? "ok" : "invalid") << "\n" << indent(d);
    rep["systems"].push_back({{"name", e.name}, {"ok", d.ok()}, {"diagnostics", diagnostics_json(d)}});
    if (!d.ok()) status = 2;
  }
  for (const auto& e : c.ws.expansions) {
    try {
      c.ws.expansion(e.name);
      out << "expansion " << e.name << ": ok\n";
      rep["expansions"].push_back({{"name", e.name}, {"ok", true}});
    } catch (const Error& err) {
      out << "expansion " << e.name << ": invalid\n  " << err.what() << "\n";
      rep["expansions"].push_back({{"name", e.name}, {"ok", false}, {"message", err.what()}});
      status = 2;
    }
  }
  for (const auto& e : c.ws.witnesses) {
    const CategoryRef cat = c.ws.category(e.category);
    const Witness w = c.ws.witness(e.name);
    const auto plain = verify_witness(*cat, w, false);
    const auto uniform = verify_witness(*cat, w, true);
    const char* verdict = uniform.ok() ? "uniform" : plain.ok() ? "movable only" : "refuted";
    out << "witness " << e.name << ": " << verdict << "\n" << indent(uniform);
    rep["witnesses"].push_back({{"name", e.name}, {"verdict", verdict}, {"diagnostics", diagnostics_json(uniform)}});
    if (!plain.ok() && status == 0) status = 1;
  }
  c.r.status = status;
  c.r.text = out.str();
  c.r.report = rep;
}

void cmd_check_movable(Context c, const std::string& cat_name, const std::string& object, bool uniform, bool co) {
  const CategoryRef cat = c.ws.category(cat_name);
  const ObjId x = object_named(*cat, object);
  const FinCategory shown = co ? dual(*cat) : *cat;
  const Decision d = co ? decide_co_movable(*cat, x, uniform)
                        : uniform ? decide_uniformly_movable(*cat, x) : decide_movable(*cat, x);
  const std::string notion = std::string(co ? "co-" : "") + (uniform ? "uniformly movable" : "movable");
  std::ostringstream out;
  out << cat_name << " " << object << ": " << (d ? "" : "not ") << notion << "\n";
  json rep = {{"category", cat_name}, {"object", object}, {"notion", notion}, {"holds", bool(d)}};
  if (d) {
    out << witness_text(shown, *d.witness);
    rep["witness"] = to_json(shown, *d.witness);
  } else {
    out << (uniform ? "no (M,m) admits consistent factors\n" : "no (M,m) admits factors\n");
    json cert = json::array();
    for (const auto& f : d.certificate) {
      out << "  " << describe(shown, f) << "\n";
      cert.push_back(to_json(shown, f));
    }
    rep["certificate"] = cert;
  }
  c.r.status = d ? 0 : 1;
  c.r.text = out.str();
  c.r.report = rep;
}

void cmd_comma(Context c, const std::string& cat_name, const std::string& sub, const std::string& apex) {
  const CategoryRef cat = c.ws.category(cat_name);
  const SubcategoryEntry& s = c.ws.subcategory(sub);
  if (s.category != cat_name) throw Error(Errc::unresolved_reference, "subcategory " + sub + " of " + cat_name);
  const CommaCategory k = comma_category(cat, s.spec, object_named(*cat, apex));
  const std::string name = apex + "_" + sub;
  c.r.text = print_category(name, k.category->describe());
  c.r.report = {{"name", name},
                {"objects", k.category->table().objects},
                {"morphism_count", k.category->morphism_count()},
                {"workspace", c.r.text}};
}

void cmd_product(Context c, const std::vector<std::string>& names, bool uniform) {
  std::vector<CategoryRef> cats;
  for (const auto& n : names) cats.push_back(c.ws.category(n));
  const Product prod = product(cats);
  const std::string name = join(names, "_x_");
  c.r.text = print_category(name, prod.category->describe());
  c.r.report = {{"name", name}, {"objects", prod.category->table().objects}, {"workspace", c.r.text}};
  if (!uniform) return;
  const bool whole = decide_category(*prod.category, true).holds();
  bool factors = true;
  json each = json::array();
  std::ostringstream out;
  for (std::size_t i = 0; i < cats.size(); ++i) {
    const bool h = decide_category(*cats[i], true).holds();
    factors = factors && h;
    each.push_back({{"category", names[i]}, {"uniform", h}});
    out << names[i] << ": " << (h ? "" : "not ") << "uniformly movable\n";
  }
  out << name << ": " << (whole ? "" : "not ") << "uniformly movable\n";
  out << "product law: " << (whole == factors ? "agrees" : "DISAGREES") << "\n";
  c.r.text += out.str();
  c.r.report["factors"] = each;
  c.r.report["uniform"] = whole;
  c.r.report["law_agrees"] = whole == factors;
  c.r.status = whole ? 0 : 1;
}

void cmd_dual(Context c, const std::string& cat_name) {
  const FinCategory d = dual(*c.ws.category(cat_name));
  c.r.text = print_category(cat_name + "_op", d.describe());
  c.r.report = {{"name", cat_name + "_op"}, {"workspace", c.r.text}};
}

void cmd_pullback(Context c, const std::string& cat_name, const std::string& f, const std::string& g,
                  const std::string& witness) {
  const CategoryRef cat = c.ws.category(cat_name);
  const MorId fm = morphism_named(*cat, f);
  const MorId gm = morphism_named(*cat, g);
  const auto pb = find_pullback(*cat, fm, gm);
  std::ostringstream out;
  json rep = {{"category", cat_name}, {"f", f}, {"g", g}, {"exists", pb.has_value()}};
  if (!pb) {
    out << "no pullback of " << f << " and " << g << "\n";
    c.r.status = 1;
  } else {
    out << "pullback apex " << cat->name(pb->apex) << " with projections " << cat->name(pb->proj_x) << ", "
        << cat->name(pb->proj_y) << "\n";
    rep["apex"] = cat->name(pb->apex);
    rep["proj_x"] = cat->name(pb->proj_x);
    rep["proj_y"] = cat->name(pb->proj_y);
  }
  if (!witness.empty() && pb) {
    const WitnessEntry& we = c.ws.witness_entry(witness);
    if (we.category != cat_name) throw Error(Errc::unresolved_reference, "witness " + witness + " in " + cat_name);
    const auto d = check_pullback_relation(*cat, c.ws.witness(witness), fm, gm);
    out << "pullback relation: " << (d.ok() ? "holds" : "fails") << "\n" << indent(d);
    rep["relation"] = {{"holds", d.ok()}, {"diagnostics", diagnostics_json(d)}};
    if (!d.ok()) c.r.status = 1;
  }
  c.r.text = out.str();
  c.r.report = rep;
}

void cmd_system_check(Context c, const std::string& name, bool uniform) {
  const AnySystem any = c.ws.system(name);
  const Diagnostics valid = std::visit([](const auto& x) { return validate_system(x); }, any);
  if (!valid.ok()) throw Error(Errc::functoriality_violation, valid.first().str(), valid);
  std::ostringstream out;
  json rep = {{"system", name}, {"notion", uniform ? "uniformly movable" : "movable"}};
  bool holds = false;
  if (auto div = std::get_if<DivisibilitySequence>(&any)) {
    const auto v = uniform ? decide_system_uniform(*div) : decide_system_movable(*div);
    holds = v.holds();
    json idx = json::array();
    for (const auto& i : v.indices) {
      idx.push_back({{"level", i.level}, {"index", i.index}, {"bond", i.bond}});
      out << "  m(" << i.level << ") = " << i.index << ", p = " << i.bond << "\n";
    }
    rep["indices"] = idx;
    json threads = json::array();
    for (const auto& t : v.threads) threads.push_back({{"source", t.source}, {"index", t.index}, {"values", t.values}});
    if (uniform) rep["threads"] = threads;
    if (v.failure) {
      out << "certificate at level " << v.failure->level << ": " << v.failure->reason << "\n";
      rep["certificate"] = {{"level", v.failure->level}, {"reason", v.failure->reason}};
    }
  } else {
    const FiniteSystem sys = as_finite(any);
    if (uniform) {
      const auto v = decide_system_uniform(sys);
      holds = v.holds();
      json threads = json::array();
      for (const auto& t : v.threads) {
        out << thread_text(sys, t);
        threads.push_back(thread_json(sys, t));
      }
      rep["threads"] = threads;
      if (v.failure) {
        out << "certificate at level " << level_name(sys, v.failure->level) << ": " << v.failure->reason << "\n";
        rep["certificate"] = {{"level", level_name(sys, v.failure->level)}, {"reason", v.failure->reason}};
      }
    } else {
      const auto v = decide_system_movable(sys);
      holds = v.holds();
      json idx = json::array();
      for (const auto& i : v.indices) {
        out << "  m(" << level_name(sys, i.level) << ") = " << level_name(sys, i.index) << "\n";
        idx.push_back({{"level", level_name(sys, i.level)}, {"index", level_name(sys, i.index)}});
      }
      rep["indices"] = idx;
      if (v.failure) {
        out << "certificate at level " << level_name(sys, v.failure->level) << ": " << v.failure->reason << "\n";
        rep["certificate"] = {{"level", level_name(sys, v.failure->level)}, {"reason", v.failure->reason}};
      }
    }
  }
  rep["holds"] = holds;
  c.r.status = holds ? 0 : 1;
  c.r.text = name + ": " + (holds ? "" : "not ") + (uniform ? "uniformly movable" : "movable") + "\n" + out.str();
  c.r.report = rep;
}

void cmd_expansion_check(Context c, const std::string& name) {
  const Expansion exp = c.ws.expansion(name);
  const auto ae1 = check_AE1(exp);
  const auto ae2 = check_AE2(exp);
  std::ostringstream out;
  out << "expansion " << name << "\n";
  out << "AE1: " << (ae1.ok() ? "holds" : "fails") << "\n" << indent(ae1);
  out << "AE2: " << (ae2.ok() ? "holds" : "fails") << "\n" << indent(ae2);
  c.r.status = ae1.ok() && ae2.ok() ? 0 : 1;
  c.r.text = out.str();
  c.r.report = {{"expansion", name},
                {"ae1", {{"holds", ae1.ok()}, {"diagnostics", diagnostics_json(ae1)}}},
                {"ae2", {{"holds", ae2.ok()}, {"diagnostics", diagnostics_json(ae2)}}}};
}

void cmd_theorem_check(Context c, const std::string& name) {
  const Expansion exp = c.ws.expansion(name);
  const TheoremReport rep = theorem_check(exp);
  const FinCategory& K = *rep.comma.category;
  std::ostringstream out;
  out << "comma side: " << (rep.comma_uniform ? "" : "not ") << "uniformly movable\n";
  out << "system side: " << (rep.system_uniform ? "" : "not ") << "uniformly movable\n";
  out << "verdicts " << (rep.consistent ? "agree" : "DISAGREE") << "\n";
  json j = {{"expansion", name},
            {"comma_uniform", rep.comma_uniform},
            {"system_uniform", rep.system_uniform},
            {"consistent", rep.consistent}};
  if (!rep.comma_uniform)
    for (const auto& d : rep.comma_side.objects)
      if (!d) {
        out << "comma certificate at " << K.name(d.target) << ": no (M,m) admits consistent factors\n";
        json cert = json::array();
        for (const auto& f : d.certificate) {
          out << "  " << describe(K, f) << "\n";
          cert.push_back(to_json(K, f));
        }
        j["comma_certificate"] = {{"object", K.name(d.target)}, {"candidates", cert}};
        break;
      }
  if (rep.system_side.failure) {
    out << "system certificate at level " << level_name(exp.system, rep.system_side.failure->level) << ": "
        << rep.system_side.failure->reason << "\n";
    j["system_certificate"] = {{"level", level_name(exp.system, rep.system_side.failure->level)},
                               {"reason", rep.system_side.failure->reason}};
  }
  json checks = json::array();
  for (const auto& chk : rep.checks) {
    out << "  [" << (chk.ok ? "ok" : "FAIL") << "] " << chk.subject << ": " << chk.detail << "\n";
    checks.push_back({{"subject", chk.subject}, {"ok", chk.ok}, {"detail", chk.detail}});
  }
  j["checks"] = checks;
  json witnesses = json::array();
  for (const auto& w : rep.constructed_witnesses) witnesses.push_back(to_json(K, w));
  j["constructed_witnesses"] = witnesses;
  json threads = json::array();
  for (const auto& t : rep.constructed_threads) threads.push_back(thread_json(exp.system, t));
  j["constructed_threads"] = threads;
  const bool good = rep.consistent && rep.cross_checks_pass();
  c.r.status = good && rep.comma_uniform ? 0 : 1;
  c.r.text = out.str();
  c.r.report = j;
}

void cmd_corollary(Context c, const std::string& name) {
  const SequenceCorollaryReport rep = corollary_sequence_check(c.ws.expansion(name));
  const bool m = rep.movable.holds();
  const bool u = rep.uniform.holds();
  std::ostringstream out;
  out << "comma category: " << (m ? "" : "not ") << "movable, " << (u ? "" : "not ") << "uniformly movable\n";
  out << "verdicts " << (rep.agree ? "agree" : "DISAGREE") << "\n";
  c.r.status = rep.agree ? 0 : 1;
  c.r.text = out.str();
  c.r.report = {{"expansion", name}, {"movable", m}, {"uniform", u}, {"agree", rep.agree}};
}

void cmd_gen(Context c, std::uint64_t seed, std::size_t objects, double density) {
  GenParams p;
  p.objects = objects;
  p.density = density;
  c.r.text = print_workspace(gen_random(seed, p));
  c.r.report = {{"seed", seed}, {"workspace", c.r.text}};
}

const std::vector<std::string> kCommands = {"validate", "check-movable", "comma",          "product",
                                            "dual",     "pullback",      "system-check",   "expansion-check",
                                            "theorem-check", "corollary8", "gen"};

CommandResult failure(Errc code, const std::string& message, bool as_json) {
  CommandResult r;
  r.status = 2;
  r.json = as_json;
  r.text = "error: " + message + "\n";
  r.report = {{"error", std::string(to_string(code))}, {"message", message}};
  return r;
}

} // namespace

CommandResult run_command(const Workspace& ws, const std::vector<std::string>& args) {
  const bool as_json = std::find(args.begin(), args.end(), "--json") != args.end();
  auto first = std::find_if(args.begin(), args.end(), [](const std::string& a) { return a.empty() || a[0] != '-'; });
  if (first == args.end()) return failure(Errc::unknown_command, "no command given", as_json);
  if (std::find(kCommands.begin(), kCommands.end(), *first) == kCommands.end())
    return failure(Errc::unknown_command, "unknown command '" + *first + "'", as_json);

  CommandResult r;
  r.json = as_json;
  CLI::App app{"movcat"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json_flag = false;
  app.add_flag("--json", json_flag, "machine-readable report");

  std::string cat, object, sub, apex, system, exp, f, g, witness;
  std::vector<std::string> cats;
  bool uniform = false, co = false;
  std::uint64_t seed = 1;
  std::size_t objects = 3;
  double density = 0.5;

  auto* validate = app.add_subcommand("validate", "check every workspace entry");
  auto* check = app.add_subcommand("check-movable", "decide movability of one object");
  check->add_option("--cat", cat)->required();
  check->add_option("--object", object)->required();
  check->add_flag("--uniform", uniform);
  check->add_flag("--co", co);
  auto* comma = app.add_subcommand("comma", "comma category of an object over a subcategory");
  comma->add_option("--cat", cat)->required();
  comma->add_option("--sub", sub)->required();
  comma->add_option("--apex", apex)->required();
  auto* prod = app.add_subcommand("product", "product of categories");
  prod->add_option("--cat", cats)->required();
  prod->add_flag("--uniform", uniform);
  auto* du = app.add_subcommand("dual", "opposite category");
  du->add_option("--cat", cat)->required();
  auto* pb = app.add_subcommand("pullback", "pullback of a cospan");
  pb->add_option("--cat", cat)->required();
  pb->add_option("--f", f)->required();
  pb->add_option("--g", g)->required();
  pb->add_option("--witness", witness);
  auto* sc = app.add_subcommand("system-check", "decide movability of a system");
  sc->add_option("--system", system)->required();
  sc->add_flag("--uniform", uniform);
  auto* ec = app.add_subcommand("expansion-check", "check the expansion axioms");
  ec->add_option("--exp", exp)->required();
  auto* tc = app.add_subcommand("theorem-check", "compare comma and system verdicts");
  tc->add_option("--exp", exp)->required();
  auto* c8 = app.add_subcommand("corollary8", "movable versus uniform on a sequence expansion");
  c8->add_option("--exp", exp)->required();
  auto* gen = app.add_subcommand("gen", "random workspace");
  gen->add_option("--seed", seed);
  gen->add_option("--objects", objects)->check(CLI::Range(1, 8));
  gen->add_option("--density", density)->check(CLI::Range(0.0, 1.0));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    r.text = app.help();
    return r;
  } catch (const CLI::ParseError& e) {
    return failure(Errc::invalid_flag, e.what(), as_json);
  }

  Context c{ws, r};
  try {
    if (*validate) cmd_validate(c);
    else if (*check) cmd_check_movable(c, cat, object, uniform, co);
    else if (*comma) cmd_comma(c, cat, sub, apex);
    else if (*prod) cmd_product(c, cats, uniform);
    else if (*du) cmd_dual(c, cat);
    else if (*pb) cmd_pullback(c, cat, f, g, witness);
    else if (*sc) cmd_system_check(c, system, uniform);
    else if (*ec) cmd_expansion_check(c, exp);
    else if (*tc) cmd_theorem_check(c, exp);
    else if (*c8) cmd_corollary(c, exp);
    else if (*gen) cmd_gen(c, seed, objects, density);
  } catch (const Error& e) {
    return failure(e.code(), e.what(), as_json);
  }
  r.report["command"] = *first;
  r.report["status"] = r.status;
  return r;
}

std::string fixture_dir() {
  if (const char* env = std::getenv("MOVCAT_FIXTURES"); env && *env) return env;
  return MOVCAT_DATA_DIR;
}

Workspace load_workspace(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::unresolved_reference, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_workspace(buf.str());
}

CommandResult run_cli(const std::vector<std::string>& args) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "-w" || args[i] == "--workspace") {
      if (i + 1 >= args.size()) return failure(Errc::invalid_flag, "-w needs a file", false);
      path = args[++i];
    } else {
      rest.push_back(args[i]);
    }
  }
  const bool as_json = std::find(rest.begin(), rest.end(), "--json") != rest.end();
  const bool needs_workspace = std::find(rest.begin(), rest.end(), "gen") == rest.end();
  Workspace ws;
  if (needs_workspace) {
    try {
      ws = load_workspace(path.empty() ? fixture_dir() + "/fixtures.ws" : path);
    } catch (const Error& e) {
      return failure(e.code(), e.what(), as_json);
    }
  }
  return run_command(ws, rest);
}

} // namespace movcat
