#include "movcat/workspace.hpp"

#include <charconv>
#include <set>
#include <sstream>

namespace movcat {

namespace {

struct Token {
  std::string text;
  std::size_t column; // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && (raw[i] == ' ' || raw[i] == '\t' || raw[i] == '\r')) ++i;
      if (i >= raw.size()) break;
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t' && raw[j] != '\r') ++j;
      line.tokens.push_back({std::string(raw.substr(i, j - i)), i + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

[[noreturn]] void syntax(const Line& line, std::size_t column, const std::string& message) {
  throw Error(Errc::syntax_error,
              "line " + std::to_string(line.number) + ", column " + std::to_string(column) + ": " + message);
}

[[noreturn]] void unresolved(const std::string& what, std::size_t line) {
  throw Error(Errc::unresolved_reference, what + " (line " + std::to_string(line) + ")");
}

void expect_args(const Line& line, std::size_t count) {
  if (line.tokens.size() != count + 1)
    syntax(line, line.tokens.front().column,
           "'" + line.tokens.front().text + "' takes " + std::to_string(count) + " argument(s)");
}

std::uint64_t parse_positive(const Line& line, const Token& t) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
  if (ec != std::errc{} || p != t.text.data() + t.text.size() || v == 0)
    syntax(line, t.column, "expected a positive integer, got '" + t.text + "'");
  return v;
}

template <class Entry>
void check_unique(const std::vector<Entry>& entries, const Line& line, const std::string& name) {
  for (const auto& e : entries)
    if (e.name == name) syntax(line, line.tokens[1].column, "duplicate name '" + name + "'");
}

class Parser {
public:
  explicit Parser(std::string_view text) : lines_(tokenize(text)) {}

  Workspace run() {
    Workspace ws;
    std::size_t i = 0;
    if (i < lines_.size() && lines_[i].tokens[0].text == "workspace") {
      expect_args(lines_[i], 1);
      ws.version = static_cast<int>(parse_positive(lines_[i], lines_[i].tokens[1]));
      if (ws.version != 1) syntax(lines_[i], lines_[i].tokens[1].column, "unsupported version");
      ++i;
    }
    while (i < lines_.size()) {
      const Line& head = lines_[i];
      const std::string& kw = head.tokens[0].text;
      const std::size_t end = find_end(i);
      if (kw == "category") category(ws, i, end);
      else if (kw == "subcategory") subcategory(ws, i, end);
      else if (kw == "system") system(ws, i, end);
      else if (kw == "expansion") expansion(ws, i, end);
      else if (kw == "witness") witness(ws, i, end);
      else syntax(head, head.tokens[0].column, "unknown block '" + kw + "'");
      i = end + 1;
    }
    resolve(ws);
    return ws;
  }

private:
  std::size_t find_end(std::size_t start) const {
    for (std::size_t j = start + 1; j < lines_.size(); ++j) {
      const auto& kw = lines_[j].tokens[0].text;
      if (kw == "end") {
        expect_args(lines_[j], 0);
        return j;
      }
      if (lines_[j].tokens[0].column == 1 &&
          (kw == "category" || kw == "subcategory" || kw == "system" || kw == "expansion" ||
           kw == "witness"))
        syntax(lines_[j], 1, "'" + kw + "' inside an open block; missing 'end'");
    }
    syntax(lines_[start], 1, "block is not closed by 'end'");
  }

  void category(Workspace& ws, std::size_t start, std::size_t end) {
    const Line& head = lines_[start];
    expect_args(head, 1);
    check_unique(ws.categories, head, head.tokens[1].text);
    CategoryDescription raw;
    for (std::size_t j = start + 1; j < end; ++j) {
      const Line& l = lines_[j];
      const auto& kw = l.tokens[0].text;
      if (kw == "objects") {
        for (std::size_t t = 1; t < l.tokens.size(); ++t) raw.objects.push_back(l.tokens[t].text);
      } else if (kw == "morphism") {
        expect_args(l, 3);
        raw.morphisms.push_back({l.tokens[1].text, l.tokens[2].text, l.tokens[3].text});
      } else if (kw == "identity") {
        expect_args(l, 2);
        raw.identities.emplace_back(l.tokens[1].text, l.tokens[2].text);
      } else if (kw == "compose") {
        expect_args(l, 3);
        raw.compositions.push_back({l.tokens[1].text, l.tokens[2].text, l.tokens[3].text});
      } else {
        syntax(l, l.tokens[0].column, "unknown category field '" + kw + "'");
      }
    }
    const std::string name = head.tokens[1].text;
    try {
      ws.add_category(name, std::move(raw));
    } catch (const Error& e) {
      const std::string where = "category " + name + " (line " + std::to_string(head.number) + "): ";
      if (e.code() == Errc::duplicate_id)
        throw Error(Errc::syntax_error, where + "DuplicateId " + e.what(), e.details());
      if (e.code() == Errc::dangling_reference)
        throw Error(Errc::unresolved_reference, where + e.what(), e.details());
      throw Error(e.code(), where + e.what(), e.details());
    }
  }

  void subcategory(Workspace& ws, std::size_t start, std::size_t end) {
    const Line& head = lines_[start];
    if (head.tokens.size() != 4 || head.tokens[2].text != "of")
      syntax(head, 1, "expected 'subcategory NAME of CATEGORY'");
    check_unique(ws.subcategories, head, head.tokens[1].text);
    SubcategoryEntry e{head.tokens[1].text, head.tokens[3].text, {}};
    for (std::size_t j = start + 1; j < end; ++j) {
      const Line& l = lines_[j];
      const auto& kw = l.tokens[0].text;
      auto& target = kw == "objects" ? e.spec.objects : e.spec.morphisms;
      if (kw != "objects" && kw != "morphisms") syntax(l, 1, "unknown subcategory field '" + kw + "'");
      for (std::size_t t = 1; t < l.tokens.size(); ++t) target.push_back(l.tokens[t].text);
    }
    lines_of_.emplace_back("subcategory " + e.name, head.number);
    ws.subcategories.push_back(std::move(e));
  }

  void system(Workspace& ws, std::size_t start, std::size_t end) {
    const Line& head = lines_[start];
    if (head.tokens.size() < 3) syntax(head, 1, "expected 'system NAME KIND ...'");
    check_unique(ws.systems, head, head.tokens[1].text);
    SystemEntry e;
    e.name = head.tokens[1].text;
    const auto& kind = head.tokens[2].text;
    if (kind == "divisibility") {
      e.kind = SystemKind::divisibility;
      if (head.tokens.size() != 3) syntax(head, head.tokens[3].column, "divisibility systems take no category");
    } else {
      if (kind == "finite") e.kind = SystemKind::finite;
      else if (kind == "periodic") e.kind = SystemKind::periodic;
      else syntax(head, head.tokens[2].column, "unknown system kind '" + kind + "'");
      if (head.tokens.size() != 5 || head.tokens[3].text != "over")
        syntax(head, 1, "expected 'system NAME " + kind + " over CATEGORY'");
      e.category = head.tokens[4].text;
    }
    for (std::size_t j = start + 1; j < end; ++j) {
      const Line& l = lines_[j];
      const auto& kw = l.tokens[0].text;
      if (e.kind == SystemKind::finite) {
        if (kw == "level") {
          expect_args(l, 2);
          e.levels.emplace_back(l.tokens[1].text, l.tokens[2].text);
        } else if (kw == "order") {
          expect_args(l, 2);
          e.order.emplace_back(l.tokens[1].text, l.tokens[2].text);
        } else if (kw == "bond") {
          expect_args(l, 3);
          e.bonds.emplace_back(l.tokens[1].text, l.tokens[2].text, l.tokens[3].text);
        } else {
          syntax(l, 1, "unknown finite-system field '" + kw + "'");
        }
      } else if (e.kind == SystemKind::periodic) {
        if (kw != "prefix" && kw != "cycle") syntax(l, 1, "unknown sequence field '" + kw + "'");
        expect_args(l, 2);
        (kw == "prefix" ? e.prefix : e.cycle).emplace_back(l.tokens[1].text, l.tokens[2].text);
      } else {
        if (kw != "prefix" && kw != "cycle") syntax(l, 1, "unknown divisibility field '" + kw + "'");
        auto& target = kw == "prefix" ? e.prefix_multipliers : e.cycle_multipliers;
        for (std::size_t t = 1; t < l.tokens.size(); ++t) target.push_back(parse_positive(l, l.tokens[t]));
      }
    }
    if (e.kind == SystemKind::periodic && e.cycle.empty()) syntax(head, 1, "sequence needs a cycle");
    if (e.kind == SystemKind::divisibility && e.cycle_multipliers.empty())
      syntax(head, 1, "divisibility sequence needs a cycle");
    lines_of_.emplace_back("system " + e.name, head.number);
    ws.systems.push_back(std::move(e));
  }

  void expansion(Workspace& ws, std::size_t start, std::size_t end) {
    const Line& head = lines_[start];
    expect_args(head, 1);
    check_unique(ws.expansions, head, head.tokens[1].text);
    ExpansionEntry e;
    e.name = head.tokens[1].text;
    for (std::size_t j = start + 1; j < end; ++j) {
      const Line& l = lines_[j];
      const auto& kw = l.tokens[0].text;
      if (kw == "ambient" || kw == "sub" || kw == "apex" || kw == "system") {
        expect_args(l, 1);
        std::string& slot = kw == "ambient" ? e.ambient : kw == "sub" ? e.sub : kw == "apex" ? e.apex : e.system;
        slot = l.tokens[1].text;
      } else if (kw == "leg") {
        expect_args(l, 2);
        e.legs.emplace_back(l.tokens[1].text, l.tokens[2].text);
      } else if (kw == "loop") {
        expect_args(l, 1);
        e.loop = parse_positive(l, l.tokens[1]);
      } else {
        syntax(l, 1, "unknown expansion field '" + kw + "'");
      }
    }
    if (e.ambient.empty() || e.sub.empty() || e.apex.empty() || e.system.empty())
      syntax(head, 1, "expansion needs ambient, sub, apex and system");
    lines_of_.emplace_back("expansion " + e.name, head.number);
    ws.expansions.push_back(std::move(e));
  }

  void witness(Workspace& ws, std::size_t start, std::size_t end) {
    const Line& head = lines_[start];
    if (head.tokens.size() != 4 || head.tokens[2].text != "in")
      syntax(head, 1, "expected 'witness NAME in CATEGORY'");
    check_unique(ws.witnesses, head, head.tokens[1].text);
    WitnessEntry e{head.tokens[1].text, head.tokens[3].text, {}, {}, {}, {}};
    for (std::size_t j = start + 1; j < end; ++j) {
      const Line& l = lines_[j];
      const auto& kw = l.tokens[0].text;
      if (kw == "target" || kw == "mover" || kw == "via") {
        expect_args(l, 1);
        (kw == "target" ? e.target : kw == "mover" ? e.mover : e.via) = l.tokens[1].text;
      } else if (kw == "factor") {
        expect_args(l, 2);
        e.factors.emplace_back(l.tokens[1].text, l.tokens[2].text);
      } else {
        syntax(l, 1, "unknown witness field '" + kw + "'");
      }
    }
    if (e.target.empty() || e.mover.empty() || e.via.empty())
      syntax(head, 1, "witness needs target, mover and via");
    lines_of_.emplace_back("witness " + e.name, head.number);
    ws.witnesses.push_back(std::move(e));
  }

  std::size_t line_of(const std::string& key) const {
    for (const auto& [k, n] : lines_of_)
      if (k == key) return n;
    return 0;
  }

  void resolve(const Workspace& ws) const {
    for (const auto& s : ws.subcategories) {
      const std::size_t at = line_of("subcategory " + s.name);
      const auto cat = find_cat(ws, s.category, at);
      for (const auto& o : s.spec.objects)
        if (!cat->find_object(o)) unresolved("object " + o + " in " + s.category, at);
      for (const auto& m : s.spec.morphisms)
        if (!cat->find_morphism(m)) unresolved("morphism " + m + " in " + s.category, at);
    }
    for (const auto& s : ws.systems) {
      if (s.kind == SystemKind::divisibility) continue;
      const std::size_t at = line_of("system " + s.name);
      const auto cat = find_cat(ws, s.category, at);
      auto need_obj = [&](const std::string& o) {
        if (!cat->find_object(o)) unresolved("object " + o + " in " + s.category, at);
      };
      auto need_mor = [&](const std::string& m) {
        if (!cat->find_morphism(m)) unresolved("morphism " + m + " in " + s.category, at);
      };
      std::set<std::string> levels;
      for (const auto& [l, o] : s.levels) {
        if (!levels.insert(l).second) throw Error(Errc::syntax_error, "duplicate level " + l + " (line " + std::to_string(at) + ")");
        need_obj(o);
      }
      for (const auto& [a, b] : s.order)
        for (const auto* x : {&a, &b})
          if (!levels.count(*x)) unresolved("level " + *x, at);
      for (const auto& [a, b, m] : s.bonds) {
        for (const auto* x : {&a, &b})
          if (!levels.count(*x)) unresolved("level " + *x, at);
        need_mor(m);
      }
      for (const auto* part : {&s.prefix, &s.cycle})
        for (const auto& [o, m] : *part) {
          need_obj(o);
          need_mor(m);
        }
    }
    for (const auto& e : ws.expansions) {
      const std::size_t at = line_of("expansion " + e.name);
      const auto cat = find_cat(ws, e.ambient, at);
      bool sub = false, sys = false;
      for (const auto& s : ws.subcategories) sub = sub || (s.name == e.sub && s.category == e.ambient);
      for (const auto& s : ws.systems) sys = sys || (s.name == e.system && s.category == e.ambient);
      if (!sub) unresolved("subcategory " + e.sub + " of " + e.ambient, at);
      if (!sys) unresolved("system " + e.system + " over " + e.ambient, at);
      if (!cat->find_object(e.apex)) unresolved("object " + e.apex, at);
      for (const auto& [l, m] : e.legs)
        if (!cat->find_morphism(m)) unresolved("morphism " + m, at);
    }
    for (const auto& w : ws.witnesses) {
      const std::size_t at = line_of("witness " + w.name);
      const auto cat = find_cat(ws, w.category, at);
      for (const auto* o : {&w.target, &w.mover})
        if (!cat->find_object(*o)) unresolved("object " + *o, at);
      if (!cat->find_morphism(w.via)) unresolved("morphism " + w.via, at);
      for (const auto& [p, u] : w.factors)
        for (const auto* m : {&p, &u})
          if (!cat->find_morphism(*m)) unresolved("morphism " + *m, at);
    }
  }

  static CategoryRef find_cat(const Workspace& ws, const std::string& name, std::size_t at) {
    for (const auto& c : ws.categories)
      if (c.name == name) return c.category;
    unresolved("category " + name, at);
  }

  std::vector<Line> lines_;
  std::vector<std::pair<std::string, std::size_t>> lines_of_;
};

template <class Entry>
const Entry& find_entry(const std::vector<Entry>& entries, std::string_view name, const char* kind) {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw Error(Errc::unresolved_reference, std::string(kind) + " " + std::string(name));
}

ObjId need_object(const FinCategory& cat, const std::string& name) {
  if (auto o = cat.find_object(name)) return *o;
  throw Error(Errc::unresolved_reference, "object " + name);
}

MorId need_morphism(const FinCategory& cat, const std::string& name) {
  if (auto m = cat.find_morphism(name)) return *m;
  throw Error(Errc::unresolved_reference, "morphism " + name);
}

} // namespace

void Workspace::add_category(std::string name, CategoryDescription raw) {
  auto cat = share(validate_category(raw));
  categories.push_back({std::move(name), std::move(raw), std::move(cat)});
}

CategoryRef Workspace::category(std::string_view name) const {
  return find_entry(categories, name, "category").category;
}

const SubcategoryEntry& Workspace::subcategory(std::string_view name) const {
  return find_entry(subcategories, name, "subcategory");
}

const SystemEntry& Workspace::system_entry(std::string_view name) const {
  return find_entry(systems, name, "system");
}

const ExpansionEntry& Workspace::expansion_entry(std::string_view name) const {
  return find_entry(expansions, name, "expansion");
}

const WitnessEntry& Workspace::witness_entry(std::string_view name) const {
  return find_entry(witnesses, name, "witness");
}

AnySystem Workspace::system(std::string_view name) const {
  const SystemEntry& e = system_entry(name);
  if (e.kind == SystemKind::divisibility) return DivisibilitySequence{e.prefix_multipliers, e.cycle_multipliers};
  const CategoryRef cat = category(e.category);
  if (e.kind == SystemKind::periodic) {
    PeriodicSequence s{cat, {}, {}, {}, {}};
    for (const auto& [o, m] : e.prefix) {
      s.prefix_objects.push_back(need_object(*cat, o));
      s.prefix_steps.push_back(need_morphism(*cat, m));
    }
    for (const auto& [o, m] : e.cycle) {
      s.cycle_objects.push_back(need_object(*cat, o));
      s.cycle_steps.push_back(need_morphism(*cat, m));
    }
    return s;
  }
  FiniteIndexSystem f;
  f.ambient = cat;
  for (const auto& [l, o] : e.levels) {
    f.index.elements.push_back(l);
    f.objects.push_back(need_object(*cat, o));
  }
  const std::size_t n = f.index.size();
  f.index.le.assign(n * n, 0);
  for (Level a = 0; a < n; ++a) f.index.le[a * n + a] = 1;
  auto level = [&](const std::string& l) {
    if (auto x = f.index.find(l)) return *x;
    throw Error(Errc::unresolved_reference, "level " + l);
  };
  for (const auto& [a, b] : e.order) f.index.le[level(a) * n + level(b)] = 1;
  for (const auto& [a, b, m] : e.bonds) f.bonds[{level(a), level(b)}] = need_morphism(*cat, m);
  for (Level a = 0; a < n; ++a) f.bonds.try_emplace({a, a}, cat->identity(f.objects[a]));
  return f;
}

Expansion Workspace::expansion(std::string_view name) const {
  const ExpansionEntry& e = expansion_entry(name);
  const CategoryRef cat = category(e.ambient);
  const SubcategoryEntry& sub = subcategory(e.sub);
  if (sub.category != e.ambient) throw Error(Errc::unresolved_reference, "subcategory " + e.sub + " of " + e.ambient);
  const SystemEntry& se = system_entry(e.system);
  if (se.kind == SystemKind::divisibility || se.category != e.ambient)
    throw Error(Errc::expansion_invalid, "system " + e.system + " is not over " + e.ambient);
  AnySystem any = system(e.system);
  FiniteSystem sys = std::holds_alternative<FiniteIndexSystem>(any)
                         ? FiniteSystem(std::get<FiniteIndexSystem>(any))
                         : FiniteSystem(std::get<PeriodicSequence>(any));
  LevelFamily legs;
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    legs.first = 0;
    legs.values.assign(f->index.size(), MorId{});
    std::vector<char> seen(f->index.size(), 0);
    for (const auto& [l, m] : e.legs) {
      auto lv = f->index.find(l);
      if (!lv) throw Error(Errc::unresolved_reference, "level " + l);
      legs.values[*lv] = need_morphism(*cat, m);
      seen[*lv] = 1;
    }
    for (Level n = 0; n < seen.size(); ++n)
      if (!seen[n]) throw Error(Errc::expansion_invalid, "no leg at level " + f->index.elements[n]);
    if (e.loop) throw Error(Errc::expansion_invalid, "finite systems take no loop");
  } else {
    legs.first = 1;
    for (std::size_t i = 0; i < e.legs.size(); ++i) {
      if (e.legs[i].first != std::to_string(i + 1))
        throw Error(Errc::expansion_invalid, "sequence legs must be listed for levels 1, 2, ... in order");
      legs.values.push_back(need_morphism(*cat, e.legs[i].second));
    }
    if (!e.loop) throw Error(Errc::expansion_invalid, "sequence legs need a loop level");
    legs.loop_from = *e.loop;
  }
  return make_expansion(cat, sub.spec, need_object(*cat, e.apex), sys, std::move(legs));
}

Witness Workspace::witness(std::string_view name) const {
  const WitnessEntry& e = witness_entry(name);
  const CategoryRef cat = category(e.category);
  Witness w{need_object(*cat, e.target), need_object(*cat, e.mover), need_morphism(*cat, e.via), {}};
  for (const auto& [p, u] : e.factors) w.factors[need_morphism(*cat, p)] = need_morphism(*cat, u);
  return w;
}

Workspace parse_workspace(std::string_view text) { return Parser(text).run(); }

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

void list_line(std::ostringstream& out, const char* key, const std::vector<std::string>& items) {
  out << "  " << key;
  for (const auto& i : items) out << ' ' << i;
  out << '\n';
}

} // namespace

std::string print_category(const std::string& name, const CategoryDescription& raw) {
  std::ostringstream out;
  out << "category " << name << '\n';
  list_line(out, "objects", raw.objects);
  for (const auto& m : raw.morphisms) out << "  morphism " << m.name << ' ' << m.dom << ' ' << m.cod << '\n';
  for (const auto& [o, m] : raw.identities) out << "  identity " << o << ' ' << m << '\n';
  for (const auto& c : raw.compositions) out << "  compose " << c.g << ' ' << c.f << ' ' << c.gf << '\n';
  out << "end\n";
  return out.str();
}

std::string print_workspace(const Workspace& ws) {
  std::ostringstream out;
  out << "workspace " << ws.version << '\n';
  for (const auto& c : ws.categories) out << '\n' << print_category(c.name, c.raw);
  for (const auto& s : ws.subcategories) {
    out << "\nsubcategory " << s.name << " of " << s.category << '\n';
    list_line(out, "objects", s.spec.objects);
    list_line(out, "morphisms", s.spec.morphisms);
    out << "end\n";
  }
  for (const auto& s : ws.systems) {
    out << "\nsystem " << s.name << ' ';
    switch (s.kind) {
    case SystemKind::finite:
      out << "finite over " << s.category << '\n';
      for (const auto& [l, o] : s.levels) out << "  level " << l << ' ' << o << '\n';
      for (const auto& [a, b] : s.order) out << "  order " << a << ' ' << b << '\n';
      for (const auto& [a, b, m] : s.bonds) out << "  bond " << a << ' ' << b << ' ' << m << '\n';
      break;
    case SystemKind::periodic:
      out << "periodic over " << s.category << '\n';
      for (const auto& [o, m] : s.prefix) out << "  prefix " << o << ' ' << m << '\n';
      for (const auto& [o, m] : s.cycle) out << "  cycle " << o << ' ' << m << '\n';
      break;
    case SystemKind::divisibility:
      out << "divisibility\n";
      if (!s.prefix_multipliers.empty()) {
        out << "  prefix";
        for (auto v : s.prefix_multipliers) out << ' ' << v;
        out << '\n';
      }
      out << "  cycle";
      for (auto v : s.cycle_multipliers) out << ' ' << v;
      out << '\n';
      break;
    }
    out << "end\n";
  }
  for (const auto& e : ws.expansions) {
    out << "\nexpansion " << e.name << '\n';
    out << "  ambient " << e.ambient << "\n  sub " << e.sub << "\n  apex " << e.apex << "\n  system "
        << e.system << '\n';
    for (const auto& [l, m] : e.legs) out << "  leg " << l << ' ' << m << '\n';
    if (e.loop) out << "  loop " << *e.loop << '\n';
    out << "end\n";
  }
  for (const auto& w : ws.witnesses) {
    out << "\nwitness " << w.name << " in " << w.category << '\n';
    out << "  target " << w.target << "\n  mover " << w.mover << "\n  via " << w.via << '\n';
    for (const auto& [p, u] : w.factors) out << "  factor " << p << ' ' << u << '\n';
    out << "end\n";
  }
  return out.str();
}

SystemEntry describe_system(const std::string& name, const std::string& category_name,
                            const FiniteSystem& sys) {
  SystemEntry e;
  e.name = name;
  e.category = category_name;
  const FinCategory& C = ambient(sys);
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    e.kind = SystemKind::finite;
    const auto& el = f->index.elements;
    for (Level a = 0; a < el.size(); ++a) e.levels.emplace_back(el[a], C.name(f->objects[a]));
    for (Level a = 0; a < el.size(); ++a)
      for (Level b = 0; b < el.size(); ++b)
        if (a != b && f->index.leq(a, b)) {
          e.order.emplace_back(el[a], el[b]);
          e.bonds.emplace_back(el[a], el[b], C.name(f->bond(a, b)));
        }
  } else {
    const auto& s = std::get<PeriodicSequence>(sys);
    e.kind = SystemKind::periodic;
    for (std::size_t i = 0; i < s.prefix_length(); ++i)
      e.prefix.emplace_back(C.name(s.prefix_objects[i]), C.name(s.prefix_steps[i]));
    for (std::size_t i = 0; i < s.period(); ++i)
      e.cycle.emplace_back(C.name(s.cycle_objects[i]), C.name(s.cycle_steps[i]));
  }
  return e;
}

SystemEntry describe_system(const std::string& name, const DivisibilitySequence& sys) {
  SystemEntry e;
  e.name = name;
  e.kind = SystemKind::divisibility;
  e.prefix_multipliers = sys.prefix;
  e.cycle_multipliers = sys.cycle;
  return e;
}

ExpansionEntry describe_expansion(const std::string& name, const std::string& amb,
                                  const std::string& sub, const std::string& system,
                                  const FinCategory& cat, ObjId apex, const FiniteSystem& sys,
                                  const LevelFamily& legs) {
  ExpansionEntry e{name, amb, sub, cat.name(apex), system, {}, std::nullopt};
  for (Level n = legs.first; n <= legs.last(); ++n) e.legs.emplace_back(level_name(sys, n), cat.name(legs.at(n)));
  if (legs.loop_from) e.loop = *legs.loop_from;
  return e;
}

WitnessEntry describe_witness(const std::string& name, const std::string& category,
                              const FinCategory& cat, const Witness& w) {
  WitnessEntry e{name, category, cat.name(w.target), cat.name(w.mover), cat.name(w.movability), {}};
  for (const auto& [p, u] : w.factors) e.factors.emplace_back(cat.name(p), cat.name(u));
  return e;
}

} // namespace movcat
