#include "movcat/generate.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>

namespace movcat {

namespace {

std::size_t below(Rng& rng, std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng() % n); }

bool chance(Rng& rng, double p) { return static_cast<double>(rng() >> 11) * 0x1.0p-53 < p; }

template <class T>
void shuffle(Rng& rng, std::vector<T>& v) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(rng, i)]);
}

std::string oname(std::size_t i) { return "o" + std::to_string(i); }

// Concrete morphism: a function between finite sets.
struct Map {
  std::size_t dom;
  std::size_t cod;
  std::vector<std::uint8_t> f;
  auto operator<=>(const Map&) const = default;
};

class Closure {
public:
  Closure(std::vector<std::size_t> sizes, std::size_t cap) : sizes_(std::move(sizes)), cap_(cap) {
    for (std::size_t o = 0; o < sizes_.size(); ++o) {
      Map id{o, o, std::vector<std::uint8_t>(sizes_[o])};
      std::iota(id.f.begin(), id.f.end(), 0);
      insert(id);
    }
  }

  // Adds a generator with everything it composes to; rolls back on overflow.
  bool add(const Map& g) {
    if (index_.count(g)) return true;
    if (maps_.size() >= cap_) return false;
    const std::size_t keep = maps_.size();
    std::deque<std::size_t> queue{insert(g)};
    while (!queue.empty()) {
      const std::size_t m = queue.front();
      queue.pop_front();
      for (std::size_t other = 0; other < maps_.size(); ++other) {
        for (auto [outer, inner] : {std::pair{m, other}, std::pair{other, m}}) {
          const Map& a = maps_[outer];
          const Map& b = maps_[inner];
          if (b.cod != a.dom) continue;
          Map c{b.dom, a.cod, std::vector<std::uint8_t>(b.f.size())};
          for (std::size_t i = 0; i < b.f.size(); ++i) c.f[i] = a.f[b.f[i]];
          if (index_.count(c)) continue;
          if (maps_.size() >= cap_) {
            while (maps_.size() > keep) {
              index_.erase(maps_.back());
              maps_.pop_back();
            }
            return false;
          }
          queue.push_back(insert(c));
        }
      }
    }
    return true;
  }

  CategoryDescription describe() const {
    CategoryDescription d;
    for (std::size_t o = 0; o < sizes_.size(); ++o) d.objects.push_back(oname(o));
    std::vector<std::string> names;
    std::size_t counter = 0;
    for (std::size_t i = 0; i < maps_.size(); ++i)
      names.push_back(i < sizes_.size() ? "id_" + oname(i) : "f" + std::to_string(counter++));
    for (std::size_t i = 0; i < maps_.size(); ++i)
      d.morphisms.push_back({names[i], oname(maps_[i].dom), oname(maps_[i].cod)});
    for (std::size_t o = 0; o < sizes_.size(); ++o) d.identities.emplace_back(oname(o), names[o]);
    for (std::size_t g = 0; g < maps_.size(); ++g)
      for (std::size_t f = 0; f < maps_.size(); ++f) {
        if (maps_[f].cod != maps_[g].dom) continue;
        Map c{maps_[f].dom, maps_[g].cod, std::vector<std::uint8_t>(maps_[f].f.size())};
        for (std::size_t i = 0; i < c.f.size(); ++i) c.f[i] = maps_[g].f[maps_[f].f[i]];
        d.compositions.push_back({names[g], names[f], names[index_.at(c)]});
      }
    return d;
  }

private:
  std::size_t insert(const Map& m) {
    index_.emplace(m, maps_.size());
    maps_.push_back(m);
    return maps_.size() - 1;
  }

  std::vector<std::size_t> sizes_;
  std::size_t cap_;
  std::vector<Map> maps_;
  std::map<Map, std::size_t> index_;
};

CategoryDescription random_concrete(Rng& rng, const GenParams& p) {
  std::vector<std::size_t> sizes;
  for (std::size_t o = 0; o < p.objects; ++o) sizes.push_back(1 + below(rng, p.max_set_size));
  Closure closure(sizes, p.max_morphisms);
  const std::size_t attempts = 1 + static_cast<std::size_t>(p.density * double(p.objects * p.objects) + 0.5);
  for (std::size_t t = 0; t < attempts; ++t) {
    const std::size_t a = below(rng, p.objects);
    const std::size_t b = below(rng, p.objects);
    Map g{a, b, std::vector<std::uint8_t>(sizes[a])};
    for (auto& x : g.f) x = static_cast<std::uint8_t>(below(rng, sizes[b]));
    closure.add(g);
  }
  return closure.describe();
}

CategoryDescription random_poset(Rng& rng, const GenParams& p) {
  const std::size_t n = p.objects;
  std::vector<char> le(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) le[i * n + i] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!chance(rng, p.density) || le[i * n + j]) continue;
      std::vector<char> next = le;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (le[a * n + i] && le[j * n + b]) next[a * n + b] = 1;
      if (static_cast<std::size_t>(std::count(next.begin(), next.end(), 1)) <= p.max_morphisms) le = next;
    }
  CategoryDescription d;
  auto arrow = [&](std::size_t i, std::size_t j) {
    return i == j ? "id_" + oname(i) : "le_" + oname(i) + "_" + oname(j);
  };
  for (std::size_t i = 0; i < n; ++i) d.objects.push_back(oname(i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (le[i * n + j]) d.morphisms.push_back({arrow(i, j), oname(i), oname(j)});
  for (std::size_t i = 0; i < n; ++i) d.identities.emplace_back(oname(i), arrow(i, i));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (le[i * n + j] && le[j * n + k]) d.compositions.push_back({arrow(j, k), arrow(i, j), arrow(i, k)});
  return d;
}

// Levels 0..n-1 with n-1 on top.
DirectedPreorder random_index(Rng& rng, std::size_t n) {
  DirectedPreorder idx;
  for (std::size_t i = 0; i < n; ++i) idx.elements.push_back(std::to_string(i + 1));
  idx.le.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    idx.le[i * n + i] = 1;
    idx.le[i * n + n - 1] = 1;
    for (std::size_t j = i + 1; j + 1 < n; ++j)
      if (chance(rng, 0.4)) idx.le[i * n + j] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (idx.le[i * n + k] && idx.le[k * n + j]) idx.le[i * n + j] = 1;
  return idx;
}

// Backtracking search for functorial bonds over fixed level objects.
bool assign_bonds(Rng& rng, FiniteIndexSystem& sys) {
  const FinCategory& C = *sys.ambient;
  const std::size_t n = sys.index.size();
  std::vector<std::pair<Level, Level>> vars;
  for (Level a = 0; a < n; ++a)
    for (Level b = 0; b < n; ++b)
      if (a != b && sys.index.leq(a, b)) vars.emplace_back(a, b);
  std::vector<std::vector<MorId>> domains;
  for (auto [a, b] : vars) {
    auto h = C.hom(sys.objects[b], sys.objects[a]);
    std::vector<MorId> d(h.begin(), h.end());
    if (d.empty()) return false;
    shuffle(rng, d);
    domains.push_back(std::move(d));
  }
  sys.bonds.clear();
  for (Level a = 0; a < n; ++a) sys.bonds[{a, a}] = C.identity(sys.objects[a]);
  auto consistent = [&](Level a, Level b) {
    for (Level x = 0; x < n; ++x)
      for (auto [lo, mid, hi] : {std::tuple{a, b, x}, std::tuple{x, a, b}, std::tuple{a, x, b}}) {
        auto ab = sys.bonds.find({lo, mid});
        auto bc = sys.bonds.find({mid, hi});
        auto ac = sys.bonds.find({lo, hi});
        if (ab == sys.bonds.end() || bc == sys.bonds.end() || ac == sys.bonds.end()) continue;
        if (C.compose_unchecked(ab->second, bc->second) != ac->second) return false;
      }
    return true;
  };
  std::size_t budget = 20000;
  auto search = [&](auto&& self, std::size_t i) -> bool {
    if (i == vars.size()) return true;
    for (MorId m : domains[i]) {
      if (budget-- == 0) return false;
      sys.bonds[vars[i]] = m;
      if (consistent(vars[i].first, vars[i].second) && self(self, i + 1)) return true;
      sys.bonds.erase(vars[i]);
    }
    return false;
  };
  return search(search, 0);
}

MorId idempotent_power(const FinCategory& C, MorId l) {
  MorId p = l;
  for (std::size_t i = 0; i <= C.morphism_count(); ++i) {
    if (C.compose_unchecked(p, p) == p) return p;
    p = C.compose_unchecked(p, l);
  }
  throw Error(Errc::size_overflow, "no idempotent power");
}

std::size_t idempotent_exponent(const FinCategory& C, MorId l) {
  MorId p = l;
  for (std::size_t j = 1; j <= C.morphism_count() + 1; ++j) {
    if (C.compose_unchecked(p, p) == p) return j;
    p = C.compose_unchecked(p, l);
  }
  throw Error(Errc::size_overflow, "no idempotent power");
}

} // namespace

void check_params(const GenParams& p) {
  if (p.objects == 0 || p.objects > 8) throw Error(Errc::size_overflow, "objects must be in 1..8");
  if (p.max_morphisms < p.objects || p.max_morphisms > 64)
    throw Error(Errc::size_overflow, "max_morphisms must be in objects..64");
  if (p.max_set_size == 0 || p.max_set_size > 4) throw Error(Errc::size_overflow, "set sizes must be in 1..4");
  if (!(p.density >= 0.0 && p.density <= 1.0)) throw Error(Errc::size_overflow, "density must be in [0,1]");
  if (p.max_levels == 0 || p.max_period == 0) throw Error(Errc::size_overflow, "empty index");
}

CategoryDescription random_category(Rng& rng, const GenParams& params) {
  check_params(params);
  return chance(rng, 0.75) ? random_concrete(rng, params) : random_poset(rng, params);
}

SubcategorySpec random_subcategory(Rng& rng, const FinCategory& cat, double density) {
  std::vector<std::size_t> objs;
  for (std::size_t o = 0; o < cat.object_count(); ++o)
    if (chance(rng, std::max(density, 0.3))) objs.push_back(o);
  if (objs.empty()) objs.push_back(below(rng, cat.object_count()));
  std::vector<std::string> names;
  for (auto o : objs) names.push_back(cat.name(obj(o)));
  if (chance(rng, 0.5)) return full_subcategory(cat, names);

  std::set<MorId> mors;
  for (auto o : objs) mors.insert(cat.identity(obj(o)));
  for (auto a : objs)
    for (auto b : objs)
      for (MorId m : cat.hom(obj(a), obj(b)))
        if (chance(rng, density)) mors.insert(m);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<MorId> cur(mors.begin(), mors.end());
    for (MorId g : cur)
      for (MorId f : cur)
        if (cat.composable(g, f) && mors.insert(cat.compose_unchecked(g, f)).second) grew = true;
  }
  SubcategorySpec spec{names, {}};
  for (MorId m : mors) spec.morphisms.push_back(cat.name(m));
  return spec;
}

FiniteIndexSystem random_finite_system(Rng& rng, const CategoryRef& cat, const GenParams& params) {
  const std::size_t n = 1 + below(rng, params.max_levels);
  FiniteIndexSystem sys{random_index(rng, n), cat, {}, {}};
  for (int attempt = 0; attempt < 40; ++attempt) {
    sys.objects.clear();
    for (std::size_t i = 0; i < n; ++i) sys.objects.push_back(obj(below(rng, cat->object_count())));
    if (assign_bonds(rng, sys)) return sys;
  }
  const ObjId x = obj(below(rng, cat->object_count()));
  sys.objects.assign(n, x);
  sys.bonds.clear();
  for (Level a = 0; a < n; ++a)
    for (Level b = 0; b < n; ++b)
      if (sys.index.leq(a, b)) sys.bonds[{a, b}] = cat->identity(x);
  return sys;
}

PeriodicSequence random_sequence(Rng& rng, const CategoryRef& cat, const GenParams& params) {
  const FinCategory& C = *cat;
  const std::size_t k = below(rng, params.max_prefix + 1);
  const std::size_t c = 1 + below(rng, params.max_period);
  for (int attempt = 0; attempt < 60; ++attempt) {
    std::vector<ObjId> objs;
    for (std::size_t i = 0; i < k + c; ++i) objs.push_back(obj(below(rng, C.object_count())));
    std::vector<MorId> steps;
    for (std::size_t i = 0; i < k + c; ++i) {
      const ObjId above = i + 1 < k + c ? objs[i + 1] : objs[k];
      auto h = C.hom(above, objs[i]);
      if (h.empty()) break;
      steps.push_back(h[below(rng, h.size())]);
    }
    if (steps.size() != k + c) continue;
    return PeriodicSequence{cat,
                            {objs.begin(), objs.begin() + k},
                            {steps.begin(), steps.begin() + k},
                            {objs.begin() + k, objs.end()},
                            {steps.begin() + k, steps.end()}};
  }
  const ObjId x = obj(below(rng, C.object_count()));
  auto endo = C.hom(x, x);
  std::vector<MorId> cyc;
  for (std::size_t i = 0; i < c; ++i) cyc.push_back(endo[below(rng, endo.size())]);
  return PeriodicSequence{cat, {}, {}, std::vector<ObjId>(c, x), cyc};
}

DivisibilitySequence random_divisibility(Rng& rng, const GenParams& params) {
  static constexpr std::uint64_t values[] = {1, 1, 1, 2, 3, 2, 6};
  DivisibilitySequence d;
  const std::size_t k = below(rng, params.max_prefix + 1);
  const std::size_t c = 1 + below(rng, params.max_period);
  for (std::size_t i = 0; i < k; ++i) d.prefix.push_back(values[below(rng, 7)]);
  for (std::size_t i = 0; i < c; ++i) d.cycle.push_back(values[below(rng, 7)]);
  return d;
}

FiniteSystem embed_system(const Subcategory& sub, const FiniteSystem& over_p) {
  auto o = [&](ObjId x) { return sub.object_embedding[x.index]; };
  auto m = [&](MorId x) { return sub.morphism_embedding[x.index]; };
  if (auto f = std::get_if<FiniteIndexSystem>(&over_p)) {
    FiniteIndexSystem g{f->index, sub.ambient, {}, {}};
    for (auto x : f->objects) g.objects.push_back(o(x));
    for (const auto& [key, b] : f->bonds) g.bonds.emplace(key, m(b));
    return g;
  }
  const auto& s = std::get<PeriodicSequence>(over_p);
  PeriodicSequence g{sub.ambient, {}, {}, {}, {}};
  for (auto x : s.prefix_objects) g.prefix_objects.push_back(o(x));
  for (auto x : s.prefix_steps) g.prefix_steps.push_back(m(x));
  for (auto x : s.cycle_objects) g.cycle_objects.push_back(o(x));
  for (auto x : s.cycle_steps) g.cycle_steps.push_back(m(x));
  return g;
}

Expansion GeneratedExpansion::expansion() const {
  return make_expansion(ambient, sub, apex, system, legs);
}

std::optional<GeneratedExpansion> random_expansion(Rng& rng, ExpansionShape shape,
                                                   const GenParams& params, bool mutate) {
  const CategoryRef base = share(validate_category(random_category(rng, params)));
  const FinCategory& B = *base;
  SubcategorySpec spec = random_subcategory(rng, B, params.density);
  const Subcategory P = extract_subcategory(base, spec);
  const FiniteSystem sys = embed_system(
      P, shape == ExpansionShape::finite
             ? FiniteSystem(random_finite_system(rng, P.category, params))
             : FiniteSystem(random_sequence(rng, P.category, params)));

  // Base level, its idempotent e, and the leg period.
  Level top;
  std::size_t period = 0;
  MorId e;
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    top = f->index.size() - 1;
    e = B.identity(f->objects[top]);
  } else {
    const auto& s = std::get<PeriodicSequence>(sys);
    top = s.prefix_length() + 1;
    const MorId loop = composite_bond(s, top, top + s.period());
    const std::size_t j = idempotent_exponent(B, loop);
    e = idempotent_power(B, loop);
    period = j * s.period();
  }
  const ObjId xb = level_object(sys, top);
  if (mutate) {
    std::vector<MorId> options;
    for (MorId m : B.hom(xb, xb))
      if (m != e && P.contains(m) && B.compose_unchecked(m, m) == m && B.compose_unchecked(m, e) == m &&
          B.compose_unchecked(e, m) == m)
        options.push_back(m);
    if (options.empty()) return std::nullopt;
    e = options[below(rng, options.size())];
  }

  CategoryDescription t = B.describe();
  const std::string apex_name = "X";
  t.objects.push_back(apex_name);
  t.morphisms.push_back({"id_X", apex_name, apex_name});
  t.identities.emplace_back(apex_name, "id_X");
  t.compositions.push_back({"id_X", "id_X", "id_X"});
  auto cls = [&](MorId a) { return "x_" + B.name(a); };
  std::vector<MorId> classes;
  for (std::size_t q = 0; q < B.object_count(); ++q)
    for (MorId a : B.hom(xb, obj(q)))
      if (B.compose_unchecked(a, e) == a) classes.push_back(a);
  for (MorId a : classes) {
    t.morphisms.push_back({cls(a), apex_name, B.name(B.cod(a))});
    t.compositions.push_back({cls(a), "id_X", cls(a)});
  }
  for (MorId a : classes)
    for (std::size_t u = 0; u < B.morphism_count(); ++u)
      if (B.dom(mor(u)) == B.cod(a))
        t.compositions.push_back({B.name(mor(u)), cls(a), cls(B.compose_unchecked(mor(u), a))});

  GeneratedExpansion g;
  g.ambient_raw = t;
  g.ambient = share(validate_category(t));
  g.sub = spec;
  g.apex = obj(B.object_count());
  g.mutated = mutate;
  const FinCategory& T = *g.ambient;
  auto rehome = [&](const FiniteSystem& s) -> FiniteSystem {
    if (auto f = std::get_if<FiniteIndexSystem>(&s)) {
      FiniteIndexSystem h = *f;
      h.ambient = g.ambient;
      return h;
    }
    PeriodicSequence h = std::get<PeriodicSequence>(s);
    h.ambient = g.ambient;
    return h;
  };
  g.system = rehome(sys);
  auto leg = [&](Level n, Level through) {
    return T.morphism(cls(B.compose_unchecked(composite_bond(sys, n, through), e)));
  };
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    g.legs.first = 0;
    for (Level n = 0; n < f->index.size(); ++n) g.legs.values.push_back(leg(n, top));
  } else {
    g.legs.first = 1;
    const Level last = top + period - 1;
    for (Level n = 1; n <= last; ++n) {
      Level through = top;
      while (through < n) through += period;
      g.legs.values.push_back(leg(n, through));
    }
    g.legs.loop_from = top;
  }
  return g;
}

Workspace gen_random(std::uint64_t seed, const GenParams& params) {
  check_params(params);
  Rng rng(seed);
  Workspace ws;
  const std::string tag = std::to_string(seed);
  const std::string cname = "G" + tag;
  ws.add_category(cname, random_category(rng, params));
  const CategoryRef cat = ws.categories.back().category;
  ws.subcategories.push_back({"P" + tag, cname, random_subcategory(rng, *cat, params.density)});
  ws.systems.push_back(describe_system("F" + tag, cname, random_finite_system(rng, cat, params)));
  ws.systems.push_back(describe_system("S" + tag, cname, random_sequence(rng, cat, params)));
  ws.systems.push_back(describe_system("D" + tag, random_divisibility(rng, params)));

  std::optional<GeneratedExpansion> g;
  while (!g) g = random_expansion(rng, ExpansionShape::sequence, params);
  const std::string tname = "T" + tag;
  ws.add_category(tname, g->ambient_raw);
  ws.subcategories.push_back({"Q" + tag, tname, g->sub});
  ws.systems.push_back(describe_system("E" + tag, tname, g->system));
  ws.expansions.push_back(describe_expansion("EXP" + tag, tname, "Q" + tag, "E" + tag, *g->ambient,
                                             g->apex, g->system, g->legs));
  return ws;
}

} // namespace movcat
