#include "movcat/fincat.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace movcat {

namespace {

// Each law is reported at most this many times; a trailing entry counts the rest.
constexpr std::size_t kPerLawCap = 32;

class LawLog {
public:
  explicit LawLog(Diagnostics& out) : out_(out) {}
  ~LawLog() {
    for (auto& [law, n] : overflow_)
      out_.add({Errc::law_violation, law, {}, std::to_string(n) + " further violations"});
  }

  void add(const std::string& law, std::vector<std::string> ids, std::string message = {}) {
    if (++count_[law] > kPerLawCap) {
      ++overflow_[law];
      return;
    }
    out_.add({Errc::law_violation, law, std::move(ids), std::move(message)});
  }

private:
  Diagnostics& out_;
  std::map<std::string, std::size_t> count_;
  std::map<std::string, std::size_t> overflow_;
};

} // namespace

namespace detail {

FinCategory adopt(CategoryTable table) {
  FinCategory cat;
  const std::size_t k = table.objects.size();
  cat.hom_.assign(k * k, {});
  cat.into_.assign(k, {});
  for (std::size_t i = 0; i < table.arrows.size(); ++i) {
    const auto& a = table.arrows[i];
    cat.hom_[a.dom.index * k + a.cod.index].push_back(mor(i));
    cat.into_[a.cod.index].push_back(mor(i));
    cat.morphism_index_.emplace(a.name, mor(i));
  }
  for (std::size_t i = 0; i < k; ++i) cat.object_index_.emplace(table.objects[i], obj(i));
  cat.table_ = std::move(table);
  return cat;
}

} // namespace detail

ObjId FinCategory::object(std::string_view name) const {
  if (auto o = find_object(name)) return *o;
  throw Error(Errc::unknown_object, std::string(name));
}

MorId FinCategory::morphism(std::string_view name) const {
  if (auto m = find_morphism(name)) return *m;
  throw Error(Errc::unknown_morphism, std::string(name));
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  auto it = object_index_.find(std::string(name));
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<MorId> FinCategory::find_morphism(std::string_view name) const {
  auto it = morphism_index_.find(std::string(name));
  if (it == morphism_index_.end()) return std::nullopt;
  return it->second;
}

MorId FinCategory::compose(MorId g, MorId f) const {
  if (!composable(g, f))
    throw Error(Errc::not_composable, name(g) + " after " + name(f));
  return compose_unchecked(g, f);
}

bool FinCategory::same_arrows(const FinCategory& other) const {
  if (table_.arrows.size() != other.table_.arrows.size()) return false;
  for (std::size_t i = 0; i < table_.arrows.size(); ++i) {
    const auto& a = table_.arrows[i];
    const auto& b = other.table_.arrows[i];
    if (a.name != b.name || a.dom != b.dom || a.cod != b.cod) return false;
  }
  return true;
}

CategoryDescription FinCategory::describe() const {
  CategoryDescription d;
  d.objects = table_.objects;
  for (const auto& a : table_.arrows)
    d.morphisms.push_back({a.name, table_.objects[a.dom.index], table_.objects[a.cod.index]});
  for (std::size_t o = 0; o < object_count(); ++o)
    d.identities.emplace_back(table_.objects[o], name(table_.identities[o]));
  const std::size_t n = morphism_count();
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (auto c = table_.at(g, f); c >= 0)
        d.compositions.push_back({name(mor(g)), name(mor(f)), name(mor(c))});
  return d;
}

Diagnostics check_table(const CategoryTable& t) {
  Diagnostics out;
  {
    LawLog log(out);
    const std::size_t n = t.arrows.size();
    const std::size_t k = t.objects.size();
    auto mname = [&](std::int64_t i) -> std::string {
      return (i >= 0 && static_cast<std::size_t>(i) < n) ? t.arrows[i].name : "<none>";
    };
    auto valid = [&](std::int32_t i) { return i >= 0 && static_cast<std::size_t>(i) < n; };

    if (t.identities.size() != k) {
      log.add("identity", {}, "identity table does not cover every object");
      return out;
    }
    if (t.composite.size() != n * n) {
      log.add("totality", {}, "composition table has the wrong shape");
      return out;
    }
    for (std::size_t o = 0; o < k; ++o) {
      const MorId id = t.identities[o];
      if (id.index >= n || t.arrows[id.index].dom != obj(o) || t.arrows[id.index].cod != obj(o))
        log.add("identity-endomorphism", {t.objects[o], mname(id.index)});
    }

    for (std::size_t g = 0; g < n; ++g) {
      for (std::size_t f = 0; f < n; ++f) {
        const bool composable = t.arrows[f].cod == t.arrows[g].dom;
        const std::int32_t c = t.at(g, f);
        if (c >= 0 && !valid(c)) {
          log.add("dom/cod", {mname(g), mname(f)}, "composite index out of range");
        } else if (c >= 0 && !composable) {
          log.add("composability", {mname(g), mname(f), mname(c)});
        } else if (c < 0 && composable) {
          log.add("totality", {mname(g), mname(f)});
        } else if (c >= 0 &&
                   (t.arrows[c].dom != t.arrows[f].dom || t.arrows[c].cod != t.arrows[g].cod)) {
          log.add("dom/cod", {mname(g), mname(f), mname(c)});
        }
      }
    }

    for (std::size_t f = 0; f < n; ++f) {
      const auto& a = t.arrows[f];
      if (a.cod.index >= k || a.dom.index >= k) continue;
      const MorId left = t.identities[a.cod.index];
      const MorId right = t.identities[a.dom.index];
      if (left.index < n) {
        const std::int32_t c = t.at(left.index, f);
        if (c >= 0 && static_cast<std::size_t>(c) != f)
          log.add("identity", {mname(left.index), mname(f), mname(c)});
      }
      if (right.index < n) {
        const std::int32_t c = t.at(f, right.index);
        if (c >= 0 && static_cast<std::size_t>(c) != f)
          log.add("identity", {mname(f), mname(right.index), mname(c)});
      }
    }

    // Only triples whose intermediate composites exist and chain correctly.
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t g = 0; g < n; ++g) {
        if (t.arrows[g].cod != t.arrows[h].dom) continue;
        const std::int32_t hg = t.at(h, g);
        if (!valid(hg)) continue;
        for (std::size_t f = 0; f < n; ++f) {
          if (t.arrows[f].cod != t.arrows[g].dom) continue;
          const std::int32_t gf = t.at(g, f);
          if (!valid(gf)) continue;
          const std::int32_t lhs = t.at(h, gf);
          const std::int32_t rhs = t.at(hg, f);
          if (!valid(lhs) || !valid(rhs)) continue;
          if (lhs != rhs) log.add("associativity", {mname(h), mname(g), mname(f)});
        }
      }
    }
  }
  return out;
}

CategoryTable resolve(const CategoryDescription& raw) {
  Diagnostics dup;
  Diagnostics dangling;
  CategoryTable t;
  std::map<std::string, ObjId> objects;
  std::map<std::string, MorId> morphisms;

  for (const auto& o : raw.objects) {
    if (!objects.emplace(o, obj(t.objects.size())).second) {
      dup.add({Errc::duplicate_id, "object", {o}, {}});
      continue;
    }
    t.objects.push_back(o);
  }
  auto find_obj = [&](const std::string& name, const std::string& context) -> std::optional<ObjId> {
    auto it = objects.find(name);
    if (it != objects.end()) return it->second;
    dangling.add({Errc::dangling_reference, "object", {name}, context});
    return std::nullopt;
  };
  for (const auto& m : raw.morphisms) {
    auto d = find_obj(m.dom, "dom of " + m.name);
    auto c = find_obj(m.cod, "cod of " + m.name);
    if (morphisms.count(m.name)) {
      dup.add({Errc::duplicate_id, "morphism", {m.name}, {}});
      continue;
    }
    if (!d || !c) continue;
    morphisms.emplace(m.name, mor(t.arrows.size()));
    t.arrows.push_back({m.name, *d, *c});
  }
  auto find_mor = [&](const std::string& name, const std::string& context) -> std::optional<MorId> {
    auto it = morphisms.find(name);
    if (it != morphisms.end()) return it->second;
    dangling.add({Errc::dangling_reference, "morphism", {name}, context});
    return std::nullopt;
  };

  std::vector<std::int32_t> ids(t.objects.size(), -1);
  for (const auto& [o, m] : raw.identities) {
    auto oi = find_obj(o, "identity");
    auto mi = find_mor(m, "identity of " + o);
    if (!oi || !mi) continue;
    if (ids[oi->index] >= 0) {
      dup.add({Errc::duplicate_id, "identity", {o}, {}});
      continue;
    }
    ids[oi->index] = static_cast<std::int32_t>(mi->index);
  }

  const std::size_t n = t.arrows.size();
  t.composite.assign(n * n, -1);
  for (const auto& c : raw.compositions) {
    auto g = find_mor(c.g, "composition");
    auto f = find_mor(c.f, "composition");
    auto gf = find_mor(c.gf, "composition");
    if (!g || !f || !gf) continue;
    auto& slot = t.composite[g->index * n + f->index];
    if (slot >= 0) {
      dup.add({Errc::duplicate_id, "composition", {c.g, c.f}, {}});
      continue;
    }
    slot = static_cast<std::int32_t>(gf->index);
  }

  if (!dup.ok()) throw Error(Errc::duplicate_id, dup.first().str(), dup);
  if (!dangling.ok()) throw Error(Errc::dangling_reference, dangling.first().str(), dangling);

  Diagnostics missing;
  for (std::size_t o = 0; o < ids.size(); ++o) {
    if (ids[o] < 0) missing.add({Errc::law_violation, "identity", {t.objects[o]}, "no identity declared"});
    t.identities.push_back(mor(ids[o] < 0 ? 0 : static_cast<std::size_t>(ids[o])));
  }
  if (!missing.ok()) throw Error(Errc::law_violation, missing.first().str(), missing);
  return t;
}

FinCategory validate_table(CategoryTable table) {
  if (auto d = check_table(table); !d.ok()) throw Error(Errc::law_violation, d.first().str(), d);
  return detail::adopt(std::move(table));
}

FinCategory validate_category(const CategoryDescription& raw) {
  return validate_table(resolve(raw));
}

std::vector<MorId> hom(const FinCategory& cat, std::string_view a, std::string_view b) {
  auto h = cat.hom(cat.object(a), cat.object(b));
  return {h.begin(), h.end()};
}

FinCategory dual(const FinCategory& cat) {
  CategoryTable t = cat.table();
  const std::size_t n = t.arrows.size();
  for (auto& a : t.arrows) std::swap(a.dom, a.cod);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) t.composite[g * n + f] = cat.table().at(f, g);
  return detail::adopt(std::move(t));
}

// ---------------------------------------------------------------------------

Functor identity_functor(const CategoryRef& cat) {
  Functor f{cat, cat, {}, {}};
  for (std::size_t i = 0; i < cat->object_count(); ++i) f.on_objects.push_back(obj(i));
  for (std::size_t i = 0; i < cat->morphism_count(); ++i) f.on_morphisms.push_back(mor(i));
  return f;
}

Functor compose(const Functor& g, const Functor& f) {
  if (f.target != g.source) throw Error(Errc::invalid_functor_data, "functors do not chain");
  Functor h{f.source, g.target, {}, {}};
  for (ObjId o : f.on_objects) h.on_objects.push_back(g(o));
  for (MorId m : f.on_morphisms) h.on_morphisms.push_back(g(m));
  return h;
}

NatTrans identity_transformation(const Functor& f) {
  NatTrans psi{f, f, {}};
  for (ObjId o : f.on_objects) psi.components.push_back(f.target->identity(o));
  return psi;
}

Diagnostics validate_functor(const Functor& F) {
  Diagnostics out;
  if (!F.source || !F.target) {
    out.add({Errc::invalid_functor_data, "shape", {}, "missing source or target"});
    return out;
  }
  const auto& S = *F.source;
  const auto& T = *F.target;
  if (F.on_objects.size() != S.object_count() || F.on_morphisms.size() != S.morphism_count()) {
    out.add({Errc::invalid_functor_data, "shape", {}, "object or morphism map is not total"});
    return out;
  }
  for (ObjId o : F.on_objects)
    if (o.index >= T.object_count()) {
      out.add({Errc::invalid_functor_data, "shape", {}, "object image out of range"});
      return out;
    }
  for (MorId m : F.on_morphisms)
    if (m.index >= T.morphism_count()) {
      out.add({Errc::invalid_functor_data, "shape", {}, "morphism image out of range"});
      return out;
    }

  bool shape_ok = true;
  for (std::size_t i = 0; i < S.morphism_count(); ++i) {
    const MorId m = mor(i);
    if (T.dom(F(m)) != F(S.dom(m)) || T.cod(F(m)) != F(S.cod(m))) {
      out.add({Errc::law_violation, "dom/cod", {S.name(m), T.name(F(m))}, {}});
      shape_ok = false;
    }
  }
  for (std::size_t o = 0; o < S.object_count(); ++o) {
    if (F(S.identity(obj(o))) != T.identity(F(obj(o))))
      out.add({Errc::law_violation, "identity", {S.name(obj(o))}, {}});
  }
  if (!shape_ok) return out;
  for (std::size_t g = 0; g < S.morphism_count(); ++g) {
    for (std::size_t f = 0; f < S.morphism_count(); ++f) {
      if (!S.composable(mor(g), mor(f))) continue;
      const MorId lhs = F(S.compose_unchecked(mor(g), mor(f)));
      const MorId rhs = T.compose_unchecked(F(mor(g)), F(mor(f)));
      if (lhs != rhs)
        out.add({Errc::law_violation, "composition", {S.name(mor(g)), S.name(mor(f))},
                 T.name(lhs) + " != " + T.name(rhs)});
    }
  }
  return out;
}

Diagnostics validate_nat_trans(const NatTrans& psi) {
  Diagnostics out;
  const Functor& F = psi.from;
  const Functor& G = psi.to;
  if (F.source != G.source || F.target != G.target) {
    out.add({Errc::invalid_functor_data, "shape", {}, "functors are not parallel"});
    return out;
  }
  out.append(validate_functor(F));
  out.append(validate_functor(G));
  if (!out.ok()) return out;
  const auto& S = *F.source;
  const auto& T = *F.target;
  if (psi.components.size() != S.object_count()) {
    out.add({Errc::invalid_functor_data, "shape", {}, "components are not total"});
    return out;
  }
  for (std::size_t o = 0; o < S.object_count(); ++o) {
    const MorId c = psi.components[o];
    if (c.index >= T.morphism_count() || T.dom(c) != F(obj(o)) || T.cod(c) != G(obj(o))) {
      out.add({Errc::law_violation, "component", {S.name(obj(o))}, {}});
      return out;
    }
  }
  for (std::size_t i = 0; i < S.morphism_count(); ++i) {
    const MorId m = mor(i);
    const MorId lhs = T.compose_unchecked(G(m), psi.components[S.dom(m).index]);
    const MorId rhs = T.compose_unchecked(psi.components[S.cod(m).index], F(m));
    if (lhs != rhs) out.add({Errc::law_violation, "naturality", {S.name(m)}, {}});
  }
  return out;
}

// ---------------------------------------------------------------------------

Diagnostics is_subcategory(const FinCategory& cat, const SubcategorySpec& spec) {
  Diagnostics out;
  std::set<ObjId> objects;
  std::set<MorId> morphisms;
  for (const auto& o : spec.objects) {
    if (auto id = cat.find_object(o)) objects.insert(*id);
    else out.add({Errc::dangling_reference, "object", {o}, {}});
  }
  for (const auto& m : spec.morphisms) {
    if (auto id = cat.find_morphism(m)) morphisms.insert(*id);
    else out.add({Errc::dangling_reference, "morphism", {m}, {}});
  }
  if (!out.ok()) return out;
  for (ObjId o : objects)
    if (!morphisms.count(cat.identity(o)))
      out.add({Errc::not_closed, "identities", {cat.name(o), cat.name(cat.identity(o))}, {}});
  for (MorId m : morphisms)
    if (!objects.count(cat.dom(m)) || !objects.count(cat.cod(m)))
      out.add({Errc::not_closed, "dom/cod", {cat.name(m)}, {}});
  for (MorId g : morphisms)
    for (MorId f : morphisms)
      if (cat.composable(g, f) && !morphisms.count(cat.compose_unchecked(g, f)))
        out.add({Errc::not_closed, "composition",
                 {cat.name(g), cat.name(f), cat.name(cat.compose_unchecked(g, f))}, {}});
  return out;
}

bool Subcategory::contains(ObjId o) const { return object_lift[o.index] >= 0; }
bool Subcategory::contains(MorId m) const { return morphism_lift[m.index] >= 0; }

std::optional<ObjId> Subcategory::lift(ObjId o) const {
  if (!contains(o)) return std::nullopt;
  return obj(static_cast<std::size_t>(object_lift[o.index]));
}

std::optional<MorId> Subcategory::lift(MorId m) const {
  if (!contains(m)) return std::nullopt;
  return mor(static_cast<std::size_t>(morphism_lift[m.index]));
}

Subcategory extract_subcategory(const CategoryRef& ambient, const SubcategorySpec& spec) {
  if (auto d = is_subcategory(*ambient, spec); !d.ok())
    throw Error(Errc::invalid_subcategory, d.first().str(), d);
  const FinCategory& T = *ambient;
  Subcategory sub;
  sub.ambient = ambient;
  sub.object_lift.assign(T.object_count(), -1);
  sub.morphism_lift.assign(T.morphism_count(), -1);
  for (const auto& o : spec.objects) sub.object_lift[T.object(o).index] = 0;
  for (const auto& m : spec.morphisms) sub.morphism_lift[T.morphism(m).index] = 0;

  CategoryTable t;
  for (std::size_t o = 0; o < T.object_count(); ++o) {
    if (sub.object_lift[o] < 0) continue;
    sub.object_lift[o] = static_cast<std::int32_t>(t.objects.size());
    sub.object_embedding.push_back(obj(o));
    t.objects.push_back(T.name(obj(o)));
  }
  for (std::size_t m = 0; m < T.morphism_count(); ++m) {
    if (sub.morphism_lift[m] < 0) continue;
    sub.morphism_lift[m] = static_cast<std::int32_t>(t.arrows.size());
    sub.morphism_embedding.push_back(mor(m));
    t.arrows.push_back({T.name(mor(m)), obj(sub.object_lift[T.dom(mor(m)).index]),
                        obj(sub.object_lift[T.cod(mor(m)).index])});
  }
  for (ObjId o : sub.object_embedding)
    t.identities.push_back(mor(sub.morphism_lift[T.identity(o).index]));
  const std::size_t n = t.arrows.size();
  t.composite.assign(n * n, -1);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      const MorId ag = sub.morphism_embedding[g];
      const MorId af = sub.morphism_embedding[f];
      if (T.composable(ag, af))
        t.composite[g * n + f] = sub.morphism_lift[T.compose_unchecked(ag, af).index];
    }
  sub.category = share(detail::adopt(std::move(t)));
  return sub;
}

SubcategorySpec full_subcategory(const FinCategory& cat, const std::vector<std::string>& objects) {
  SubcategorySpec spec;
  std::set<ObjId> keep;
  for (std::size_t o = 0; o < cat.object_count(); ++o)
    if (std::find(objects.begin(), objects.end(), cat.name(obj(o))) != objects.end()) {
      keep.insert(obj(o));
      spec.objects.push_back(cat.name(obj(o)));
    }
  for (std::size_t m = 0; m < cat.morphism_count(); ++m)
    if (keep.count(cat.dom(mor(m))) && keep.count(cat.cod(mor(m))))
      spec.morphisms.push_back(cat.name(mor(m)));
  return spec;
}

SubcategorySpec whole(const FinCategory& cat) {
  SubcategorySpec spec;
  spec.objects = cat.table().objects;
  for (const auto& a : cat.table().arrows) spec.morphisms.push_back(a.name);
  return spec;
}

// ---------------------------------------------------------------------------

ObjId Product::object_of(const std::vector<ObjId>& c) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i]->object_count() + c[i].index;
  return obj(idx);
}

MorId Product::morphism_of(const std::vector<MorId>& c) const {
  std::size_t idx = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) idx = idx * factors[i]->morphism_count() + c[i].index;
  return mor(idx);
}

std::vector<ObjId> Product::components(ObjId o) const {
  std::vector<ObjId> c(factors.size());
  std::size_t idx = o.index;
  for (std::size_t i = factors.size(); i-- > 0;) {
    c[i] = obj(idx % factors[i]->object_count());
    idx /= factors[i]->object_count();
  }
  return c;
}

std::vector<MorId> Product::components(MorId m) const {
  std::vector<MorId> c(factors.size());
  std::size_t idx = m.index;
  for (std::size_t i = factors.size(); i-- > 0;) {
    c[i] = mor(idx % factors[i]->morphism_count());
    idx /= factors[i]->morphism_count();
  }
  return c;
}

namespace {

std::string tuple_name(const std::vector<std::string>& parts) {
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i];
  return s + ")";
}

} // namespace

Product product(const std::vector<CategoryRef>& cats) {
  if (cats.empty()) throw Error(Errc::empty_factor_list, "product of no categories");
  Product p;
  p.factors = cats;
  std::size_t k = 1, n = 1;
  for (const auto& c : cats) {
    k *= c->object_count();
    n *= c->morphism_count();
  }
  CategoryTable t;
  for (std::size_t o = 0; o < k; ++o) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < cats.size(); ++i) parts.push_back(cats[i]->name(p.components(obj(o))[i]));
    t.objects.push_back(tuple_name(parts));
  }
  std::vector<std::vector<MorId>> comps(n);
  for (std::size_t m = 0; m < n; ++m) {
    comps[m] = p.components(mor(m));
    std::vector<std::string> parts;
    std::vector<ObjId> d, c;
    for (std::size_t i = 0; i < cats.size(); ++i) {
      parts.push_back(cats[i]->name(comps[m][i]));
      d.push_back(cats[i]->dom(comps[m][i]));
      c.push_back(cats[i]->cod(comps[m][i]));
    }
    t.arrows.push_back({tuple_name(parts), p.object_of(d), p.object_of(c)});
  }
  for (std::size_t o = 0; o < k; ++o) {
    auto oc = p.components(obj(o));
    std::vector<MorId> ids;
    for (std::size_t i = 0; i < cats.size(); ++i) ids.push_back(cats[i]->identity(oc[i]));
    t.identities.push_back(p.morphism_of(ids));
  }
  t.composite.assign(n * n, -1);
  std::vector<MorId> gf(cats.size());
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (t.arrows[f].cod != t.arrows[g].dom) continue;
      for (std::size_t i = 0; i < cats.size(); ++i)
        gf[i] = cats[i]->compose_unchecked(comps[g][i], comps[f][i]);
      t.composite[g * n + f] = static_cast<std::int32_t>(p.morphism_of(gf).index);
    }
  p.category = share(detail::adopt(std::move(t)));
  for (std::size_t i = 0; i < cats.size(); ++i) {
    Functor proj{p.category, cats[i], {}, {}};
    for (std::size_t o = 0; o < k; ++o) proj.on_objects.push_back(p.components(obj(o))[i]);
    for (std::size_t m = 0; m < n; ++m) proj.on_morphisms.push_back(comps[m][i]);
    p.projections.push_back(std::move(proj));
  }
  return p;
}

Functor product_section(const Product& prod, std::size_t slot, const std::vector<ObjId>& fixed) {
  const auto& factor = prod.factors.at(slot);
  Functor J{factor, prod.category, {}, {}};
  std::vector<ObjId> oc = fixed;
  for (std::size_t o = 0; o < factor->object_count(); ++o) {
    oc[slot] = obj(o);
    J.on_objects.push_back(prod.object_of(oc));
  }
  std::vector<MorId> mc(prod.factors.size());
  for (std::size_t i = 0; i < prod.factors.size(); ++i)
    if (i != slot) mc[i] = prod.factors[i]->identity(fixed[i]);
  for (std::size_t m = 0; m < factor->morphism_count(); ++m) {
    mc[slot] = mor(m);
    J.on_morphisms.push_back(prod.morphism_of(mc));
  }
  return J;
}

} // namespace movcat
