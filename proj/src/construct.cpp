#include "movcat/construct.hpp"

#include <deque>

namespace movcat {

std::optional<ObjId> CommaCategory::object_for(MorId ambient_morphism) const {
  const std::int32_t o = object_lookup[ambient_morphism.index];
  if (o < 0) return std::nullopt;
  return obj(static_cast<std::size_t>(o));
}

std::optional<MorId> CommaCategory::morphism_for(MorId u, ObjId source) const {
  const FinCategory& C = *category;
  for (std::size_t o = 0; o < C.object_count(); ++o)
    for (MorId m : C.hom(source, obj(o)))
      if (morphism_table[m.index] == u) return m;
  return std::nullopt;
}

CommaCategory comma_category(const CategoryRef& ambient, const SubcategorySpec& sub, ObjId apex) {
  const FinCategory& T = *ambient;
  if (apex.index >= T.object_count()) throw Error(Errc::unknown_object, "apex");
  if (auto d = is_subcategory(T, sub); !d.ok())
    throw Error(Errc::invalid_subcategory, d.first().str(), d);

  std::vector<char> in_objects(T.object_count(), 0);
  std::vector<char> in_morphisms(T.morphism_count(), 0);
  for (const auto& o : sub.objects) in_objects[T.object(o).index] = 1;
  for (const auto& m : sub.morphisms) in_morphisms[T.morphism(m).index] = 1;

  CommaCategory comma;
  comma.ambient = ambient;
  comma.apex = apex;
  comma.object_lookup.assign(T.morphism_count(), -1);

  CategoryTable t;
  for (std::size_t p = 0; p < T.object_count(); ++p) {
    if (!in_objects[p]) continue;
    for (MorId f : T.hom(apex, obj(p))) {
      comma.object_lookup[f.index] = static_cast<std::int32_t>(t.objects.size());
      comma.object_table.push_back(f);
      t.objects.push_back(T.name(f));
    }
  }

  // Comma morphisms grouped by ambient u, then by source comma object.
  std::vector<ObjId> sources;
  for (std::size_t u = 0; u < T.morphism_count(); ++u) {
    if (!in_morphisms[u]) continue;
    const MorId um = mor(u);
    for (std::size_t c = 0; c < comma.object_table.size(); ++c) {
      const MorId p = comma.object_table[c];
      if (T.cod(p) != T.dom(um)) continue;
      const MorId target = T.compose_unchecked(um, p);
      t.arrows.push_back({T.name(um) + "@" + T.name(p), obj(c),
                          obj(static_cast<std::size_t>(comma.object_lookup[target.index]))});
      comma.morphism_table.push_back(um);
      sources.push_back(obj(c));
    }
  }

  const std::size_t n = t.arrows.size();
  auto find = [&](MorId u, ObjId source) -> std::int32_t {
    for (std::size_t i = 0; i < n; ++i)
      if (comma.morphism_table[i] == u && sources[i] == source) return static_cast<std::int32_t>(i);
    return -1;
  };
  for (std::size_t c = 0; c < comma.object_table.size(); ++c) {
    const MorId id = T.identity(T.cod(comma.object_table[c]));
    t.identities.push_back(mor(static_cast<std::size_t>(find(id, obj(c)))));
  }
  t.composite.assign(n * n, -1);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (t.arrows[f].cod != t.arrows[g].dom) continue;
      const MorId u = T.compose_unchecked(comma.morphism_table[g], comma.morphism_table[f]);
      t.composite[g * n + f] = find(u, sources[f]);
    }
  comma.category = share(detail::adopt(std::move(t)));
  return comma;
}

// ---------------------------------------------------------------------------

std::optional<MorId> PullbackData::mediator(MorId to_x, MorId to_y) const {
  for (const auto& c : mediators)
    if (c.to_x == to_x && c.to_y == to_y) return c.mediator;
  return std::nullopt;
}

std::optional<PullbackData> find_pullback(const FinCategory& cat, MorId f, MorId g) {
  if (cat.cod(f) != cat.cod(g))
    throw Error(Errc::codomain_mismatch, cat.name(f) + ", " + cat.name(g));
  const ObjId X = cat.dom(f);
  const ObjId Y = cat.dom(g);

  for (std::size_t a = 0; a < cat.object_count(); ++a) {
    const ObjId A = obj(a);
    for (MorId px : cat.hom(A, X)) {
      for (MorId py : cat.hom(A, Y)) {
        if (cat.compose_unchecked(f, px) != cat.compose_unchecked(g, py)) continue;
        PullbackData data{A, px, py, {}};
        bool universal = true;
        for (std::size_t u = 0; u < cat.object_count() && universal; ++u) {
          const ObjId U = obj(u);
          for (MorId ux : cat.hom(U, X)) {
            for (MorId uy : cat.hom(U, Y)) {
              if (cat.compose_unchecked(f, ux) != cat.compose_unchecked(g, uy)) continue;
              std::optional<MorId> found;
              std::size_t count = 0;
              for (MorId med : cat.hom(U, A)) {
                if (cat.compose_unchecked(px, med) == ux && cat.compose_unchecked(py, med) == uy) {
                  if (!found) found = med;
                  ++count;
                }
              }
              if (count != 1) {
                universal = false;
                break;
              }
              data.mediators.push_back({U, ux, uy, *found});
            }
            if (!universal) break;
          }
        }
        if (universal) return data;
      }
    }
  }
  return std::nullopt;
}

bool is_initial(const FinCategory& cat, ObjId o) {
  for (std::size_t b = 0; b < cat.object_count(); ++b)
    if (cat.hom(o, obj(b)).size() != 1) return false;
  return true;
}

std::optional<ObjId> find_initial(const FinCategory& cat) {
  for (std::size_t o = 0; o < cat.object_count(); ++o)
    if (is_initial(cat, obj(o))) return obj(o);
  return std::nullopt;
}

Diagnostics check_null_family(const FinCategory& cat, const NullFamily& nulls) {
  Diagnostics out;
  const std::size_t k = cat.object_count();
  if (nulls.object_count != k || nulls.zeros.size() != k * k) {
    out.add({Errc::invalid_null_family, "shape", {}, "family is not total"});
    return out;
  }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const MorId z = nulls(obj(a), obj(b));
      if (z.index >= cat.morphism_count() || cat.dom(z) != obj(a) || cat.cod(z) != obj(b)) {
        out.add({Errc::invalid_null_family, "dom/cod", {cat.name(obj(a)), cat.name(obj(b))}, {}});
        return out;
      }
    }
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      const MorId z = nulls(obj(a), obj(b));
      for (std::size_t i = 0; i < cat.morphism_count(); ++i) {
        const MorId m = mor(i);
        if (cat.dom(m) == obj(b) && cat.compose_unchecked(m, z) != nulls(obj(a), cat.cod(m)))
          out.add({Errc::invalid_null_family, "left absorption", {cat.name(m), cat.name(z)}, {}});
        if (cat.cod(m) == obj(a) && cat.compose_unchecked(z, m) != nulls(cat.dom(m), obj(b)))
          out.add({Errc::invalid_null_family, "right absorption", {cat.name(z), cat.name(m)}, {}});
      }
    }
  return out;
}

namespace {

// Backtracking over hom-pairs; assigning 0_{AB} forces f∘0_{AB} and 0_{AB}∘g,
// which are pushed through a queue until a fixpoint or a clash.
class NullSearch {
public:
  explicit NullSearch(const FinCategory& cat) : cat_(cat), k_(cat.object_count()) {}

  std::optional<NullFamily> run() {
    for (std::size_t a = 0; a < k_; ++a)
      for (std::size_t b = 0; b < k_; ++b)
        if (cat_.hom(obj(a), obj(b)).empty()) return std::nullopt;
    std::vector<std::int32_t> z(k_ * k_, -1);
    if (!solve(z)) return std::nullopt;
    NullFamily family;
    family.object_count = k_;
    for (auto v : z) family.zeros.push_back(mor(static_cast<std::size_t>(v)));
    return family;
  }

private:
  bool propagate(std::vector<std::int32_t>& z, std::size_t a, std::size_t b, MorId value) const {
    std::deque<std::pair<std::size_t, std::size_t>> queue;
    auto assign = [&](std::size_t x, std::size_t y, MorId v) {
      auto& slot = z[x * k_ + y];
      if (slot < 0) {
        slot = static_cast<std::int32_t>(v.index);
        queue.emplace_back(x, y);
        return true;
      }
      return slot == static_cast<std::int32_t>(v.index);
    };
    if (!assign(a, b, value)) return false;
    while (!queue.empty()) {
      auto [x, y] = queue.front();
      queue.pop_front();
      const MorId v = mor(static_cast<std::size_t>(z[x * k_ + y]));
      for (std::size_t i = 0; i < cat_.morphism_count(); ++i) {
        const MorId m = mor(i);
        if (cat_.dom(m) == obj(y) && !assign(x, cat_.cod(m).index, cat_.compose_unchecked(m, v)))
          return false;
        if (cat_.cod(m) == obj(x) && !assign(cat_.dom(m).index, y, cat_.compose_unchecked(v, m)))
          return false;
      }
    }
    return true;
  }

  bool solve(std::vector<std::int32_t>& z) const {
    std::size_t slot = 0;
    while (slot < z.size() && z[slot] >= 0) ++slot;
    if (slot == z.size()) return true;
    const std::size_t a = slot / k_, b = slot % k_;
    for (MorId candidate : cat_.hom(obj(a), obj(b))) {
      auto trial = z;
      if (propagate(trial, a, b, candidate) && solve(trial)) {
        z = std::move(trial);
        return true;
      }
    }
    return false;
  }

  const FinCategory& cat_;
  std::size_t k_;
};

} // namespace

std::optional<NullFamily> find_null_family(const FinCategory& cat) {
  return NullSearch(cat).run();
}

std::optional<std::pair<MorId, MorId>> find_domination(const FinCategory& cat, ObjId y, ObjId x) {
  if (y.index >= cat.object_count() || x.index >= cat.object_count())
    throw Error(Errc::unknown_object, "domination pair");
  for (MorId f : cat.hom(x, y))
    for (MorId g : cat.hom(y, x))
      if (cat.compose_unchecked(f, g) == cat.identity(y)) return std::make_pair(f, g);
  return std::nullopt;
}

} // namespace movcat
