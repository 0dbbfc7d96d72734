#include "doctest.h"
#include "support.hpp"

using namespace movcat;
using namespace support;

namespace {

SubcategorySpec full(const FinCategory& c, std::vector<std::string> objects) {
  SubcategorySpec s{objects, {}};
  for (std::size_t i = 0; i < c.morphism_count(); ++i) {
    const bool d = std::find(objects.begin(), objects.end(), c.name(c.dom(mor(i)))) != objects.end();
    const bool e = std::find(objects.begin(), objects.end(), c.name(c.cod(mor(i)))) != objects.end();
    if (d && e) s.morphisms.push_back(c.name(mor(i)));
  }
  return s;
}

bool brute_initial(const FinCategory& c, ObjId o) {
  for (std::size_t x = 0; x < c.object_count(); ++x)
    if (c.hom(o, obj(x)).size() != 1) return false;
  return true;
}

// Every total assignment, checked against both absorption laws.
bool brute_nulls(const FinCategory& c) {
  const std::size_t k = c.object_count();
  std::vector<std::vector<MorId>> homs;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
        const auto h = c.hom(obj(a), obj(b));
        homs.emplace_back(h.begin(), h.end());
      }
  std::vector<std::size_t> pick(homs.size(), 0);
  for (const auto& h : homs)
    if (h.empty()) return false;
  while (true) {
    auto z = [&](std::size_t a, std::size_t b) { return homs[a * k + b][pick[a * k + b]]; };
    bool ok = true;
    for (std::size_t a = 0; a < k && ok; ++a)
      for (std::size_t b = 0; b < k && ok; ++b)
        for (std::size_t i = 0; i < c.morphism_count() && ok; ++i) {
          const MorId m = mor(i);
          if (c.dom(m) == obj(b) && c.compose(m, z(a, b)) != z(a, c.cod(m).index)) ok = false;
          if (c.cod(m) == obj(a) && c.compose(z(a, b), m) != z(c.dom(m).index, b)) ok = false;
        }
    if (ok) return true;
    std::size_t i = 0;
    while (i < pick.size() && ++pick[i] == homs[i].size()) pick[i++] = 0;
    if (i == pick.size()) return false;
  }
}

// Direct universal-property check of a proposed pullback square.
bool is_pullback(const FinCategory& c, MorId f, MorId g, ObjId apex, MorId px, MorId py) {
  if (c.compose(f, px) != c.compose(g, py)) return false;
  for (std::size_t u = 0; u < c.object_count(); ++u)
    for (MorId ux : c.hom(obj(u), c.dom(f)))
      for (MorId uy : c.hom(obj(u), c.dom(g))) {
        if (c.compose(f, ux) != c.compose(g, uy)) continue;
        std::size_t count = 0;
        for (MorId h : c.hom(obj(u), apex))
          if (c.compose(px, h) == ux && c.compose(py, h) == uy) ++count;
        if (count != 1) return false;
      }
  return true;
}

bool brute_pullback_exists(const FinCategory& c, MorId f, MorId g) {
  for (std::size_t a = 0; a < c.object_count(); ++a)
    for (MorId px : c.hom(obj(a), c.dom(f)))
      for (MorId py : c.hom(obj(a), c.dom(g)))
        if (is_pullback(c, f, g, obj(a), px, py)) return true;
  return false;
}

} // namespace

TEST_CASE("comma category examples") {
  const auto b = fix("FIX-B");
  const CommaCategory c0 = comma_category(b, {{"1", "2"}, {"id_1", "id_2"}}, O(*b, "0"));
  CHECK(c0.category->object_count() == 2);
  CHECK(c0.category->morphism_count() == 2);
  CHECK(names(*b, c0.object_table) == std::vector<std::string>{"le01", "le02"});

  const CommaCategory c1 = comma_category(b, {{"1", "2"}, {"id_1", "id_2"}}, O(*b, "1"));
  CHECK(c1.category->object_count() == 1);
  CHECK(c1.category->morphism_count() == 1);

  const auto a = fix("FIX-A");
  const CommaCategory ca = comma_category(a, full(*a, {"s2"}), O(*a, "s2"));
  CHECK(ca.category->object_count() == 4);
  CHECK(ca.category->morphism_count() == 16);
  CHECK(check_table(ca.category->table()).ok());
  const auto sw = ca.object_for(M(*a, "swap"));
  REQUIRE(sw);
  const auto u = ca.morphism_for(M(*a, "const_a"), *sw);
  REQUIRE(u);
  CHECK(ca.category->name(*u) == "const_a@swap");
  CHECK(ca.category->cod(*u) == *ca.object_for(M(*a, "const_a")));

  CHECK_THROWS_AS(comma_category(a, {{"s2"}, {"id_s2", "const_a", "swap"}}, O(*a, "s2")), Error);
}

TEST_CASE("comma category sizes match a pair count") {
  for (std::uint64_t s = 0; s < 60; ++s) {
    const auto c = small_category(s, 16);
    Rng rng(s);
    const SubcategorySpec sub = random_subcategory(rng, *c, 0.5);
    const auto sub_ok = is_subcategory(*c, sub);
    REQUIRE(sub_ok.ok());
    for (std::size_t x = 0; x < c->object_count(); ++x) {
      std::size_t objects = 0, morphisms = 0;
      for (const auto& po : sub.objects) {
        objects += c->hom(obj(x), c->object(po)).size();
        for (const auto& u : sub.morphisms)
          if (c->dom(c->morphism(u)) == c->object(po)) morphisms += c->hom(obj(x), c->object(po)).size();
      }
      const CommaCategory cc = comma_category(c, sub, obj(x));
      CAPTURE(s);
      CHECK(cc.category->object_count() == objects);
      CHECK(cc.category->morphism_count() == morphisms);
      CHECK(check_table(cc.category->table()).ok());
    }
  }
}

TEST_CASE("pullbacks") {
  const auto bp = fix("FIX-B+");
  const auto pb = find_pullback(*bp, M(*bp, "le13"), M(*bp, "le23"));
  REQUIRE(pb);
  CHECK(bp->name(pb->apex) == "0");
  CHECK(bp->name(pb->proj_x) == "le01");
  CHECK(bp->name(pb->proj_y) == "le02");

  const auto b = fix("FIX-B");
  const auto ids = find_pullback(*b, M(*b, "id_1"), M(*b, "id_1"));
  REQUIRE(ids);
  CHECK(b->name(ids->apex) == "1");
  CHECK(b->name(ids->proj_x) == "id_1");
  CHECK(b->name(ids->proj_y) == "id_1");

  const auto mixed = find_pullback(*b, M(*b, "le01"), M(*b, "id_1"));
  REQUIRE(mixed);
  CHECK(b->name(mixed->apex) == "0");
  CHECK(b->name(mixed->proj_x) == "id_0");
  CHECK(b->name(mixed->proj_y) == "le01");

  const auto a = fix("FIX-A");
  CHECK_FALSE(find_pullback(*a, M(*a, "pt_a"), M(*a, "pt_b")));
  CHECK_THROWS_AS(find_pullback(*b, M(*b, "id_1"), M(*b, "id_2")), Error);
}

TEST_CASE("pullback search agrees with the universal property") {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto c = small_category(s, 14);
    for (std::size_t f = 0; f < c->morphism_count(); ++f)
      for (std::size_t g = 0; g < c->morphism_count(); ++g) {
        if (c->cod(mor(f)) != c->cod(mor(g))) continue;
        const auto p = find_pullback(*c, mor(f), mor(g));
        CAPTURE(s);
        CHECK(p.has_value() == brute_pullback_exists(*c, mor(f), mor(g)));
        if (p) {
          CHECK(is_pullback(*c, mor(f), mor(g), p->apex, p->proj_x, p->proj_y));
          for (const auto& cone : p->mediators) {
            CHECK(c->compose(p->proj_x, cone.mediator) == cone.to_x);
            CHECK(c->compose(p->proj_y, cone.mediator) == cone.to_y);
          }
        }
      }
  }
}

TEST_CASE("initial objects") {
  CHECK(fix("FIX-B")->name(*find_initial(*fix("FIX-B"))) == "0");
  CHECK_FALSE(find_initial(*fix("FIX-A")));
  const auto c = fix("FIX-C");
  REQUIRE(find_initial(*c));
  CHECK(c->name(*find_initial(*c)) == "one");
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto r = small_category(s, 20);
    for (std::size_t o = 0; o < r->object_count(); ++o) CHECK(is_initial(*r, obj(o)) == brute_initial(*r, obj(o)));
  }
}

TEST_CASE("null families") {
  const auto c = fix("FIX-C");
  const auto z = find_null_family(*c);
  REQUIRE(z);
  CHECK(check_null_family(*c, *z).ok());
  CHECK(c->name((*z)(O(*c, "two"), O(*c, "two"))) == "zero");
  CHECK(c->name((*z)(O(*c, "one"), O(*c, "two"))) == "in");
  CHECK(c->name((*z)(O(*c, "two"), O(*c, "one"))) == "out");
  CHECK(c->name((*z)(O(*c, "one"), O(*c, "one"))) == "id_one");
  CHECK_FALSE(find_null_family(*fix("FIX-B")));
  CHECK_FALSE(find_null_family(*fix("FIX-A")));

  NullFamily broken = *z;
  broken.zeros[O(*c, "two").index * 2 + O(*c, "two").index] = M(*c, "id_two");
  const Diagnostics d = check_null_family(*c, broken);
  CHECK(d.has(Errc::invalid_null_family));

  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto r = small_category(s, 14);
    const auto found = find_null_family(*r);
    CAPTURE(s);
    CHECK(found.has_value() == brute_nulls(*r));
    if (found) CHECK(check_null_family(*r, *found).ok());
  }
}

TEST_CASE("domination") {
  const auto a = fix("FIX-A");
  const auto d = find_domination(*a, O(*a, "s1"), O(*a, "s2"));
  REQUIRE(d);
  CHECK(a->name(d->first) == "collapse");
  CHECK(a->name(d->second) == "pt_a");
  const auto b = fix("FIX-B");
  CHECK_FALSE(find_domination(*b, O(*b, "1"), O(*b, "2")));
  for (std::size_t o = 0; o < a->object_count(); ++o) {
    const auto self = find_domination(*a, obj(o), obj(o));
    REQUIRE(self);
    CHECK(a->is_identity(self->first));
    CHECK(a->is_identity(self->second));
  }
}
