#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace movcat;
using namespace support;

namespace {

// Functions between {*} and {a,b}, composed by hand.
struct SetMap {
  std::string name;
  int dom, cod; // set sizes
  std::vector<int> f;
};

const std::vector<SetMap> kFixA = {
    {"id_s1", 1, 1, {0}},   {"id_s2", 2, 2, {0, 1}},  {"collapse", 2, 1, {0, 0}}, {"swap", 2, 2, {1, 0}},
    {"const_a", 2, 2, {0, 0}}, {"const_b", 2, 2, {1, 1}}, {"pt_a", 1, 2, {0}},        {"pt_b", 1, 2, {1}},
};

} // namespace

TEST_CASE("FIX-A matches the function-composition table") {
  const auto a = fix("FIX-A");
  CHECK(a->morphism_count() == 8);
  for (const auto& g : kFixA)
    for (const auto& f : kFixA) {
      if (f.cod != g.dom) continue;
      std::vector<int> gf;
      for (int x : f.f) gf.push_back(g.f[x]);
      const auto it = std::find_if(kFixA.begin(), kFixA.end(),
                                   [&](const SetMap& m) { return m.dom == f.dom && m.cod == g.cod && m.f == gf; });
      REQUIRE(it != kFixA.end());
      CHECK(a->name(a->compose(M(*a, g.name), M(*a, f.name))) == it->name);
    }
}

TEST_CASE("fixture categories validate and agree with the brute-force law checker") {
  for (const auto& e : fixtures().categories) {
    CAPTURE(e.name);
    CHECK(check_table(e.category->table()).ok());
    CHECK(oracle::violated_laws(e.category->table()).empty());
  }
  const auto b = fix("FIX-B");
  CHECK(b->morphism_count() == 5);
  CHECK(fix("FIX-C")->morphism_count() == 5);
}

TEST_CASE("swap after swap declared as swap breaks the identity law") {
  CategoryDescription raw = fix("FIX-A")->describe();
  for (auto& c : raw.compositions)
    if (c.g == "swap" && c.f == "swap") c.gf = "swap";
  try {
    validate_category(raw);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::law_violation);
    CHECK(e.details().has_law("associativity"));
  }
  // Editing the identity row itself names the identity law.
  for (auto& c : raw.compositions)
    if (c.g == "id_s2" && c.f == "swap") c.gf = "const_a";
  try {
    validate_category(raw);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.details().has_law("identity"));
  }
}

TEST_CASE("name-level errors") {
  CategoryDescription raw = fix("FIX-B")->describe();
  auto dup = raw;
  dup.morphisms.push_back(dup.morphisms.front());
  CHECK_THROWS_AS(validate_category(dup), Error);
  try {
    validate_category(dup);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::duplicate_id);
  }
  auto dangling = raw;
  dangling.compositions.push_back({"le01", "nope", "le01"});
  try {
    validate_category(dangling);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::dangling_reference);
  }
  auto missing = raw;
  missing.compositions.pop_back();
  try {
    validate_category(missing);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.details().has_law("totality"));
  }
}

TEST_CASE("compose") {
  const auto a = fix("FIX-A");
  CHECK(a->compose(M(*a, "id_s2"), M(*a, "const_a")) == M(*a, "const_a"));
  CHECK(a->compose(M(*a, "collapse"), M(*a, "pt_a")) == M(*a, "id_s1"));
  CHECK(a->compose(M(*a, "swap"), M(*a, "const_a")) == M(*a, "const_b"));
  CHECK(a->compose(M(*a, "swap"), M(*a, "pt_a")) == M(*a, "pt_b"));
  CHECK_THROWS_AS(a->compose(M(*a, "collapse"), M(*a, "collapse")), Error);
}

TEST_CASE("hom") {
  const auto a = fix("FIX-A");
  const auto b = fix("FIX-B");
  CHECK(hom(*a, "s1", "s2") == std::vector{M(*a, "pt_a"), M(*a, "pt_b")});
  CHECK(hom(*b, "1", "2").empty());
  CHECK(names(*a, hom(*a, "s2", "s2")) == std::vector<std::string>{"id_s2", "swap", "const_a", "const_b"});
  CHECK_THROWS_AS(hom(*a, "s3", "s1"), Error);
}

TEST_CASE("hom sets partition the morphisms") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    const auto c = small_category(s, 30);
    std::size_t total = 0;
    for (std::size_t x = 0; x < c->object_count(); ++x)
      for (std::size_t y = 0; y < c->object_count(); ++y) total += c->hom(obj(x), obj(y)).size();
    CHECK(total == c->morphism_count());
  }
}

TEST_CASE("dual") {
  const auto a = fix("FIX-A");
  CHECK(dual(dual(*a)) == *a);
  const FinCategory bop = dual(*fix("FIX-B"));
  CHECK(names(bop, hom(bop, "2", "0")) == std::vector<std::string>{"le02"});
  CHECK(names(bop, hom(bop, "1", "0")) == std::vector<std::string>{"le01"});
  CHECK(hom(bop, "0", "1").empty());
  const FinCategory aop = dual(*a);
  CHECK(names(aop, hom(aop, "s2", "s1")) == std::vector<std::string>{"pt_a", "pt_b"});
  CHECK(check_table(aop.table()).ok());
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto c = small_category(s, 30);
    CHECK(dual(dual(*c)) == *c);
  }
}

TEST_CASE("product") {
  const auto a = fix("FIX-A");
  const auto b = fix("FIX-B");
  const Product unary = product({b});
  CHECK(unary.category->object_count() == 3);
  CHECK(unary.category->morphism_count() == 5);
  CHECK(validate_functor(unary.projections[0]).ok());
  const Product bb = product({b, b});
  CHECK(bb.category->object_count() == 9);
  CHECK(bb.category->morphism_count() == 25);
  CHECK(validate_functor(bb.projections[0]).ok());
  CHECK(validate_functor(bb.projections[1]).ok());
  CHECK(product({a, b}).category->morphism_count() == 40);
  CHECK_THROWS_AS(product({}), Error);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto x = small_category(s, 8);
    const auto y = small_category(s + 100, 8);
    const Product p = product({x, y});
    CHECK(p.category->morphism_count() == x->morphism_count() * y->morphism_count());
    CHECK(oracle::violated_laws(p.category->table()).empty());
  }
}

TEST_CASE("functors") {
  const auto a = fix("FIX-A");
  CHECK(validate_functor(identity_functor(a)).ok());
  Functor f = identity_functor(a);
  f.on_morphisms[M(*a, "swap").index] = M(*a, "id_s2");
  const Diagnostics d = validate_functor(f);
  CHECK(d.has_law("composition"));
  bool seen = false;
  for (const auto& item : d.items())
    if (item.ids == std::vector<std::string>{"swap", "pt_a"}) seen = true;
  CHECK(seen);
}

TEST_CASE("natural transformations") {
  const auto c = fix("FIX-C");
  const Functor id = identity_functor(c);
  CHECK(validate_nat_trans(identity_transformation(id)).ok());
  NatTrans zero{id, id, {M(*c, "id_one"), M(*c, "zero")}};
  CHECK(validate_nat_trans(zero).ok());
  const auto a = fix("FIX-A");
  NatTrans bad = identity_transformation(identity_functor(a));
  bad.components[O(*a, "s2").index] = M(*a, "swap");
  CHECK(validate_nat_trans(bad).has_law("naturality"));
}

TEST_CASE("subcategories") {
  const auto a = fix("FIX-A");
  const auto b = fix("FIX-B");
  CHECK(is_subcategory(*b, {{"1", "2"}, {"id_1", "id_2"}}).ok());
  CHECK(is_subcategory(*a, {{"s2"}, {"id_s2", "swap"}}).ok());
  const Diagnostics d = is_subcategory(*a, {{"s2"}, {"id_s2", "const_a", "swap"}});
  CHECK(d.has(Errc::not_closed));
  CHECK(d.has_law("composition"));
  CHECK(is_subcategory(*a, {{"s2"}, {"swap"}}).has_law("identities"));
  CHECK(is_subcategory(*a, {{"s2"}, {"id_s2", "collapse"}}).has_law("dom/cod"));
  CHECK(is_subcategory(*a, {{"s9"}, {}}).has(Errc::dangling_reference));
  const Subcategory sub = extract_subcategory(a, {{"s2"}, {"id_s2", "swap"}});
  CHECK(sub.category->morphism_count() == 2);
  CHECK(sub.lift(M(*a, "swap")).has_value());
  CHECK_FALSE(sub.lift(M(*a, "const_a")).has_value());
  CHECK_THROWS_AS(extract_subcategory(a, {{"s2"}, {"id_s2", "const_a", "swap"}}), Error);
}

TEST_CASE("random categories validate") {
  for (std::uint64_t s = 0; s < 500; ++s) {
    Rng rng(s);
    GenParams p;
    p.objects = 1 + s % 8;
    p.max_morphisms = 64;
    const CategoryDescription raw = random_category(rng, p);
    CAPTURE(s);
    CHECK_NOTHROW(validate_category(raw));
    CHECK(raw.morphisms.size() <= 64);
  }
}

TEST_CASE("law checker agrees with the brute-force oracle on mutations") {
  const auto corpus = mutation_corpus(60);
  Rng rng(7);
  std::size_t tested = 0;
  for (std::size_t i = 0; tested < 200 && i < 2000; ++i) {
    const auto kind = static_cast<MutationKind>(i % 3);
    const auto m = mutate(*corpus[i % corpus.size()], rng, kind);
    if (!m) continue;
    ++tested;
    std::set<std::string> laws;
    const Diagnostics found = check_table(m->table);
    for (const auto& item : found.items()) laws.insert(item.law);
    const auto expected = oracle::violated_laws(m->table);
    CAPTURE(m->what);
    CHECK(laws == expected);
    if (expected.empty()) CHECK_NOTHROW(validate_table(m->table));
    else CHECK_THROWS_AS(validate_table(m->table), Error);
  }
  CHECK(tested == 200);
}
