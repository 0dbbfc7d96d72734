#include "doctest.h"
#include "oracles.hpp"
#include "support.hpp"

using namespace movcat;
using namespace support;

namespace {

constexpr Level kHorizon = 60;

FiniteIndexSystem chain3(const CategoryRef& a, MorId p13) {
  FiniteIndexSystem s{DirectedPreorder::chain(3), a, std::vector<ObjId>(3, a->object("s2")), {}};
  for (Level x = 0; x < 3; ++x)
    for (Level y = x; y < 3; ++y) s.bonds[{x, y}] = a->morphism("id_s2");
  s.bonds[{0, 2}] = p13;
  return s;
}

std::vector<PeriodicSequence> random_sequences(std::size_t n) {
  std::vector<PeriodicSequence> out;
  for (std::uint64_t s = 0; s < n; ++s) {
    Rng rng(4000 + s);
    GenParams p;
    p.objects = 1 + s % 3;
    p.max_morphisms = 16;
    const auto cat = share(validate_category(random_category(rng, p)));
    out.push_back(random_sequence(rng, cat, p));
  }
  return out;
}

std::optional<Level> thread_index_at(const SystemUniformity& u, Level lambda) {
  for (const auto& t : u.threads)
    if (t.source == lambda) return t.index;
  return std::nullopt;
}

} // namespace

TEST_CASE("validate_system") {
  CHECK(validate_system(finite_system("S2-CHAIN")).ok());
  CHECK(validate_system(finite_system("CONST-A")).ok());
  CHECK(validate_system(finite_system("SWAP2")).ok());
  const auto a = fix("FIX-A");
  CHECK(validate_system(chain3(a, M(*a, "id_s2"))).ok());
  CHECK(validate_system(chain3(a, M(*a, "swap"))).has(Errc::functoriality_violation));

  FiniteIndexSystem undirected{DirectedPreorder{{"1", "2"}, {1, 0, 0, 1}}, a, {O(*a, "s2"), O(*a, "s2")}, {}};
  undirected.bonds[{0, 0}] = undirected.bonds[{1, 1}] = M(*a, "id_s2");
  CHECK(validate_system(undirected).has(Errc::not_directed));

  PeriodicSequence broken = std::get<PeriodicSequence>(finite_system("SWAP2"));
  broken.prefix_steps[0] = M(*a, "swap");
  CHECK(validate_system(broken).has(Errc::phase_mismatch));
  CHECK_FALSE(validate_system(DivisibilitySequence{{}, {0}}).ok());
}

TEST_CASE("composite bonds") {
  const DivisibilitySequence two{{}, {2}};
  CHECK(composite_bond(two, 1, 4) == 8);
  CHECK(composite_bond(two, 3, 3) == 1);
  CHECK_THROWS_AS(composite_bond(two, 1, 80), Error);
  const auto a = fix("FIX-A");
  const auto ca = std::get<PeriodicSequence>(finite_system("CONST-A"));
  CHECK(composite_bond(ca, 1, 5) == M(*a, "const_a"));
  CHECK(composite_bond(ca, 2, 2) == M(*a, "id_s2"));
  const auto sw = std::get<PeriodicSequence>(finite_system("SWAP2"));
  CHECK(composite_bond(sw, 1, 3) == M(*a, "collapse"));
  CHECK(composite_bond(sw, 2, 4) == M(*a, "id_s2"));
  CHECK(composite_bond(sw, 2, 5) == M(*a, "swap"));
  CHECK_THROWS_AS(composite_bond(finite_system("CONST-A"), 3, 2), Error);

  for (const auto& s : random_sequences(60)) {
    const std::size_t span = 2 * (s.prefix_length() + 2 * s.period());
    for (Level x = 1; x <= span; ++x)
      for (Level y = x; y <= span; ++y) {
        CHECK(composite_bond(s, x, y) == oracle::bond(s, x, y));
        for (Level z = y; z <= span; z += 3)
          CHECK(composite_bond(s, x, z) == s.ambient->compose(composite_bond(s, x, y), composite_bond(s, y, z)));
      }
  }
}

TEST_CASE("eventual images") {
  const IdealImage sol = eventual_image(DivisibilitySequence{{}, {2}}, 1, 3);
  CHECK_FALSE(sol.generator);
  CHECK_FALSE(sol.contains_bond);
  CHECK_FALSE(sol.note.empty());
  const IdealImage div = eventual_image(divisibility("DIV-221"), 1, 3);
  REQUIRE(div.generator);
  CHECK(*div.generator == 4);
  CHECK(div.contains_bond);

  const auto a = fix("FIX-A");
  const auto img = eventual_image(finite_system("CONST-A"), 1, 2);
  CHECK(std::find(img.begin(), img.end(), M(*a, "const_a")) != img.end());

  const FiniteSystem gap = finite_system("GAP-SYS");
  const auto top = eventual_image(gap, 0, 1);
  CHECK(std::find(top.begin(), top.end(), composite_bond(gap, 0, 1)) != top.end());
}

TEST_CASE("solenoid and its stabilised variant") {
  const DivisibilitySequence sol = divisibility("SOLENOID2");
  const DivisibilityVerdict m = decide_system_movable(sol);
  CHECK_FALSE(m.holds());
  CHECK(m.failure->level == 1);
  CHECK_FALSE(decide_system_uniform(sol).holds());

  const DivisibilitySequence d = divisibility("DIV-221");
  const DivisibilityVerdict dm = decide_system_movable(d);
  REQUIRE(dm.holds());
  CHECK(dm.indices.at(0).level == 1);
  CHECK(dm.indices.at(0).index == 3);
  CHECK(dm.indices.at(0).bond == 4);
  const DivisibilityVerdict du = decide_system_uniform(d);
  REQUIRE(du.holds());
  const IntegerThread& t = du.threads.at(0);
  CHECK(t.index == 3);
  CHECK(t.values.at(0) == 4);
  CHECK(t.values.at(1) == 2);
  CHECK(t.values.back() == 1);
}

TEST_CASE("periodic examples") {
  const auto a = fix("FIX-A");
  const FiniteSystem ca = finite_system("CONST-A");
  const SystemUniformity u = decide_system_uniform(ca);
  REQUIRE(u.holds());
  const ProThread& t = u.threads.at(0);
  CHECK(t.source == 1);
  CHECK(t.index == 2);
  for (Level n = 1; n <= 8; ++n) CHECK(t.components.at(n) == M(*a, "const_a"));
  CHECK(verify_thread(ca, t).ok());

  ProThread bad = t;
  bad.components.values[0] = M(*a, "const_b");
  CHECK(verify_thread(ca, bad).has(Errc::thread_verification_failure));

  const SystemMovability sw = decide_system_movable(finite_system("SWAP2"));
  CHECK(sw.holds());
  CHECK(decide_system_uniform(finite_system("SWAP2")).holds());
}

TEST_CASE("finite index systems are always uniformly movable") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    Rng rng(7000 + s);
    GenParams p;
    p.objects = 1 + s % 3;
    p.max_morphisms = 16;
    const auto cat = share(validate_category(random_category(rng, p)));
    const FiniteIndexSystem sys = random_finite_system(rng, cat, p);
    REQUIRE(validate_system(sys).ok());
    const SystemMovability m = decide_system_movable(sys);
    const SystemUniformity u = decide_system_uniform(sys);
    CAPTURE(s);
    REQUIRE(m.holds());
    REQUIRE(u.holds());
    for (const auto& t : u.threads) {
      CHECK(verify_thread(sys, t).ok());
      CHECK(oracle::thread_ok(sys, t, 0));
    }
    for (const auto& idx : m.indices)
      for (const auto& [lvl, r] : idx.factors)
        CHECK(cat->compose(composite_bond(FiniteSystem(sys), idx.level, lvl), r) ==
              composite_bond(FiniteSystem(sys), idx.level, idx.index));
  }
}

TEST_CASE("sequence deciders match the brute-force indices") {
  std::size_t negatives = 0, positives = 0;
  for (const auto& s : random_sequences(150)) {
    const FiniteSystem sys = s;
    REQUIRE(validate_system(sys).ok());
    const SystemMovability m = decide_system_movable(sys);
    const SystemUniformity u = decide_system_uniform(sys);
    REQUIRE(m.holds() == u.holds());
    const std::size_t k = s.prefix_length(), c = s.period();
    for (Level lambda = 1; lambda <= k + 2 * c; ++lambda) {
      const auto mi = oracle::movable_index(s, lambda, kHorizon);
      const auto ti = oracle::thread_index(s, lambda, kHorizon);
      CHECK(mi == ti);
      if (m.holds()) {
        CHECK(m.index_for(lambda, k, c) == mi);
      } else {
        CHECK(m.failure->level <= k + c);
      }
    }
    if (m.holds()) {
      ++positives;
      for (const auto& t : u.threads) {
        CHECK(verify_thread(sys, t).ok());
        CHECK(oracle::thread_ok(sys, t, kHorizon));
        CHECK(m.index_for(t.source, k, c) == t.index);
      }
    } else {
      ++negatives;
      CHECK_FALSE(oracle::movable_index(s, m.failure->level, kHorizon));
    }
  }
  MESSAGE("positive " << positives << ", negative " << negatives);
}

TEST_CASE("divisibility deciders match the brute-force indices") {
  for (std::uint64_t s = 0; s < 150; ++s) {
    Rng rng(9000 + s);
    const DivisibilitySequence d = random_divisibility(rng, GenParams{});
    const DivisibilityVerdict m = decide_system_movable(d);
    const DivisibilityVerdict u = decide_system_uniform(d);
    REQUIRE(m.holds() == u.holds());
    for (Level lambda = 1; lambda <= d.prefix_length() + d.period(); ++lambda) {
      const auto oi = oracle::divisibility_index(d, lambda, 40);
      if (m.holds()) {
        CHECK(m.indices.at(lambda - 1).index == oi);
        CHECK(u.threads.at(lambda - 1).index == oi);
      }
    }
    if (!m.holds()) CHECK_FALSE(oracle::divisibility_index(d, m.failure->level, 40));
  }
}

TEST_CASE("AE1 and AE2") {
  const Expansion fe = fixtures().expansion("FIX-EXP");
  CHECK(check_AE1(fe).ok());
  CHECK(check_AE2(fe).ok());
  const Expansion q = fixtures().expansion("FIX-EXP-AE1");
  const Diagnostics d1 = check_AE1(q);
  REQUIRE(d1.has(Errc::ae1_violation));
  CHECK(d1.first().ids == std::vector<std::string>{"q"});
  const Expansion seq = fixtures().expansion("FIX-EXP-SEQ");
  CHECK(check_AE1(seq).ok());
  CHECK(check_AE2(seq).ok());

  const Expansion bad = fixtures().expansion("AE2-BAD");
  const Diagnostics d2 = check_AE2(bad);
  REQUIRE(d2.has(Errc::ae2_violation));
  const auto a = fix("FIX-A");
  CHECK_FALSE(ae2_equalizer(bad, 0, M(*a, "id_s2"), M(*a, "const_a")));
  CHECK(ae1_factor(fe, fe.leg(0), 0).has_value());
}

TEST_CASE("remark conditions") {
  const auto a = fix("FIX-A");
  const FiniteSystem gap = finite_system("GAP-SYS");
  const SubcategorySpec all = fixtures().subcategory("FIX-A-ALL").spec;
  const Diagnostics g1 = check_G1(gap, 0, 1, all);
  CHECK(g1.has(Errc::g1_violation));
  CHECK(a->compose(M(*a, "collapse"), M(*a, "const_a")) == a->compose(M(*a, "collapse"), M(*a, "const_b")));
  CHECK(check_G1(gap, 0, 1, {{"s2"}, {"id_s2", "swap"}}).has(Errc::g1_violation));
  CHECK(check_G1(finite_system("S2-CHAIN"), 0, 1, {{"s2"}, {"id_s2", "swap"}}).ok());
  const auto b = fix("FIX-B");
  FiniteIndexSystem poset{DirectedPreorder::chain(2), b, {O(*b, "1"), O(*b, "1")}, {}};
  poset.bonds[{0, 0}] = poset.bonds[{1, 1}] = poset.bonds[{0, 1}] = M(*b, "id_1");
  CHECK(check_G1(poset, 0, 1, {{"0", "1"}, {"id_0", "id_1", "le01"}}).ok());

  const FiniteSystem chain = finite_system("S2-CHAIN");
  const SystemUniformity u = decide_system_uniform(chain);
  REQUIRE(u.holds());
  CHECK(check_G2(chain, u.threads).ok());
  auto mutated = u.threads;
  mutated[0].components.values.back() = M(*a, "swap");
  CHECK(check_G2(chain, mutated).has(Errc::g2_violation));

  const FiniteSystem ca = finite_system("CONST-A");
  CHECK(check_G2(ca, decide_system_uniform(ca).threads).ok());
}
