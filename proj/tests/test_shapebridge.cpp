#include "doctest.h"
#include "support.hpp"

using namespace movcat;
using namespace support;

namespace {

void require_positive(const TheoremReport& r) {
  CHECK(r.ae1.ok());
  CHECK(r.ae2.ok());
  CHECK(r.comma_uniform);
  CHECK(r.system_uniform);
  CHECK(r.consistent);
  for (const auto& c : r.checks) {
    CAPTURE(c.subject);
    CAPTURE(c.detail);
    CHECK(c.ok);
  }
}

Errc code_of(const Expansion& exp) {
  try {
    theorem_check(exp);
  } catch (const Error& e) {
    return e.code();
  }
  return Errc::size_overflow; // sentinel: nothing thrown
}

} // namespace

TEST_CASE("theorem check on the fixtures") {
  const TheoremReport fe = theorem_check(fixtures().expansion("FIX-EXP"));
  require_positive(fe);
  CHECK(fe.comma.category->object_count() == 1);
  CHECK(fe.comma.category->morphism_count() == 1);
  CHECK_FALSE(fe.constructed_threads.empty());
  CHECK_FALSE(fe.constructed_witnesses.empty());

  for (const char* name : {"FIX-EXP-SEQ", "FIX-C-ID", "FIX-C-SEQ", "GAP"}) {
    CAPTURE(name);
    require_positive(theorem_check(fixtures().expansion(name)));
  }
  for (const char* name : {"FIX-C-EXP", "AE2-BAD", "FIX-EXP-AE1"}) {
    CAPTURE(name);
    CHECK(code_of(fixtures().expansion(name)) == Errc::expansion_invalid);
  }
}

TEST_CASE("comma witness to system thread") {
  const Expansion fe = fixtures().expansion("FIX-EXP");
  const CommaCategory comma = comma_of(fe);
  const ObjId leg = *comma.object_for(fe.leg(0));
  const Decision d = decide_uniformly_movable(*comma.category, leg);
  REQUIRE(d);
  const ProThread t = comma_to_system_witness(fe, comma, *d.witness, 0);
  CHECK(t.source == 0);
  CHECK(t.index == 0);
  CHECK(fe.sub.category->is_identity(t.components.at(0)));
  CHECK(verify_thread(fe.system, t).ok());

  const Expansion c = fixtures().expansion("FIX-C-ID");
  const CommaCategory cc = comma_of(c);
  const ObjId cl = *cc.object_for(c.leg(0));
  const Decision dc = decide_uniformly_movable(*cc.category, cl);
  REQUIRE(dc);
  CHECK(verify_thread(c.system, comma_to_system_witness(c, cc, *dc.witness, 0)).ok());

  // A single wrong factor is rejected.
  const Expansion gap = fixtures().expansion("GAP");
  const CommaCategory gc = comma_of(gap);
  const Decision dg = decide_uniformly_movable(*gc.category, *gc.object_for(gap.leg(0)));
  REQUIRE(dg);
  CHECK(verify_thread(gap.system, comma_to_system_witness(gap, gc, *dg.witness, 0)).ok());
  std::size_t rejected = 0;
  for (const auto& [p, u] : dg.witness->factors)
    for (std::size_t i = 0; i < gc.category->morphism_count(); ++i) {
      const MorId other = mor(i);
      if (other == u) continue;
      Witness bad = *dg.witness;
      bad.factors[p] = other;
      try {
        comma_to_system_witness(gap, gc, bad, 0);
        FAIL("accepted");
      } catch (const Error& e) {
        CHECK(e.code() == Errc::thread_verification_failure);
        ++rejected;
      }
    }
  CHECK(rejected > 0);
}

TEST_CASE("system threads to comma witness") {
  const Expansion fe = fixtures().expansion("FIX-EXP");
  const CommaCategory comma = comma_of(fe);
  const auto t = leg_compatible_thread(fe, 0);
  REQUIRE(t);
  const ObjId f = *comma.object_for(fe.leg(0));
  const Witness w = system_to_comma_witness(fe, comma, f, {{0, *t}});
  CHECK(w.mover == f);
  CHECK(comma.category->is_identity(w.movability));
  CHECK(verify_witness(*comma.category, w, true).ok());
  CHECK_THROWS_AS(system_to_comma_witness(fe, comma, f, {}), Error);

  const Expansion c = fixtures().expansion("FIX-C-ID");
  const CommaCategory cc = comma_of(c);
  const auto tc = leg_compatible_thread(c, 0);
  REQUIRE(tc);
  for (std::size_t o = 0; o < cc.category->object_count(); ++o) {
    const Witness wc = system_to_comma_witness(c, cc, obj(o), {{0, *tc}});
    CHECK(verify_witness(*cc.category, wc, true).ok());
  }
  ProThread bad = *tc;
  bad.components.values[0] = c.sub.category->morphism("zero");
  try {
    system_to_comma_witness(c, cc, obj(1), {{0, bad}});
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK((e.code() == Errc::witness_verification_failure || e.code() == Errc::thread_verification_failure));
  }
}

TEST_CASE("leg-compatible threads close the finite gap") {
  const Expansion gap = fixtures().expansion("GAP");
  const SystemUniformity u = decide_system_uniform(gap.system);
  REQUIRE(u.holds());
  // The plain thread at level 1 uses index 1 but ignores the legs.
  const ProThread& plain = u.threads.at(0);
  const FinCategory& T = *gap.ambient;
  auto lifted = [&](MorId m) { return gap.sub.morphism_embedding[m.index]; };
  const bool compatible = T.compose(lifted(plain.components.at(1)), gap.leg(plain.index)) == gap.leg(1);
  CHECK_FALSE(compatible);
  const auto t = leg_compatible_thread(gap, 0);
  REQUIRE(t);
  for (Level nu = 0; nu < 2; ++nu) CHECK(T.compose(lifted(t->components.at(nu)), gap.leg(t->index)) == gap.leg(nu));
}

TEST_CASE("random cross-fire") {
  std::size_t valid = 0, positive = 0, rejected = 0;
  for (std::uint64_t s = 0; valid < 100 && s < 400; ++s) {
    Rng rng(s);
    const auto shape = s % 2 ? ExpansionShape::sequence : ExpansionShape::finite;
    const auto g = random_expansion(rng, shape, GenParams{});
    if (!g) continue;
    const Expansion exp = g->expansion();
    if (!check_AE1(exp).ok() || !check_AE2(exp).ok()) continue;
    ++valid;
    const TheoremReport r = theorem_check(exp);
    CAPTURE(s);
    CHECK(r.consistent);
    CHECK(r.cross_checks_pass());
    if (r.comma_uniform) ++positive;
  }
  CHECK(valid == 100);
  for (std::uint64_t s = 0; rejected < 30 && s < 400; ++s) {
    Rng rng(s);
    const auto g = random_expansion(rng, s % 2 ? ExpansionShape::sequence : ExpansionShape::finite, GenParams{}, true);
    if (!g || !g->mutated) continue;
    const Expansion exp = g->expansion();
    if (check_AE2(exp).ok()) continue;
    CHECK(code_of(exp) == Errc::expansion_invalid);
    ++rejected;
  }
  CHECK(rejected == 30);
  MESSAGE("valid " << valid << ", positive " << positive);
}

TEST_CASE("sequence corollary") {
  for (const char* name : {"FIX-C-SEQ", "FIX-EXP-SEQ"}) {
    const SequenceCorollaryReport r = corollary_sequence_check(fixtures().expansion(name));
    CHECK(r.agree);
    CHECK(r.movable.holds());
    CHECK(r.uniform.holds());
  }
  try {
    corollary_sequence_check(fixtures().expansion("FIX-EXP"));
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::expansion_invalid);
  }
  std::size_t checked = 0;
  for (std::uint64_t s = 0; checked < 100 && s < 400; ++s) {
    Rng rng(20000 + s);
    const auto g = random_expansion(rng, ExpansionShape::sequence, GenParams{});
    if (!g) continue;
    const Expansion exp = g->expansion();
    if (!check_AE1(exp).ok() || !check_AE2(exp).ok()) continue;
    CHECK(corollary_sequence_check(exp).agree);
    ++checked;
  }
  CHECK(checked == 100);
}
