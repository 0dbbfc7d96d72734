#include "movcat/shapebridge.hpp"

#include <set>
#include <tuple>

namespace movcat {

bool TheoremReport::cross_checks_pass() const {
  for (const auto& c : checks)
    if (!c.ok) return false;
  return true;
}

CommaCategory comma_of(const Expansion& exp) {
  return comma_category(exp.ambient, exp.sub_spec, exp.apex);
}

namespace {

void require_axioms(const Expansion& exp) {
  Diagnostics all = check_AE1(exp);
  all.append(check_AE2(exp));
  if (!all.ok()) throw Error(Errc::expansion_invalid, all.first().str(), all);
}

// First level above both a and b, in index order.
Level upper_bound(const Expansion& exp, Level a, Level b) {
  if (auto f = std::get_if<FiniteIndexSystem>(&exp.system)) {
    for (Level n = 0; n < f->index.size(); ++n)
      if (f->index.leq(a, n) && f->index.leq(b, n)) return n;
    throw Error(Errc::not_directed, "no upper bound");
  }
  return std::max(a, b);
}

Level leg_state(const Expansion& exp, Level n) {
  const auto& legs = exp.legs;
  if (!legs.loop_from || n < *legs.loop_from) return n;
  return *legs.loop_from + (n - *legs.loop_from) % legs.loop_length();
}

MorId to_sub(const Expansion& exp, MorId ambient_morphism, const char* what) {
  auto l = exp.sub.lift(ambient_morphism);
  if (!l) throw Error(Errc::thread_verification_failure, std::string(what) + " is not a morphism of P");
  return *l;
}

MorId comma_morphism(const CommaCategory& comma, MorId u, MorId source_leg) {
  auto src = comma.object_for(source_leg);
  if (!src) throw Error(Errc::witness_verification_failure, "leg is not a comma object");
  auto m = comma.morphism_for(u, *src);
  if (!m) throw Error(Errc::witness_verification_failure, "no comma morphism with that ambient part");
  return *m;
}

} // namespace

ProThread comma_to_system_witness(const Expansion& exp, const CommaCategory& comma,
                                  const Witness& w, Level lambda) {
  const FinCategory& T = *exp.ambient;
  const auto target = comma.object_for(exp.leg(lambda));
  if (!target || w.target != *target)
    throw Error(Errc::thread_verification_failure, "witness is not at the comma object of the leg");
  if (auto d = verify_witness(*comma.category, w, true); !d.ok())
    throw Error(Errc::thread_verification_failure, "input witness: " + d.first().str(), d);
  const MorId f1 = comma.object_table[w.mover.index];     // f': X -> Q'
  const MorId eta = comma.morphism_table[w.movability.index]; // Q' -> X_λ

  auto factored = ae1_factor(exp, f1, first_level(exp.system));
  if (!factored) throw Error(Errc::ae1_failure, T.name(f1));
  const auto [ltilde, f1tilde] = *factored;

  const Level mu = upper_bound(exp, lambda, ltilde);
  const MorId h = T.compose_unchecked(T.compose_unchecked(eta, f1tilde), exp.bond(ltilde, mu));
  const MorId k = exp.bond(lambda, mu);
  auto eq = ae2_equalizer(exp, mu, h, k);
  if (!eq) throw Error(Errc::ae2_failure, "level " + level_name(exp.system, mu));
  const Level lprime = *eq;
  const MorId tail = T.compose_unchecked(f1tilde, exp.bond(ltilde, lprime)); // X_λ' -> Q'

  // r^ν for ν >= λ: u(p_{λν})∘f̃'∘p_{λ̃λ'}.
  auto above = [&](Level nu) {
    const MorId bond = exp.bond(lambda, nu);
    const MorId u = w.factor(comma_morphism(comma, bond, exp.leg(nu)));
    return T.compose_unchecked(comma.morphism_table[u.index], tail);
  };

  ProThread thread{lambda, lprime, {}};
  if (auto f = std::get_if<FiniteIndexSystem>(&exp.system)) {
    std::vector<MorId> values;
    for (Level nu = 0; nu < f->index.size(); ++nu) {
      MorId r;
      if (f->index.leq(lambda, nu)) {
        r = above(nu);
      } else {
        const Level up = upper_bound(exp, nu, lambda);
        r = T.compose_unchecked(exp.bond(nu, up), above(up));
      }
      values.push_back(to_sub(exp, r, "thread component"));
    }
    thread.components = LevelFamily{0, std::move(values), std::nullopt};
  } else {
    const auto& s = std::get<PeriodicSequence>(exp.system);
    std::vector<MorId> values;
    const MorId rl = above(lambda);
    for (Level nu = 1; nu < lambda; ++nu)
      values.push_back(to_sub(exp, T.compose_unchecked(exp.bond(nu, lambda), rl), "thread component"));
    std::map<std::pair<Level, std::uint32_t>, Level> seen;
    MorId bond = T.identity(exp.object(lambda));
    for (Level nu = lambda;; ++nu) {
      auto [it, fresh] = seen.emplace(std::make_pair(leg_state(exp, nu), bond.index), nu);
      if (!fresh) {
        thread.components = LevelFamily{1, std::move(values), it->second};
        break;
      }
      values.push_back(to_sub(exp, above(nu), "thread component"));
      bond = T.compose_unchecked(bond, exp.sub.morphism_embedding[s.step(nu).index]);
    }
  }
  if (auto d = verify_thread(exp.system, thread); !d.ok())
    throw Error(Errc::thread_verification_failure, d.first().str(), d);
  return thread;
}

Witness system_to_comma_witness(const Expansion& exp, const CommaCategory& comma, ObjId fo,
                                const std::map<Level, ProThread>& threads) {
  const FinCategory& T = *exp.ambient;
  const FinCategory& K = *comma.category;
  const MorId f = comma.object_table.at(fo.index);
  auto factored = ae1_factor(exp, f, first_level(exp.system));
  if (!factored) throw Error(Errc::ae1_failure, T.name(f));
  const auto [lambda, flambda] = *factored;
  auto it = threads.find(lambda);
  if (it == threads.end()) throw Error(Errc::missing_thread, "level " + level_name(exp.system, lambda));
  const ProThread& r = it->second;
  const Level lprime = r.index;
  auto rt = [&](Level nu) { return exp.sub.morphism_embedding[r.components.at(nu).index]; };

  const MorId leg_prime = exp.leg(lprime);
  const auto mover = comma.object_for(leg_prime);
  if (!mover) throw Error(Errc::witness_verification_failure, "leg is not a comma object");
  Witness w{fo, *mover, comma_morphism(comma, T.compose_unchecked(flambda, exp.bond(lambda, lprime)), leg_prime), {}};

  for (MorId eta1 : K.into(fo)) {
    const ObjId src = K.dom(eta1);
    const MorId f2 = comma.object_table[src.index];
    const MorId eta = comma.morphism_table[eta1.index];
    auto f2fac = ae1_factor(exp, f2, lambda);
    if (!f2fac) throw Error(Errc::ae1_failure, T.name(f2));
    const auto [l2, f2l] = *f2fac;
    const MorId h = T.compose_unchecked(flambda, exp.bond(lambda, l2));
    const MorId k = T.compose_unchecked(eta, f2l);
    auto eq = ae2_equalizer(exp, l2, h, k);
    if (!eq) throw Error(Errc::ae2_failure, "level " + level_name(exp.system, l2));
    const Level l3 = *eq;
    const MorId u = T.compose_unchecked(T.compose_unchecked(f2l, exp.bond(l2, l3)), rt(l3));
    auto cm = comma.morphism_for(u, *mover);
    if (!cm)
      throw Error(Errc::witness_verification_failure,
                  "u(" + K.name(eta1) + ") = " + T.name(u) + " is not a comma morphism out of M(f)");
    w.factors.emplace(eta1, *cm);
  }
  if (auto d = verify_witness(K, w, true); !d.ok())
    throw Error(Errc::witness_verification_failure, d.first().str(), d);
  return w;
}

TheoremReport theorem_check(const Expansion& exp) {
  TheoremReport rep;
  rep.ae1 = check_AE1(exp);
  rep.ae2 = check_AE2(exp);
  if (!rep.ae1.ok() || !rep.ae2.ok()) {
    Diagnostics all = rep.ae1;
    all.append(rep.ae2);
    throw Error(Errc::expansion_invalid, all.first().str(), all);
  }
  rep.comma = comma_of(exp);
  rep.comma_side = decide_category(*rep.comma.category, true);
  rep.system_side = decide_system_uniform(exp.system);
  rep.comma_uniform = rep.comma_side.holds();
  rep.system_uniform = rep.system_side.holds();
  rep.consistent = rep.comma_uniform == rep.system_uniform;
  if (!rep.comma_uniform || !rep.system_uniform) return rep;

  const FinCategory& K = *rep.comma.category;
  std::map<Level, ProThread> from_comma;
  for (Level lambda : representative_levels(exp)) {
    const auto target = rep.comma.object_for(exp.leg(lambda));
    CrossCheck c{"comma to system at level " + level_name(exp.system, lambda), false, {}};
    try {
      const auto& witness = *rep.comma_side.objects.at(target->index).witness;
      ProThread t = comma_to_system_witness(exp, rep.comma, witness, lambda);
      c.ok = true;
      c.detail = "index " + level_name(exp.system, t.index);
      from_comma.emplace(lambda, t);
      rep.constructed_threads.push_back(std::move(t));
    } catch (const Error& e) {
      c.detail = std::string(to_string(e.code())) + ": " + e.what();
    }
    rep.checks.push_back(std::move(c));
  }

  std::map<Level, ProThread> from_system;
  for (Level lambda : representative_levels(exp))
    if (auto t = leg_compatible_thread(exp, lambda)) from_system.emplace(lambda, std::move(*t));

  for (std::size_t o = 0; o < K.object_count(); ++o) {
    for (const auto* source : {&from_system, &from_comma}) {
      CrossCheck c{std::string(source == &from_system ? "system" : "round trip") + " to comma at " +
                       K.name(obj(o)),
                   false, {}};
      try {
        Witness w = system_to_comma_witness(exp, rep.comma, obj(o), *source);
        c.ok = true;
        c.detail = "M = " + K.name(w.mover);
        if (source == &from_system) rep.constructed_witnesses.push_back(std::move(w));
      } catch (const Error& e) {
        c.detail = std::string(to_string(e.code())) + ": " + e.what();
      }
      rep.checks.push_back(std::move(c));
    }
  }
  return rep;
}

SequenceCorollaryReport corollary_sequence_check(const Expansion& exp) {
  if (!std::holds_alternative<PeriodicSequence>(exp.system))
    throw Error(Errc::expansion_invalid, "the system is not a sequence");
  require_axioms(exp);
  SequenceCorollaryReport rep{comma_of(exp), {}, {}, false};
  rep.movable = decide_category(*rep.comma.category, false);
  rep.uniform = decide_category(*rep.comma.category, true);
  rep.agree = rep.movable.holds() == rep.uniform.holds();
  return rep;
}

} // namespace movcat
