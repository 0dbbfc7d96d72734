#include "movcat/movability.hpp"

#include <set>
#include <sstream>
#include <tuple>

#include "movcat/detail/csp.hpp"

namespace movcat {

MorId Witness::factor(MorId p) const {
  auto it = factors.find(p);
  if (it == factors.end()) throw Error(Errc::incomplete_factor_table, "no factor for morphism");
  return it->second;
}

Diagnostics verify_witness(const FinCategory& cat, const Witness& w, bool uniform) {
  Diagnostics out;
  const auto n = cat.morphism_count();
  if (w.target.index >= cat.object_count() || w.mover.index >= cat.object_count() ||
      w.movability.index >= n || cat.dom(w.movability) != w.mover ||
      cat.cod(w.movability) != w.target) {
    out.add({Errc::violation, "shape", {}, "movability morphism is not M(X) -> X"});
    return out;
  }
  for (MorId p : cat.into(w.target)) {
    auto it = w.factors.find(p);
    if (it == w.factors.end()) {
      out.add({Errc::incomplete_factor_table, {}, {cat.name(p)}, "missing factor"});
      return out;
    }
    const MorId u = it->second;
    if (u.index >= n || cat.dom(u) != w.mover || cat.cod(u) != cat.dom(p)) {
      out.add({Errc::violation, "condition 1", {cat.name(p)}, "factor has wrong dom/cod"});
      return out;
    }
  }
  for (MorId p : cat.into(w.target)) {
    if (cat.compose_unchecked(p, w.factors.at(p)) != w.movability) {
      out.add({Errc::violation, "condition 1", {cat.name(p), cat.name(w.factors.at(p))},
               "p∘u(p) differs from m"});
      return out;
    }
  }
  if (!uniform) return out;
  for (MorId p : cat.into(w.target)) {
    for (MorId r : cat.into(cat.dom(p))) {
      const MorId q = cat.compose_unchecked(p, r);
      if (w.factors.at(p) != cat.compose_unchecked(r, w.factors.at(q))) {
        out.add({Errc::violation, "condition 2", {cat.name(p), cat.name(q), cat.name(r)},
                 "u(p) differs from r∘u(q)"});
        return out;
      }
    }
  }
  return out;
}

Decision decide_movable(const FinCategory& cat, ObjId x) {
  if (x.index >= cat.object_count()) throw Error(Errc::unknown_object, "object index");
  Decision decision{x, std::nullopt, {}};
  for (std::size_t mo = 0; mo < cat.object_count(); ++mo) {
    const ObjId M = obj(mo);
    for (MorId m : cat.hom(M, x)) {
      Witness w{x, M, m, {}};
      std::optional<MorId> stuck;
      for (MorId p : cat.into(x)) {
        std::optional<MorId> found;
        for (MorId h : cat.hom(M, cat.dom(p)))
          if (cat.compose_unchecked(p, h) == m) {
            found = h;
            break;
          }
        if (!found) {
          stuck = p;
          break;
        }
        w.factors.emplace(p, *found);
      }
      if (!stuck) {
        decision.witness = std::move(w);
        decision.certificate.clear();
        return decision;
      }
      decision.certificate.push_back({M, m, FailureReason::empty_domain, stuck, std::nullopt});
    }
  }
  return decision;
}

Decision decide_uniformly_movable(const FinCategory& cat, ObjId x) {
  if (x.index >= cat.object_count()) throw Error(Errc::unknown_object, "object index");
  Decision decision{x, std::nullopt, {}};
  const auto in = cat.into(x);
  std::vector<std::int32_t> var(cat.morphism_count(), -1);
  for (std::size_t i = 0; i < in.size(); ++i) var[in[i].index] = static_cast<std::int32_t>(i);

  std::vector<std::array<MorId, 3>> triples;
  std::vector<detail::Link> links;
  std::set<std::tuple<std::size_t, std::size_t, std::uint32_t>> seen;
  for (MorId p : in) {
    for (MorId r : cat.into(cat.dom(p))) {
      const MorId q = cat.compose_unchecked(p, r);
      const auto a = static_cast<std::size_t>(var[p.index]);
      const auto b = static_cast<std::size_t>(var[q.index]);
      if (!seen.emplace(a, b, r.index).second) continue;
      links.push_back({a, b, r});
      triples.push_back({p, q, r});
    }
  }

  for (std::size_t mo = 0; mo < cat.object_count(); ++mo) {
    const ObjId M = obj(mo);
    for (MorId m : cat.hom(M, x)) {
      detail::Csp csp;
      csp.links = links;
      for (MorId p : in) {
        std::vector<MorId> dom;
        for (MorId h : cat.hom(M, cat.dom(p)))
          if (cat.compose_unchecked(p, h) == m) dom.push_back(h);
        csp.domains.push_back(std::move(dom));
      }
      auto result = detail::solve(cat, csp);
      if (result.solution) {
        Witness w{x, M, m, {}};
        for (std::size_t i = 0; i < in.size(); ++i) w.factors.emplace(in[i], (*result.solution)[i]);
        decision.witness = std::move(w);
        decision.certificate.clear();
        return decision;
      }
      CandidateFailure failure{M, m, FailureReason::exhausted, std::nullopt, std::nullopt};
      if (result.failure == detail::CspFailure::empty_domain) {
        failure.reason = FailureReason::empty_domain;
        failure.variable = in[result.variable];
      } else if (result.failure == detail::CspFailure::contradiction) {
        failure.reason = FailureReason::contradiction;
        failure.triple = triples[result.link];
      }
      decision.certificate.push_back(failure);
    }
  }
  return decision;
}

bool CategoryReport::holds() const {
  for (const auto& d : objects)
    if (!d) return false;
  return true;
}

CategoryReport decide_category(const FinCategory& cat, bool uniform) {
  CategoryReport report;
  report.uniform = uniform;
  for (std::size_t o = 0; o < cat.object_count(); ++o)
    report.objects.push_back(uniform ? decide_uniformly_movable(cat, obj(o))
                                     : decide_movable(cat, obj(o)));
  return report;
}

Decision decide_co_movable(const FinCategory& cat, ObjId x, bool uniform) {
  const FinCategory d = dual(cat);
  return uniform ? decide_uniformly_movable(d, x) : decide_movable(d, x);
}

std::string describe(const FinCategory& cat, const CandidateFailure& f) {
  std::ostringstream out;
  out << "(M=" << cat.name(f.mover) << ", m=" << cat.name(f.movability) << "): ";
  switch (f.reason) {
  case FailureReason::empty_domain:
    out << "no factor for " << cat.name(*f.variable);
    break;
  case FailureReason::contradiction:
    out << "contradiction at p=" << cat.name((*f.triple)[0]) << " q=" << cat.name((*f.triple)[1])
        << " r=" << cat.name((*f.triple)[2]);
    break;
  case FailureReason::exhausted:
    out << "search exhausted";
    break;
  }
  return out.str();
}

std::string describe(const FinCategory& cat, const Witness& w) {
  std::ostringstream out;
  out << "X=" << cat.name(w.target) << " M=" << cat.name(w.mover) << " m=" << cat.name(w.movability);
  for (const auto& [p, u] : w.factors) out << "\n  u(" << cat.name(p) << ") = " << cat.name(u);
  return out.str();
}

// ---------------------------------------------------------------------------

Witness witness_from_initial(const FinCategory& cat, ObjId initial, ObjId x) {
  if (initial.index >= cat.object_count() || x.index >= cat.object_count())
    throw Error(Errc::unknown_object, "object index");
  if (!is_initial(cat, initial)) throw Error(Errc::not_initial, cat.name(initial));
  Witness w{x, initial, cat.hom(initial, x)[0], {}};
  for (MorId p : cat.into(x)) w.factors.emplace(p, cat.hom(initial, cat.dom(p))[0]);
  return w;
}

Witness witness_from_nulls(const FinCategory& cat, const NullFamily& nulls, ObjId x0, ObjId x) {
  if (x0.index >= cat.object_count() || x.index >= cat.object_count())
    throw Error(Errc::unknown_object, "object index");
  if (auto d = check_null_family(cat, nulls); !d.ok())
    throw Error(Errc::invalid_null_family, d.first().str(), d);
  Witness w{x, x0, nulls(x0, x), {}};
  for (MorId p : cat.into(x)) w.factors.emplace(p, nulls(x0, cat.dom(p)));
  return w;
}

Witness transfer_domination(const FinCategory& cat, const Witness& wx, MorId f, MorId g) {
  if (f.index >= cat.morphism_count() || g.index >= cat.morphism_count())
    throw Error(Errc::unknown_morphism, "morphism index");
  const ObjId y = cat.cod(f);
  if (cat.dom(g) != y || cat.cod(g) != cat.dom(f) || cat.compose_unchecked(f, g) != cat.identity(y))
    throw Error(Errc::not_a_retraction, cat.name(f) + "∘" + cat.name(g));
  if (wx.target != cat.dom(f)) throw Error(Errc::invalid_witness, "witness target is not dom f");
  if (auto d = verify_witness(cat, wx, true); !d.ok())
    throw Error(Errc::invalid_witness, d.first().str(), d);
  Witness w{y, wx.mover, cat.compose_unchecked(f, wx.movability), {}};
  for (MorId p : cat.into(y)) w.factors.emplace(p, wx.factor(cat.compose_unchecked(g, p)));
  return w;
}

namespace {

bool same_maps(const Functor& a, const Functor& b) {
  return a.on_objects == b.on_objects && a.on_morphisms == b.on_morphisms;
}

} // namespace

std::map<ObjId, Witness> transfer_weak_functorial(const Functor& j, const Functor& d,
                                                  const NatTrans& psi,
                                                  const std::map<ObjId, Witness>& in_k) {
  const FinCategory& L = *j.source;
  const FinCategory& K = *j.target;
  auto invalid = [](const std::string& what, Diagnostics details = {}) {
    return Error(Errc::invalid_functor_data, what, std::move(details));
  };
  if (!(K == *d.source) || !(L == *d.target)) throw invalid("J and D do not form a round trip");
  if (auto diag = validate_functor(j); !diag.ok()) throw invalid("J: " + diag.first().str(), diag);
  if (auto diag = validate_functor(d); !diag.ok()) throw invalid("D: " + diag.first().str(), diag);
  const Functor dj = compose(d, j);
  if (!same_maps(psi.from, dj)) throw invalid("psi does not start at D∘J");
  if (!same_maps(psi.to, identity_functor(j.source))) throw invalid("psi does not end at 1_L");
  if (auto diag = validate_nat_trans(psi); !diag.ok())
    throw invalid("psi: " + diag.first().str(), diag);

  std::map<ObjId, Witness> out;
  for (std::size_t xi = 0; xi < L.object_count(); ++xi) {
    const ObjId x = obj(xi);
    auto it = in_k.find(j(x));
    if (it == in_k.end()) throw Error(Errc::missing_source_witness, K.name(j(x)));
    const Witness& wk = it->second;
    if (auto diag = verify_witness(K, wk, true); !diag.ok() || wk.target != j(x))
      throw Error(Errc::invalid_witness, K.name(j(x)), diag);
    Witness w{x, d(wk.mover), L.compose_unchecked(psi.components[xi], d(wk.movability)), {}};
    for (MorId p : L.into(x)) {
      const ObjId y = L.dom(p);
      w.factors.emplace(p, L.compose_unchecked(psi.components[y.index], d(wk.factor(j(p)))));
    }
    out.emplace(x, std::move(w));
  }
  return out;
}

Witness product_witness(const Product& prod, const std::vector<Witness>& factors) {
  if (factors.size() != prod.factors.size())
    throw Error(Errc::factor_mismatch, std::to_string(factors.size()) + " witnesses for " +
                                           std::to_string(prod.factors.size()) + " factors");
  std::vector<ObjId> targets, movers;
  std::vector<MorId> ms;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (auto d = verify_witness(*prod.factors[i], factors[i], true); !d.ok())
      throw Error(Errc::invalid_witness, "factor " + std::to_string(i) + ": " + d.first().str(), d);
    targets.push_back(factors[i].target);
    movers.push_back(factors[i].mover);
    ms.push_back(factors[i].movability);
  }
  const FinCategory& C = *prod.category;
  Witness w{prod.object_of(targets), prod.object_of(movers), prod.morphism_of(ms), {}};
  for (MorId p : C.into(w.target)) {
    const auto parts = prod.components(p);
    std::vector<MorId> us;
    for (std::size_t i = 0; i < parts.size(); ++i) us.push_back(factors[i].factor(parts[i]));
    w.factors.emplace(p, prod.morphism_of(us));
  }
  return w;
}

Diagnostics check_pullback_relation(const FinCategory& cat, const Witness& wz, MorId f, MorId g) {
  auto pb = find_pullback(cat, f, g);
  if (!pb) throw Error(Errc::no_pullback, cat.name(f) + ", " + cat.name(g));
  if (wz.target != cat.cod(f)) throw Error(Errc::invalid_witness, "witness target is not cod f");
  if (auto d = verify_witness(cat, wz, true); !d.ok())
    throw Error(Errc::invalid_witness, d.first().str(), d);
  Diagnostics out;
  const auto mediator = pb->mediator(wz.factor(f), wz.factor(g));
  if (!mediator) {
    out.add({Errc::violation, "pullback relation", {cat.name(wz.factor(f)), cat.name(wz.factor(g))},
             "cone has no mediator"});
    return out;
  }
  const MorId t = cat.compose_unchecked(f, pb->proj_x);
  const MorId ut = wz.factor(t);
  if (*mediator != ut)
    out.add({Errc::violation, "pullback relation", {cat.name(*mediator), cat.name(ut)},
             "mediator differs from u(f∘p_X)"});
  return out;
}

} // namespace movcat
