#include "movcat/prosys.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "movcat/detail/csp.hpp"

namespace movcat {

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

std::optional<Level> DirectedPreorder::find(std::string_view name) const {
  for (Level i = 0; i < elements.size(); ++i)
    if (elements[i] == name) return i;
  return std::nullopt;
}

DirectedPreorder DirectedPreorder::chain(std::size_t n) {
  DirectedPreorder p;
  for (std::size_t i = 0; i < n; ++i) p.elements.push_back(std::to_string(i + 1));
  p.le.assign(n * n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a; b < n; ++b) p.le[a * n + b] = 1;
  return p;
}

Diagnostics validate_preorder(const DirectedPreorder& index) {
  Diagnostics out;
  const std::size_t n = index.size();
  if (n == 0) {
    out.add({Errc::not_directed, "nonempty", {}, "empty index set"});
    return out;
  }
  if (index.le.size() != n * n) {
    out.add({Errc::not_directed, "shape", {}, "relation table has the wrong size"});
    return out;
  }
  for (Level a = 0; a < n; ++a)
    if (!index.leq(a, a)) out.add({Errc::not_directed, "reflexive", {index.elements[a]}, {}});
  for (Level a = 0; a < n; ++a)
    for (Level b = 0; b < n; ++b)
      for (Level c = 0; c < n; ++c)
        if (index.leq(a, b) && index.leq(b, c) && !index.leq(a, c))
          out.add({Errc::not_directed, "transitive",
                   {index.elements[a], index.elements[b], index.elements[c]}, {}});
  for (Level a = 0; a < n; ++a)
    for (Level b = a + 1; b < n; ++b) {
      bool bounded = false;
      for (Level c = 0; c < n && !bounded; ++c) bounded = index.leq(a, c) && index.leq(b, c);
      if (!bounded)
        out.add({Errc::not_directed, "upper bound", {index.elements[a], index.elements[b]}, {}});
    }
  return out;
}

MorId FiniteIndexSystem::bond(Level a, Level b) const {
  auto it = bonds.find({a, b});
  if (it == bonds.end() || !index.leq(a, b))
    throw Error(Errc::not_comparable, index.elements.at(a) + ", " + index.elements.at(b));
  return it->second;
}

ObjId PeriodicSequence::object(Level n) const {
  if (n == 0) throw Error(Errc::not_comparable, "sequence levels start at 1");
  if (n <= prefix_length()) return prefix_objects[n - 1];
  return cycle_objects[(n - prefix_length() - 1) % period()];
}

MorId PeriodicSequence::step(Level n) const {
  if (n == 0) throw Error(Errc::not_comparable, "sequence levels start at 1");
  if (n <= prefix_length()) return prefix_steps[n - 1];
  return cycle_steps[(n - prefix_length() - 1) % period()];
}

Level PeriodicSequence::phase_class(Level n) const {
  if (n <= prefix_length()) return n;
  return prefix_length() + 1 + (n - prefix_length() - 1) % period();
}

std::uint64_t DivisibilitySequence::multiplier(Level n) const {
  if (n == 0) throw Error(Errc::not_comparable, "sequence levels start at 1");
  if (n <= prefix_length()) return prefix[n - 1];
  return cycle[(n - prefix_length() - 1) % period()];
}

Diagnostics validate_system(const FiniteIndexSystem& sys) {
  Diagnostics out = validate_preorder(sys.index);
  if (!out.ok()) return out;
  const std::size_t n = sys.index.size();
  const FinCategory& C = *sys.ambient;
  if (sys.objects.size() != n) {
    out.add({Errc::functoriality_violation, "objects", {}, "one object per level required"});
    return out;
  }
  for (Level a = 0; a < n; ++a)
    for (Level b = 0; b < n; ++b) {
      if (!sys.index.leq(a, b)) continue;
      auto it = sys.bonds.find({a, b});
      const std::vector<std::string> ids{sys.index.elements[a], sys.index.elements[b]};
      if (it == sys.bonds.end()) {
        out.add({Errc::functoriality_violation, "bond", ids, "missing bond"});
        continue;
      }
      const MorId p = it->second;
      if (p.index >= C.morphism_count() || C.dom(p) != sys.objects[b] || C.cod(p) != sys.objects[a])
        out.add({Errc::functoriality_violation, "dom/cod", ids, {}});
      else if (a == b && p != C.identity(sys.objects[a]))
        out.add({Errc::functoriality_violation, "identity", ids, {}});
    }
  for (const auto& [key, p] : sys.bonds)
    if (key.first >= n || key.second >= n || !sys.index.leq(key.first, key.second))
      out.add({Errc::not_comparable, "bond", {}, "bond between incomparable levels"});
  if (!out.ok()) return out;
  for (Level a = 0; a < n; ++a)
    for (Level b = 0; b < n; ++b)
      for (Level c = 0; c < n; ++c) {
        if (!sys.index.leq(a, b) || !sys.index.leq(b, c)) continue;
        if (C.compose_unchecked(sys.bond(a, b), sys.bond(b, c)) != sys.bond(a, c))
          out.add({Errc::functoriality_violation, "composition",
                   {sys.index.elements[a], sys.index.elements[b], sys.index.elements[c]}, {}});
      }
  return out;
}

Diagnostics validate_system(const PeriodicSequence& sys) {
  Diagnostics out;
  const FinCategory& C = *sys.ambient;
  if (sys.period() == 0 || sys.cycle_steps.size() != sys.period() ||
      sys.prefix_steps.size() != sys.prefix_length()) {
    out.add({Errc::phase_mismatch, "shape", {}, "one step per object and a nonempty cycle"});
    return out;
  }
  for (auto o : sys.prefix_objects)
    if (o.index >= C.object_count()) out.add({Errc::phase_mismatch, "object", {}, "unknown object"});
  for (auto o : sys.cycle_objects)
    if (o.index >= C.object_count()) out.add({Errc::phase_mismatch, "object", {}, "unknown object"});
  for (auto m : sys.prefix_steps)
    if (m.index >= C.morphism_count()) out.add({Errc::phase_mismatch, "step", {}, "unknown morphism"});
  for (auto m : sys.cycle_steps)
    if (m.index >= C.morphism_count()) out.add({Errc::phase_mismatch, "step", {}, "unknown morphism"});
  if (!out.ok()) return out;
  for (Level n = 1; n <= sys.prefix_length() + sys.period(); ++n) {
    const MorId s = sys.step(n);
    if (C.dom(s) != sys.object(n + 1) || C.cod(s) != sys.object(n))
      out.add({Errc::phase_mismatch, "step", {std::to_string(n), C.name(s)},
               "step must go from level n+1 to level n"});
  }
  return out;
}

Diagnostics validate_system(const DivisibilitySequence& sys) {
  Diagnostics out;
  if (sys.cycle.empty()) out.add({Errc::phase_mismatch, "shape", {}, "empty cycle"});
  for (auto v : sys.prefix)
    if (v == 0) out.add({Errc::law_violation, "multiplier", {}, "multipliers must be positive"});
  for (auto v : sys.cycle)
    if (v == 0) out.add({Errc::law_violation, "multiplier", {}, "multipliers must be positive"});
  return out;
}

Diagnostics validate_system(const FiniteSystem& sys) {
  return std::visit([](const auto& s) { return validate_system(s); }, sys);
}

MorId composite_bond(const FiniteIndexSystem& sys, Level a, Level b) { return sys.bond(a, b); }

MorId composite_bond(const PeriodicSequence& sys, Level a, Level b) {
  if (a == 0 || a > b) throw Error(Errc::not_comparable, std::to_string(a) + " > " + std::to_string(b));
  const FinCategory& C = *sys.ambient;
  MorId p = C.identity(sys.object(a));
  for (Level n = a; n < b; ++n) p = C.compose_unchecked(p, sys.step(n));
  return p;
}

std::uint64_t composite_bond(const DivisibilitySequence& sys, Level a, Level b) {
  if (a == 0 || a > b) throw Error(Errc::not_comparable, std::to_string(a) + " > " + std::to_string(b));
  std::uint64_t p = 1;
  for (Level n = a; n < b; ++n)
    if (__builtin_mul_overflow(p, sys.multiplier(n), &p))
      throw Error(Errc::arithmetic_overflow, "p_" + std::to_string(a) + "," + std::to_string(b));
  return p;
}

const FinCategory& ambient(const FiniteSystem& sys) {
  return std::visit([](const auto& s) -> const FinCategory& { return *s.ambient; }, sys);
}

Level first_level(const FiniteSystem& sys) {
  return std::holds_alternative<FiniteIndexSystem>(sys) ? 0 : 1;
}

bool leq(const FiniteSystem& sys, Level a, Level b) {
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) return f->index.leq(a, b);
  return a <= b;
}

ObjId level_object(const FiniteSystem& sys, Level n) {
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) return f->objects.at(n);
  return std::get<PeriodicSequence>(sys).object(n);
}

MorId composite_bond(const FiniteSystem& sys, Level a, Level b) {
  return std::visit([&](const auto& s) { return composite_bond(s, a, b); }, sys);
}

std::string level_name(const FiniteSystem& sys, Level n) {
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) return f->index.elements.at(n);
  return std::to_string(n);
}

// ---------------------------------------------------------------------------
// Families and threads
// ---------------------------------------------------------------------------

bool LevelFamily::defined(Level n) const {
  if (n < first || values.empty()) return false;
  return n <= last() || loop_from.has_value();
}

MorId LevelFamily::at(Level n) const {
  if (!defined(n)) throw Error(Errc::missing_thread, "level " + std::to_string(n) + " outside family");
  if (n <= last()) return values[n - first];
  return values[*loop_from + (n - *loop_from) % loop_length() - first];
}

namespace {

std::size_t sequence_horizon(const PeriodicSequence& s, std::initializer_list<const LevelFamily*> fams,
                             Level floor) {
  std::size_t period = s.period();
  Level reach = std::max<Level>(floor, s.prefix_length() + s.period());
  for (const auto* f : fams) {
    reach = std::max(reach, f->last());
    if (f->loop_from) period = std::lcm(period, f->loop_length());
  }
  return reach + 2 * period;
}

} // namespace

Diagnostics verify_thread(const FiniteSystem& sys, const ProThread& t) {
  Diagnostics out;
  const FinCategory& C = ambient(sys);
  const auto& r = t.components;
  auto lvl = [&](Level n) { return level_name(sys, n); };
  if (!leq(sys, t.source, t.index)) {
    out.add({Errc::thread_verification_failure, "index", {lvl(t.source), lvl(t.index)},
             "index is not above the source level"});
    return out;
  }
  const ObjId xm = level_object(sys, t.index);
  std::vector<Level> levels;
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    if (r.first != 0 || r.values.size() != f->index.size()) {
      out.add({Errc::thread_verification_failure, "shape", {}, "one component per level required"});
      return out;
    }
    for (Level n = 0; n < f->index.size(); ++n) levels.push_back(n);
  } else {
    const auto& s = std::get<PeriodicSequence>(sys);
    if (r.first != 1 || r.values.empty() || !r.loop_from || *r.loop_from < r.first ||
        *r.loop_from > r.last()) {
      out.add({Errc::thread_verification_failure, "shape", {}, "needs an eventually periodic family from level 1"});
      return out;
    }
    const auto horizon = sequence_horizon(s, {&r}, t.index);
    for (Level n = 1; n <= horizon; ++n) levels.push_back(n);
  }
  for (Level n : levels) {
    const MorId v = r.at(n);
    if (v.index >= C.morphism_count() || C.dom(v) != xm || C.cod(v) != level_object(sys, n)) {
      out.add({Errc::thread_verification_failure, "dom/cod", {lvl(n)}, {}});
      return out;
    }
  }
  if (r.at(t.source) != composite_bond(sys, t.source, t.index)) {
    out.add({Errc::thread_verification_failure, "base", {lvl(t.source)}, "r^λ differs from p_{λ,m}"});
    return out;
  }
  if (std::holds_alternative<FiniteIndexSystem>(sys)) {
    for (Level a : levels)
      for (Level b : levels)
        if (leq(sys, a, b) && C.compose_unchecked(composite_bond(sys, a, b), r.at(b)) != r.at(a)) {
          out.add({Errc::thread_verification_failure, "compatibility", {lvl(a), lvl(b)}, {}});
          return out;
        }
  } else {
    const auto& s = std::get<PeriodicSequence>(sys);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      const Level n = levels[i];
      if (C.compose_unchecked(s.step(n), r.at(n + 1)) != r.at(n)) {
        out.add({Errc::thread_verification_failure, "compatibility", {lvl(n), lvl(n + 1)}, {}});
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Movability of finite-hom systems
// ---------------------------------------------------------------------------

std::vector<Level> representative_levels(const FiniteSystem& sys) {
  std::vector<Level> out;
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    for (Level n = 0; n < f->index.size(); ++n) out.push_back(n);
  } else {
    const auto& s = std::get<PeriodicSequence>(sys);
    for (Level n = 1; n <= s.prefix_length() + s.period(); ++n) out.push_back(n);
  }
  return out;
}

std::optional<Level> SystemMovability::index_for(Level level, std::size_t prefix,
                                                 std::size_t period) const {
  Level shift = 0;
  Level rep = level;
  if (period > 0 && level > prefix + period) {
    rep = prefix + 1 + (level - prefix - 1) % period;
    shift = level - rep;
  }
  for (const auto& i : indices)
    if (i.level == rep) return i.index + shift;
  return std::nullopt;
}

namespace {

// Calls visit(m) for candidate indices m >= lambda. For sequences the walk
// stops once (phase of m, p_{λm}, extra(m)) repeats.
template <class Visit>
void for_candidates(const FiniteSystem& sys, Level lambda, const std::function<std::size_t(Level)>& extra,
                    Visit&& visit) {
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    for (Level m = 0; m < f->index.size(); ++m)
      if (f->index.leq(lambda, m) && visit(m)) return;
    return;
  }
  const auto& s = std::get<PeriodicSequence>(sys);
  const FinCategory& C = *s.ambient;
  std::set<std::tuple<Level, std::uint32_t, std::size_t>> seen;
  MorId p = C.identity(s.object(lambda));
  for (Level m = lambda;; ++m) {
    if (!seen.emplace(s.phase_class(m), p.index, extra ? extra(m) : 0).second) return;
    if (visit(m)) return;
    p = C.compose_unchecked(p, s.step(m));
  }
}

struct LevelWalk {
  std::vector<Level> levels;     // λ'' in visiting order
  std::vector<MorId> bonds;      // p_{λλ''}
  std::optional<Level> loop_from;
};

// Levels above lambda. For sequences: λ, λ+1, ... until (phase, p_{λλ''})
// repeats; loop_from is the first occurrence of the repeated state.
LevelWalk walk_above(const FiniteSystem& sys, Level lambda) {
  LevelWalk w;
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    for (Level n = 0; n < f->index.size(); ++n)
      if (f->index.leq(lambda, n)) {
        w.levels.push_back(n);
        w.bonds.push_back(f->bond(lambda, n));
      }
    return w;
  }
  const auto& s = std::get<PeriodicSequence>(sys);
  const FinCategory& C = *s.ambient;
  std::map<std::pair<Level, std::uint32_t>, Level> seen;
  MorId p = C.identity(s.object(lambda));
  for (Level n = lambda;; ++n) {
    auto [it, fresh] = seen.emplace(std::make_pair(s.phase_class(n), p.index), n);
    if (!fresh) {
      w.loop_from = it->second;
      return w;
    }
    w.levels.push_back(n);
    w.bonds.push_back(p);
    p = C.compose_unchecked(p, s.step(n));
  }
}

} // namespace

std::vector<MorId> eventual_image(const FiniteSystem& sys, Level lambda, Level m) {
  if (!leq(sys, lambda, m)) throw Error(Errc::not_comparable, level_name(sys, lambda) + ", " + level_name(sys, m));
  const FinCategory& C = ambient(sys);
  const ObjId xm = level_object(sys, m);
  const ObjId xl = level_object(sys, lambda);
  std::vector<char> keep(C.morphism_count(), 0);
  for (MorId h : C.hom(xm, xl)) keep[h.index] = 1;
  const auto walk = walk_above(sys, lambda);
  for (std::size_t i = 0; i < walk.levels.size(); ++i) {
    std::vector<char> image(C.morphism_count(), 0);
    for (MorId h : C.hom(xm, level_object(sys, walk.levels[i])))
      image[C.compose_unchecked(walk.bonds[i], h).index] = 1;
    for (std::size_t j = 0; j < keep.size(); ++j) keep[j] = keep[j] && image[j];
  }
  std::vector<MorId> out;
  for (MorId h : C.hom(xm, xl))
    if (keep[h.index]) out.push_back(h);
  return out;
}

SystemMovability decide_system_movable(const FiniteSystem& sys) {
  SystemMovability result;
  const FinCategory& C = ambient(sys);
  for (Level lambda : representative_levels(sys)) {
    std::optional<MovabilityIndex> found;
    std::size_t tried = 0;
    for_candidates(sys, lambda, {}, [&](Level m) {
      ++tried;
      const MorId base = composite_bond(sys, lambda, m);
      const auto image = eventual_image(sys, lambda, m);
      if (std::find(image.begin(), image.end(), base) == image.end()) return false;
      MovabilityIndex idx{lambda, m, {}, std::nullopt};
      const auto walk = walk_above(sys, lambda);
      const ObjId xm = level_object(sys, m);
      for (std::size_t i = 0; i < walk.levels.size(); ++i) {
        for (MorId h : C.hom(xm, level_object(sys, walk.levels[i])))
          if (C.compose_unchecked(walk.bonds[i], h) == base) {
            idx.factors.emplace_back(walk.levels[i], h);
            break;
          }
      }
      idx.loop_from = walk.loop_from;
      found = std::move(idx);
      return true;
    });
    if (!found) {
      result.failure = SystemFailure{
          lambda, "none of " + std::to_string(tried) +
                      " candidate indices has p_{λm} in every deeper image"};
      return result;
    }
    result.indices.push_back(std::move(*found));
  }
  return result;
}

namespace {

using Set = std::vector<char>;

std::optional<ProThread> finite_thread(const FiniteIndexSystem& f, Level lambda, Level m,
                                       const ThreadFilter* filter) {
  const FinCategory& C = *f.ambient;
  const std::size_t n = f.index.size();
  const ObjId xm = f.objects[m];
  const MorId base = f.bond(lambda, m);
  detail::Csp csp;
  for (Level v = 0; v < n; ++v) {
    std::vector<MorId> dom;
    for (MorId h : C.hom(xm, f.objects[v])) {
      if (v == lambda && h != base) continue;
      if (filter && !filter->accept(v, h)) continue;
      dom.push_back(h);
    }
    csp.domains.push_back(std::move(dom));
  }
  for (Level a = 0; a < n; ++a)
    for (Level b = 0; b < n; ++b)
      if (a != b && f.index.leq(a, b)) csp.links.push_back({a, b, f.bond(a, b)});
  auto result = detail::solve(C, csp);
  if (!result.solution) return std::nullopt;
  return ProThread{lambda, m, LevelFamily{0, *result.solution, std::nullopt}};
}

std::optional<ProThread> sequence_thread(const PeriodicSequence& s, Level lambda, Level m,
                                         const ThreadFilter* filter) {
  const FinCategory& C = *s.ambient;
  const std::size_t nm = C.morphism_count();
  const ObjId xm = s.object(m);
  const MorId base = composite_bond(s, lambda, m);

  // Walk ν upward from max(λ, k+1) until the state repeats.
  std::vector<MorId> bond_at; // p_{λν} for ν = λ, λ+1, ...
  MorId p = C.identity(s.object(lambda));
  std::map<std::tuple<Level, std::uint32_t, std::size_t>, Level> seen;
  const Level start = std::max<Level>(lambda, s.prefix_length() + 1);
  Level loop_start = 0, period = 0;
  for (Level v = lambda;; ++v) {
    bond_at.push_back(p);
    if (v >= start) {
      auto [it, fresh] = seen.emplace(std::make_tuple(s.phase_class(v), p.index, filter ? filter->key(v) : 0), v);
      if (!fresh) {
        loop_start = it->second;
        period = v - it->second;
        bond_at.pop_back();
        break;
      }
    }
    p = C.compose_unchecked(p, s.step(v));
  }
  const Level end = loop_start + period; // exclusive
  auto slot = [&](Level v) { return v - lambda; };

  std::vector<Set> allowed(end - lambda, Set(nm, 0));
  for (Level v = lambda; v < end; ++v)
    for (MorId h : C.hom(xm, s.object(v)))
      if (C.compose_unchecked(bond_at[slot(v)], h) == base && (!filter || filter->accept(v, h)))
        allowed[slot(v)][h.index] = 1;

  auto next = [&](Level v) { return v + 1 == end ? loop_start : v + 1; };
  auto supported = [&](Level v, MorId h, const std::vector<Set>& g) {
    for (MorId h2 : C.hom(xm, s.object(v + 1)))
      if (g[slot(next(v))][h2.index] && C.compose_unchecked(s.step(v), h2) == h) return true;
    return false;
  };

  // Greatest fixpoint on the periodic block, then backwards through the rest.
  std::vector<Set> g = allowed;
  for (bool changed = true; changed;) {
    changed = false;
    for (Level v = end; v-- > loop_start;)
      for (MorId h : C.hom(xm, s.object(v)))
        if (g[slot(v)][h.index] && !supported(v, h, g)) {
          g[slot(v)][h.index] = 0;
          changed = true;
        }
  }
  for (Level v = loop_start; v-- > lambda;)
    for (MorId h : C.hom(xm, s.object(v)))
      if (g[slot(v)][h.index] && !supported(v, h, g)) g[slot(v)][h.index] = 0;
  if (!g[slot(lambda)][base.index]) return std::nullopt;

  auto lift = [&](Level v, MorId h) {
    for (MorId h2 : C.hom(xm, s.object(v + 1)))
      if (g[slot(next(v))][h2.index] && C.compose_unchecked(s.step(v), h2) == h) return h2;
    throw Error(Errc::thread_verification_failure, "lost support while extending a thread");
  };

  std::vector<MorId> values; // r^λ, r^{λ+1}, ...
  values.push_back(base);
  for (Level v = lambda; v < loop_start; ++v) values.push_back(lift(v, values.back()));
  // Iterate the one-period lift map until its start value repeats.
  std::map<std::uint32_t, std::size_t> first_round;
  std::size_t round = 0;
  for (;; ++round) {
    const MorId head = values.back();
    auto [it, fresh] = first_round.emplace(head.index, round);
    if (!fresh) {
      values.pop_back();
      const Level loop_from = loop_start + it->second * period;
      std::vector<MorId> full;
      for (Level v = 1; v < lambda; ++v)
        full.push_back(C.compose_unchecked(composite_bond(s, v, lambda), base));
      full.insert(full.end(), values.begin(), values.end());
      return ProThread{lambda, m, LevelFamily{1, std::move(full), loop_from}};
    }
    for (Level j = 0; j < period; ++j) {
      const Level v = loop_start + j;
      values.push_back(lift(v, values.back()));
    }
  }
}

} // namespace

std::optional<ProThread> find_thread(const FiniteSystem& sys, Level lambda, Level m,
                                     const ThreadFilter* filter) {
  if (!leq(sys, lambda, m)) throw Error(Errc::not_comparable, level_name(sys, lambda) + ", " + level_name(sys, m));
  if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
    auto t = finite_thread(*f, lambda, m, filter);
    return t;
  }
  return sequence_thread(std::get<PeriodicSequence>(sys), lambda, m, filter);
}

SystemUniformity decide_system_uniform(const FiniteSystem& sys) {
  SystemUniformity result;
  for (Level lambda : representative_levels(sys)) {
    std::optional<ProThread> found;
    std::size_t tried = 0;
    for_candidates(sys, lambda, {}, [&](Level m) {
      ++tried;
      found = find_thread(sys, lambda, m);
      return found.has_value();
    });
    if (!found) {
      result.failure = SystemFailure{lambda, "none of " +
                                                 std::to_string(tried) + " candidate indices carries a thread"};
      return result;
    }
    result.threads.push_back(std::move(*found));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Divisibility model
// ---------------------------------------------------------------------------

namespace {

bool cycle_is_trivial(const DivisibilitySequence& s) {
  return std::all_of(s.cycle.begin(), s.cycle.end(), [](auto v) { return v == 1; });
}

// First level >= from with a multiplier above 1 (cycle must contain one).
Level next_nonunit(const DivisibilitySequence& s, Level from) {
  for (Level n = from;; ++n)
    if (s.multiplier(n) > 1) return n;
}

} // namespace

IdealImage eventual_image(const DivisibilitySequence& s, Level lambda, Level m) {
  IdealImage out;
  const std::uint64_t bond = composite_bond(s, lambda, m);
  if (!cycle_is_trivial(s)) {
    out.note = "no nonzero stabilizer containing p_{" + std::to_string(lambda) + "," +
               std::to_string(m) + "}=" + std::to_string(bond);
    return out;
  }
  const Level settle = std::max<Level>(lambda, s.prefix_length() + 1);
  out.generator = composite_bond(s, lambda, settle);
  out.contains_bond = bond % *out.generator == 0;
  out.note = "stable generator " + std::to_string(*out.generator) + " from level " + std::to_string(settle);
  return out;
}

DivisibilityVerdict decide_system_movable(const DivisibilitySequence& s) {
  DivisibilityVerdict v;
  if (auto d = validate_system(s); !d.ok()) throw Error(Errc::law_violation, d.first().str(), d);
  for (Level lambda = 1; lambda <= s.prefix_length() + s.period(); ++lambda) {
    if (!cycle_is_trivial(s)) {
      const Level deeper = next_nonunit(s, lambda) + 1;
      std::ostringstream why;
      why << "the images p_{" << lambda << ",λ''}ℤ never stabilise"
          << " (" << eventual_image(s, lambda, lambda).note << "); for any m, take λ'' past the next"
          << " multiplier above 1 after m, e.g. m=" << lambda << ": p_{" << lambda << "," << deeper
          << "}=" << composite_bond(s, lambda, deeper) << " does not divide p_{" << lambda << ","
          << lambda << "}=1";
      v.failure = SystemFailure{lambda, why.str()};
      return v;
    }
    const Level settle = std::max<Level>(lambda, s.prefix_length() + 1);
    for (Level m = lambda; m <= settle; ++m) {
      const auto image = eventual_image(s, lambda, m);
      if (image.contains_bond) {
        v.indices.push_back({lambda, m, composite_bond(s, lambda, m)});
        break;
      }
    }
  }
  return v;
}

DivisibilityVerdict decide_system_uniform(const DivisibilitySequence& s) {
  DivisibilityVerdict v;
  if (auto d = validate_system(s); !d.ok()) throw Error(Errc::law_violation, d.first().str(), d);
  for (Level lambda = 1; lambda <= s.prefix_length() + s.period(); ++lambda) {
    const Level last_candidate = std::max<Level>(lambda, s.prefix_length() + 1);
    bool found = false;
    std::ostringstream why;
    for (Level m = lambda; m <= last_candidate && !found; ++m) {
      const std::uint64_t base = composite_bond(s, lambda, m);
      const Level horizon = std::max<Level>(m, s.prefix_length() + 1) + s.period();
      IntegerThread t{lambda, m, {}};
      bool ok = true;
      for (Level nu = lambda; nu <= horizon; ++nu) {
        const std::uint64_t p = composite_bond(s, lambda, nu);
        if (base % p != 0) {
          if (m == lambda) why << "p_{" << lambda << "," << nu << "}=" << p
                               << " does not divide p_{" << lambda << "," << m << "}=" << base;
          ok = false;
          break;
        }
        t.values.push_back(base / p);
      }
      if (!ok) continue;
      std::vector<std::uint64_t> below;
      for (Level nu = 1; nu < lambda; ++nu) below.push_back(composite_bond(s, nu, lambda) * base);
      t.values.insert(t.values.begin(), below.begin(), below.end());
      v.indices.push_back({lambda, m, base});
      v.threads.push_back(std::move(t));
      found = true;
    }
    if (!found) {
      if (cycle_is_trivial(s)) why << "level " << lambda << ": no candidate index admits an integer thread";
      else why << "; every later candidate fails the same way since the cycle multiplies by more than 1";
      v.failure = SystemFailure{lambda, why.str()};
      return v;
    }
  }
  return v;
}

// ---------------------------------------------------------------------------
// Expansions
// ---------------------------------------------------------------------------

MorId Expansion::bond(Level a, Level b) const {
  return sub.morphism_embedding[composite_bond(system, a, b).index];
}

ObjId Expansion::object(Level n) const {
  return sub.object_embedding[level_object(system, n).index];
}

Expansion make_expansion(const CategoryRef& amb, const SubcategorySpec& spec, ObjId apex,
                         const FiniteSystem& over, LevelFamily legs) {
  Subcategory sub = extract_subcategory(amb, spec);
  auto lift_obj = [&](ObjId o) {
    auto l = sub.lift(o);
    if (!l) throw Error(Errc::expansion_invalid, "object " + amb->name(o) + " is not in P");
    return *l;
  };
  auto lift_mor = [&](MorId m) {
    auto l = sub.lift(m);
    if (!l) throw Error(Errc::expansion_invalid, "bond " + amb->name(m) + " is not in P");
    return *l;
  };
  if (apex.index >= amb->object_count()) throw Error(Errc::unknown_object, "apex");
  if (auto d = validate_system(over); !d.ok()) throw Error(Errc::expansion_invalid, d.first().str(), d);
  FiniteSystem system;
  if (auto f = std::get_if<FiniteIndexSystem>(&over)) {
    FiniteIndexSystem g{f->index, sub.category, {}, {}};
    for (auto o : f->objects) g.objects.push_back(lift_obj(o));
    for (const auto& [key, m] : f->bonds) g.bonds.emplace(key, lift_mor(m));
    system = std::move(g);
  } else {
    const auto& s = std::get<PeriodicSequence>(over);
    PeriodicSequence g{sub.category, {}, {}, {}, {}};
    for (auto o : s.prefix_objects) g.prefix_objects.push_back(lift_obj(o));
    for (auto m : s.prefix_steps) g.prefix_steps.push_back(lift_mor(m));
    for (auto o : s.cycle_objects) g.cycle_objects.push_back(lift_obj(o));
    for (auto m : s.cycle_steps) g.cycle_steps.push_back(lift_mor(m));
    system = std::move(g);
  }
  Expansion exp{amb, spec, std::move(sub), apex, std::move(system), std::move(legs)};
  if (auto d = validate_expansion(exp); !d.ok()) throw Error(Errc::expansion_invalid, d.first().str(), d);
  return exp;
}

namespace {

Level leg_class(const Expansion& exp, Level n) {
  const auto& legs = exp.legs;
  if (!legs.loop_from || n < *legs.loop_from) return n;
  return *legs.loop_from + (n - *legs.loop_from) % legs.loop_length();
}

std::vector<Level> levels_above(const Expansion& exp, Level from) {
  std::vector<Level> out;
  if (auto f = std::get_if<FiniteIndexSystem>(&exp.system)) {
    for (Level n = 0; n < f->index.size(); ++n)
      if (f->index.leq(from, n)) out.push_back(n);
    return out;
  }
  const Level until = std::max(from, exp.legs.last()) + exp.legs.loop_length();
  for (Level n = from; n <= until; ++n) out.push_back(n);
  return out;
}

} // namespace

Diagnostics validate_expansion(const Expansion& exp) {
  Diagnostics out = validate_system(exp.system);
  if (!out.ok()) return out;
  const FinCategory& T = *exp.ambient;
  const auto& legs = exp.legs;
  std::vector<Level> levels;
  if (auto f = std::get_if<FiniteIndexSystem>(&exp.system)) {
    if (legs.first != 0 || legs.values.size() != f->index.size() || legs.loop_from) {
      out.add({Errc::expansion_invalid, "legs", {}, "one leg per level required"});
      return out;
    }
    for (Level n = 0; n < f->index.size(); ++n) levels.push_back(n);
  } else {
    const auto& s = std::get<PeriodicSequence>(exp.system);
    if (legs.first != 1 || legs.values.empty() || !legs.loop_from || *legs.loop_from > legs.last() ||
        *legs.loop_from <= s.prefix_length() || legs.loop_length() % s.period() != 0) {
      out.add({Errc::expansion_invalid, "legs", {},
               "legs need a loop past the prefix whose length is a multiple of the period"});
      return out;
    }
    for (Level n = 1; n <= legs.last() + legs.loop_length() + 1; ++n) levels.push_back(n);
  }
  for (Level n : levels) {
    const MorId l = legs.at(n);
    if (l.index >= T.morphism_count() || T.dom(l) != exp.apex || T.cod(l) != exp.object(n)) {
      out.add({Errc::expansion_invalid, "dom/cod", {level_name(exp.system, n)}, {}});
      return out;
    }
  }
  if (std::holds_alternative<FiniteIndexSystem>(exp.system)) {
    for (Level a : levels)
      for (Level b : levels)
        if (leq(exp.system, a, b) && T.compose_unchecked(exp.bond(a, b), legs.at(b)) != legs.at(a))
          out.add({Errc::expansion_invalid, "compatibility",
                   {level_name(exp.system, a), level_name(exp.system, b)}, {}});
  } else {
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) {
      const Level n = levels[i];
      if (T.compose_unchecked(exp.bond(n, n + 1), legs.at(n + 1)) != legs.at(n))
        out.add({Errc::expansion_invalid, "compatibility", {std::to_string(n), std::to_string(n + 1)}, {}});
    }
  }
  return out;
}

std::optional<std::pair<Level, MorId>> ae1_factor(const Expansion& exp, MorId f, Level from) {
  const FinCategory& T = *exp.ambient;
  const FinCategory& P = *exp.sub.category;
  auto q = exp.sub.lift(T.cod(f));
  if (!q || T.dom(f) != exp.apex) return std::nullopt;
  for (Level n : levels_above(exp, from)) {
    const ObjId xn = level_object(exp.system, n);
    for (MorId h : P.hom(xn, *q)) {
      const MorId ht = exp.sub.morphism_embedding[h.index];
      if (T.compose_unchecked(ht, exp.leg(n)) == f) return std::make_pair(n, ht);
    }
  }
  return std::nullopt;
}

std::optional<Level> ae2_equalizer(const Expansion& exp, Level lambda, MorId h, MorId k) {
  const FinCategory& T = *exp.ambient;
  if (auto f = std::get_if<FiniteIndexSystem>(&exp.system)) {
    for (Level n = 0; n < f->index.size(); ++n)
      if (f->index.leq(lambda, n) &&
          T.compose_unchecked(h, exp.bond(lambda, n)) == T.compose_unchecked(k, exp.bond(lambda, n)))
        return n;
    return std::nullopt;
  }
  const auto& s = std::get<PeriodicSequence>(exp.system);
  std::set<std::tuple<Level, std::uint32_t, std::uint32_t>> seen;
  MorId a = h, b = k;
  for (Level n = lambda;; ++n) {
    if (a == b) return n;
    if (!seen.emplace(s.phase_class(n), a.index, b.index).second) return std::nullopt;
    const MorId step = exp.sub.morphism_embedding[s.step(n).index];
    a = T.compose_unchecked(a, step);
    b = T.compose_unchecked(b, step);
  }
}

std::vector<Level> representative_levels(const Expansion& exp) {
  if (std::holds_alternative<FiniteIndexSystem>(exp.system)) return representative_levels(exp.system);
  const auto& s = std::get<PeriodicSequence>(exp.system);
  std::vector<Level> out;
  const Level until = std::max<Level>(exp.legs.last(), s.prefix_length() + s.period());
  for (Level n = 1; n <= until; ++n) out.push_back(n);
  return out;
}

Diagnostics check_AE1(const Expansion& exp) {
  Diagnostics out;
  const FinCategory& T = *exp.ambient;
  for (ObjId q : exp.sub.object_embedding)
    for (MorId f : T.hom(exp.apex, q))
      if (!ae1_factor(exp, f, first_level(exp.system)))
        out.add({Errc::ae1_violation, "AE1", {T.name(f)}, "no level factors this morphism"});
  return out;
}

Diagnostics check_AE2(const Expansion& exp) {
  Diagnostics out;
  const FinCategory& T = *exp.ambient;
  const FinCategory& P = *exp.sub.category;
  for (Level n : representative_levels(exp)) {
    const ObjId xn = level_object(exp.system, n);
    for (std::size_t q = 0; q < P.object_count(); ++q) {
      const auto homs = P.hom(xn, obj(q));
      for (std::size_t i = 0; i < homs.size(); ++i)
        for (std::size_t j = i + 1; j < homs.size(); ++j) {
          const MorId h = exp.sub.morphism_embedding[homs[i].index];
          const MorId k = exp.sub.morphism_embedding[homs[j].index];
          if (T.compose_unchecked(h, exp.leg(n)) != T.compose_unchecked(k, exp.leg(n))) continue;
          if (!ae2_equalizer(exp, n, h, k))
            out.add({Errc::ae2_violation, "AE2", {level_name(exp.system, n), T.name(h), T.name(k)},
                     "no deeper level equalises the pair"});
        }
    }
  }
  return out;
}

std::optional<ProThread> leg_compatible_thread(const Expansion& exp, Level lambda, Level m) {
  const FinCategory& T = *exp.ambient;
  const MorId pm = exp.leg(m);
  ThreadFilter filter{
      [&](Level v, MorId h) {
        return T.compose_unchecked(exp.sub.morphism_embedding[h.index], pm) == exp.leg(v);
      },
      [&](Level v) { return static_cast<std::size_t>(leg_class(exp, v)); }};
  return find_thread(exp.system, lambda, m, &filter);
}

std::optional<ProThread> leg_compatible_thread(const Expansion& exp, Level lambda) {
  std::optional<ProThread> found;
  std::function<std::size_t(Level)> key = [&](Level v) { return static_cast<std::size_t>(leg_class(exp, v)); };
  for_candidates(exp.system, lambda, key, [&](Level m) {
    found = leg_compatible_thread(exp, lambda, m);
    return found.has_value();
  });
  return found;
}

// ---------------------------------------------------------------------------
// Remark conditions
// ---------------------------------------------------------------------------

Diagnostics check_G1(const FiniteSystem& sys, Level lambda, Level m, const SubcategorySpec& spec) {
  if (!leq(sys, lambda, m)) throw Error(Errc::not_comparable, level_name(sys, lambda) + ", " + level_name(sys, m));
  const FinCategory& C = ambient(sys);
  Diagnostics out;
  if (auto d = is_subcategory(C, spec); !d.ok()) throw Error(Errc::invalid_subcategory, d.first().str(), d);
  std::vector<char> in(C.morphism_count(), 0);
  for (const auto& name : spec.morphisms) in[C.morphism(name).index] = 1;
  const ObjId xm = level_object(sys, m);
  const MorId p = composite_bond(sys, lambda, m);
  std::vector<MorId> into;
  for (MorId u : C.into(xm))
    if (in[u.index]) into.push_back(u);
  for (std::size_t i = 0; i < into.size(); ++i)
    for (std::size_t j = i + 1; j < into.size(); ++j) {
      const MorId u = into[i], v = into[j];
      if (C.dom(u) != C.dom(v)) continue;
      if (C.compose_unchecked(p, u) == C.compose_unchecked(p, v)) {
        out.add({Errc::g1_violation, "G1", {C.name(u), C.name(v)}, "p_{λm} does not separate them"});
        return out;
      }
    }
  return out;
}

Diagnostics check_G2(const FiniteSystem& sys, const std::vector<ProThread>& threads) {
  Diagnostics out;
  const FinCategory& C = ambient(sys);
  for (const auto& t : threads)
    if (auto d = verify_thread(sys, t); !d.ok()) {
      out.add({Errc::g2_violation, "thread", {level_name(sys, t.source)}, d.first().str()});
      return out;
    }
  for (std::size_t i = 0; i < threads.size(); ++i)
    for (std::size_t j = i + 1; j < threads.size(); ++j) {
      const auto& a = threads[i];
      const auto& b = threads[j];
      std::vector<Level> nus;
      std::vector<Level> stars;
      if (auto f = std::get_if<FiniteIndexSystem>(&sys)) {
        for (Level n = 0; n < f->index.size(); ++n) {
          nus.push_back(n);
          if (f->index.leq(a.index, n) && f->index.leq(b.index, n)) stars.push_back(n);
        }
      } else {
        const auto& s = std::get<PeriodicSequence>(sys);
        const Level lo = std::max(a.index, b.index);
        std::set<std::tuple<Level, std::uint32_t, std::uint32_t>> seen;
        for (Level n = lo;; ++n) {
          if (!seen.emplace(s.phase_class(n), composite_bond(s, a.index, n).index,
                            composite_bond(s, b.index, n).index).second)
            break;
          stars.push_back(n);
        }
        const auto horizon = sequence_horizon(s, {&a.components, &b.components}, lo);
        for (Level n = 1; n <= horizon; ++n) nus.push_back(n);
      }
      bool found = false;
      for (Level star : stars) {
        const MorId pa = composite_bond(sys, a.index, star);
        const MorId pb = composite_bond(sys, b.index, star);
        bool all = true;
        for (Level nu : nus)
          if (C.compose_unchecked(a.components.at(nu), pa) != C.compose_unchecked(b.components.at(nu), pb)) {
            all = false;
            break;
          }
        if (all) {
          found = true;
          break;
        }
      }
      if (!found)
        out.add({Errc::g2_violation, "G2", {level_name(sys, a.source), level_name(sys, b.source)},
                 "no common level reconciles the two threads"});
    }
  return out;
}

} // namespace movcat
