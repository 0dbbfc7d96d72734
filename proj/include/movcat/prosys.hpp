#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "movcat/fincat.hpp"

namespace movcat {

using Level = std::size_t;

// ---------------------------------------------------------------------------
// Presentations
// ---------------------------------------------------------------------------

/// Finite index set with an explicit relation; le[a * n + b] means a <= b.
struct DirectedPreorder {
  std::vector<std::string> elements;
  std::vector<char> le;

  std::size_t size() const { return elements.size(); }
  bool leq(Level a, Level b) const { return le[a * size() + b] != 0; }
  std::optional<Level> find(std::string_view name) const;

  /// 0 <= 1 <= ... <= n-1, named "1".."n".
  static DirectedPreorder chain(std::size_t n);
};

Diagnostics validate_preorder(const DirectedPreorder& index);

struct FiniteIndexSystem {
  DirectedPreorder index;
  CategoryRef ambient;
  std::vector<ObjId> objects;            // X_λ
  std::map<std::pair<Level, Level>, MorId> bonds; // (λ, λ') with λ <= λ' -> X_λ' -> X_λ

  MorId bond(Level a, Level b) const; // throws not_comparable
};

/// Levels are 1, 2, ...; level n > k sits at cycle phase (n - k - 1) mod c.
/// Step bond at level n goes X_{n+1} -> X_n.
struct PeriodicSequence {
  CategoryRef ambient;
  std::vector<ObjId> prefix_objects;
  std::vector<MorId> prefix_steps;
  std::vector<ObjId> cycle_objects;
  std::vector<MorId> cycle_steps;

  std::size_t prefix_length() const { return prefix_objects.size(); }
  std::size_t period() const { return cycle_objects.size(); }
  ObjId object(Level n) const;
  MorId step(Level n) const;
  /// Canonical level with the same object and step: n itself in the prefix,
  /// else the first cycle level of the same phase.
  Level phase_class(Level n) const;
};

/// Every hom-set is the integers, composition is multiplication. Step at
/// level n multiplies by multiplier(n).
struct DivisibilitySequence {
  std::vector<std::uint64_t> prefix;
  std::vector<std::uint64_t> cycle;

  std::size_t prefix_length() const { return prefix.size(); }
  std::size_t period() const { return cycle.size(); }
  std::uint64_t multiplier(Level n) const;
};

using FiniteSystem = std::variant<FiniteIndexSystem, PeriodicSequence>;

Diagnostics validate_system(const FiniteIndexSystem& sys);
Diagnostics validate_system(const PeriodicSequence& sys);
Diagnostics validate_system(const DivisibilitySequence& sys);
Diagnostics validate_system(const FiniteSystem& sys);

MorId composite_bond(const FiniteIndexSystem& sys, Level a, Level b);
MorId composite_bond(const PeriodicSequence& sys, Level a, Level b);
/// Throws arithmetic_overflow past 2^64.
std::uint64_t composite_bond(const DivisibilitySequence& sys, Level a, Level b);

// Uniform access to the two finite-hom presentations.
const FinCategory& ambient(const FiniteSystem& sys);
Level first_level(const FiniteSystem& sys);
bool leq(const FiniteSystem& sys, Level a, Level b);
ObjId level_object(const FiniteSystem& sys, Level n);
MorId composite_bond(const FiniteSystem& sys, Level a, Level b);
std::string level_name(const FiniteSystem& sys, Level n);

// ---------------------------------------------------------------------------
// Eventually periodic families and threads
// ---------------------------------------------------------------------------

/// values[i] sits at level first + i. Past the explicit range the family
/// repeats the block [loop_from, last()]; without loop_from it is finite.
struct LevelFamily {
  Level first = 0;
  std::vector<MorId> values;
  std::optional<Level> loop_from;

  Level last() const { return first + values.size() - 1; }
  bool defined(Level n) const;
  MorId at(Level n) const;
  std::size_t loop_length() const { return loop_from ? last() - *loop_from + 1 : 0; }

  friend bool operator==(const LevelFamily&, const LevelFamily&) = default;
};

/// r^ν: X_index -> X_ν with p_{νν'}∘r^{ν'} = r^ν and r^source = p_{source,index}.
struct ProThread {
  Level source = 0;
  Level index = 0;
  LevelFamily components;

  friend bool operator==(const ProThread&, const ProThread&) = default;
};

/// Compatibility and base condition; for sequences over every level up to
/// two loops past the explicit range.
Diagnostics verify_thread(const FiniteSystem& sys, const ProThread& thread);

// ---------------------------------------------------------------------------
// Movability of systems
// ---------------------------------------------------------------------------

struct MovabilityIndex {
  Level level = 0;
  Level index = 0;
  /// (λ'', r^λ_{λ''}) with p_{λλ''}∘r = p_{λ,index}. For sequences the list
  /// covers λ..last listed level and repeats from loop_from.
  std::vector<std::pair<Level, MorId>> factors;
  std::optional<Level> loop_from;
};

struct SystemFailure {
  Level level = 0;
  std::string reason;
};

/// For sequences, `indices` covers the levels 1..k+c; deeper levels shift by
/// the period.
struct SystemMovability {
  std::vector<MovabilityIndex> indices;
  std::optional<SystemFailure> failure;

  bool holds() const { return !failure; }
  std::optional<Level> index_for(Level level, std::size_t prefix, std::size_t period) const;
};

struct SystemUniformity {
  std::vector<ProThread> threads;
  std::optional<SystemFailure> failure;

  bool holds() const { return !failure; }
};

/// Stabilised image of λ'' ↦ { p_{λλ''}∘h : h ∈ hom(X_m, X_λ'') }.
std::vector<MorId> eventual_image(const FiniteSystem& sys, Level lambda, Level m);

SystemMovability decide_system_movable(const FiniteSystem& sys);
SystemUniformity decide_system_uniform(const FiniteSystem& sys);

/// Levels whose decisions determine all others.
std::vector<Level> representative_levels(const FiniteSystem& sys);

/// Extra constraint on thread values, e.g. compatibility with expansion legs.
/// `key` must be constant on levels where `accept` behaves identically, and
/// eventually periodic with period a multiple of the cycle.
struct ThreadFilter {
  std::function<bool(Level, MorId)> accept;
  std::function<std::size_t(Level)> key;
};

/// Thread at (λ, m) or none. Deterministic.
std::optional<ProThread> find_thread(const FiniteSystem& sys, Level lambda, Level m,
                                     const ThreadFilter* filter = nullptr);

// Divisibility model ------------------------------------------------------

struct IdealImage {
  std::optional<std::uint64_t> generator; // stable generator, if the chain stabilises
  bool contains_bond = false;
  std::string note;
};

IdealImage eventual_image(const DivisibilitySequence& sys, Level lambda, Level m);

struct DivisibilityIndex {
  Level level = 0;
  Level index = 0;
  std::uint64_t bond = 1; // p_{λ,index}
};

struct IntegerThread {
  Level source = 0;
  Level index = 0;
  std::vector<std::uint64_t> values; // r^1 .. r^N; constant beyond N
};

struct DivisibilityVerdict {
  std::vector<DivisibilityIndex> indices;
  std::vector<IntegerThread> threads;
  std::optional<SystemFailure> failure;

  bool holds() const { return !failure; }
};

DivisibilityVerdict decide_system_movable(const DivisibilitySequence& sys);
DivisibilityVerdict decide_system_uniform(const DivisibilitySequence& sys);

// ---------------------------------------------------------------------------
// Expansions
// ---------------------------------------------------------------------------

/// System over the subcategory P (re-indexed by name) with legs X -> X_λ in
/// the ambient category.
struct Expansion {
  CategoryRef ambient;
  SubcategorySpec sub_spec;
  Subcategory sub;
  ObjId apex;
  FiniteSystem system;
  LevelFamily legs;

  MorId leg(Level n) const { return legs.at(n); }
  /// Bond p_{ab} as an ambient morphism.
  MorId bond(Level a, Level b) const;
  ObjId object(Level n) const; // ambient object of level n
};

/// `system` is given over the ambient category; every object and bond must lie
/// in P. Throws expansion_invalid on a malformed leg table or system.
Expansion make_expansion(const CategoryRef& ambient, const SubcategorySpec& sub, ObjId apex,
                         const FiniteSystem& system_over_ambient, LevelFamily legs);

/// Leg dom/cod, leg compatibility, and for sequences a loop whose length is
/// a multiple of the period starting past the prefix.
Diagnostics validate_expansion(const Expansion& exp);

/// First λ >= from with f = f_λ∘p_λ, f_λ in P; returns (λ, f_λ).
std::optional<std::pair<Level, MorId>> ae1_factor(const Expansion& exp, MorId f, Level from);
/// First λ' >= λ with h∘p_{λλ'} = k∘p_{λλ'}.
std::optional<Level> ae2_equalizer(const Expansion& exp, Level lambda, MorId h, MorId k);

Diagnostics check_AE1(const Expansion& exp);
Diagnostics check_AE2(const Expansion& exp);

/// Thread at (λ, m) with r^ν∘p_m = p_ν at every level.
std::optional<ProThread> leg_compatible_thread(const Expansion& exp, Level lambda, Level m);
/// First m >= λ admitting a leg-compatible thread.
std::optional<ProThread> leg_compatible_thread(const Expansion& exp, Level lambda);

/// Levels that determine every decision on an expansion.
std::vector<Level> representative_levels(const Expansion& exp);

// Remark conditions -------------------------------------------------------

Diagnostics check_G1(const FiniteSystem& sys, Level lambda, Level m, const SubcategorySpec& sub);
/// For every pair of supplied threads, searches λ* above both indices with
/// r(λ)^ν∘p_{m(λ),λ*} = r(λ')^ν∘p_{m(λ'),λ*} at every ν.
Diagnostics check_G2(const FiniteSystem& sys, const std::vector<ProThread>& threads);

} // namespace movcat
