#pragma once

#include <cstdint>
#include <optional>
#include <random>

#include "movcat/prosys.hpp"
#include "movcat/workspace.hpp"

namespace movcat {

using Rng = std::mt19937_64;

/// Size knobs. Bounds: objects <= 8, max_morphisms <= 64.
struct GenParams {
  std::size_t objects = 3;
  double density = 0.5;
  std::size_t max_morphisms = 24;
  std::size_t max_set_size = 3;
  std::size_t max_levels = 4;
  std::size_t max_prefix = 2;
  std::size_t max_period = 3;
};

/// Throws Error(size_overflow) when the parameters exceed the bounds.
void check_params(const GenParams& params);

/// Concrete category of functions between small sets generated by random
/// maps and closed under composition, or a random poset. Generators that
/// would push the closure past max_morphisms are dropped.
CategoryDescription random_category(Rng& rng, const GenParams& params);

/// Full on a random object set with probability 1/2, otherwise the closure
/// of a random morphism subset. Never empty.
SubcategorySpec random_subcategory(Rng& rng, const FinCategory& cat, double density);

/// Random index with a top element (the last level) and functorial bonds.
FiniteIndexSystem random_finite_system(Rng& rng, const CategoryRef& cat, const GenParams& params);
PeriodicSequence random_sequence(Rng& rng, const CategoryRef& cat, const GenParams& params);
DivisibilitySequence random_divisibility(Rng& rng, const GenParams& params);

/// Re-indexes a system over P.category to the ambient category.
FiniteSystem embed_system(const Subcategory& sub, const FiniteSystem& over_p);

enum class ExpansionShape { finite, sequence };

/// Formal limit of a random system over a random subcategory, adjoined to
/// the base category as a new object "X".
struct GeneratedExpansion {
  CategoryDescription ambient_raw;
  CategoryRef ambient;
  SubcategorySpec sub;
  FiniteSystem system; // over the ambient category
  LevelFamily legs;
  ObjId apex;
  bool mutated = false;

  Expansion expansion() const;
};

/// With `mutate`, the idempotent cutting out the limit is replaced by a
/// different one from P; returns none when no such idempotent exists.
std::optional<GeneratedExpansion> random_expansion(Rng& rng, ExpansionShape shape,
                                                   const GenParams& params, bool mutate = false);

/// One category, subcategory, finite system, sequence, divisibility
/// sequence and sequence expansion. Same seed, same workspace.
Workspace gen_random(std::uint64_t seed, const GenParams& params);

} // namespace movcat
