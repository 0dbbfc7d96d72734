#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "movcat/fincat.hpp"

namespace movcat {

/// The comma category X_P: objects are ambient morphisms p: X -> P with P in
/// the subcategory, morphisms p -> p' are subcategory morphisms u with
/// u∘p = p'. Names: a comma object carries the name of its ambient
/// morphism; a comma morphism is named "u@p".
struct CommaCategory {
  CategoryRef ambient;
  ObjId apex;
  CategoryRef category;
  std::vector<MorId> object_table;   // comma object -> ambient morphism X -> P
  std::vector<MorId> morphism_table; // comma morphism -> ambient morphism u

  std::optional<ObjId> object_for(MorId ambient_morphism) const;
  /// The comma morphism with ambient part `u` leaving comma object `source`.
  std::optional<MorId> morphism_for(MorId u, ObjId source) const;

  std::vector<std::int32_t> object_lookup; // ambient morphism -> comma object or -1
};

CommaCategory comma_category(const CategoryRef& ambient, const SubcategorySpec& sub, ObjId apex);

struct PullbackData {
  struct Cone {
    ObjId vertex;
    MorId to_x;
    MorId to_y;
    MorId mediator;
  };
  ObjId apex;
  MorId proj_x;
  MorId proj_y;
  std::vector<Cone> mediators;

  std::optional<MorId> mediator(MorId to_x, MorId to_y) const;
};

/// Exhaustive search over (apex, p_X, p_Y). Throws codomain_mismatch.
std::optional<PullbackData> find_pullback(const FinCategory& cat, MorId f, MorId g);

std::optional<ObjId> find_initial(const FinCategory& cat);
bool is_initial(const FinCategory& cat, ObjId o);

/// Null morphisms 0_{AB}, row-major by (A, B).
struct NullFamily {
  std::vector<MorId> zeros;
  std::size_t object_count = 0;

  MorId operator()(ObjId a, ObjId b) const { return zeros[a.index * object_count + b.index]; }
};

Diagnostics check_null_family(const FinCategory& cat, const NullFamily& nulls);
std::optional<NullFamily> find_null_family(const FinCategory& cat);

/// First (f: X -> Y, g: Y -> X) with f∘g = id_Y.
std::optional<std::pair<MorId, MorId>> find_domination(const FinCategory& cat, ObjId y, ObjId x);

} // namespace movcat
