#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "movcat/error.hpp"

namespace movcat {

// ---------------------------------------------------------------------------
// Unvalidated descriptions
// ---------------------------------------------------------------------------

struct MorphismDecl {
  std::string name;
  std::string dom;
  std::string cod;
};

/// A composition triple: `g` after `f` equals `gf`.
struct CompositionDecl {
  std::string g;
  std::string f;
  std::string gf;
};

/// Name-level category description as it appears in files and generators.
/// Nothing here is checked; pass it to validate_category().
struct CategoryDescription {
  std::vector<std::string> objects;
  std::vector<MorphismDecl> morphisms;
  std::vector<std::pair<std::string, std::string>> identities; // object -> morphism
  std::vector<CompositionDecl> compositions;
};

/// Index-level table. `composite[g * n + f]` is the index of g∘f, or -1.
struct CategoryTable {
  struct Arrow {
    std::string name;
    ObjId dom;
    ObjId cod;
  };
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<MorId> identities;
  std::vector<std::int32_t> composite;

  std::int32_t at(std::size_t g, std::size_t f) const {
    return composite[g * arrows.size() + f];
  }
};

class FinCategory;
using CategoryRef = std::shared_ptr<const FinCategory>;

namespace detail {
FinCategory adopt(CategoryTable table);
}

// ---------------------------------------------------------------------------
// FinCategory
// ---------------------------------------------------------------------------

/// A validated finite category. Immutable; obtained only through
/// validate_category() or one of the constructions built on top of it.
/// Composition order is fixed: compose(g, f) is "g after f".
class FinCategory {
public:
  std::size_t object_count() const { return table_.objects.size(); }
  std::size_t morphism_count() const { return table_.arrows.size(); }

  ObjId object(std::string_view name) const;
  MorId morphism(std::string_view name) const;
  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<MorId> find_morphism(std::string_view name) const;

  const std::string& name(ObjId o) const { return table_.objects[o.index]; }
  const std::string& name(MorId m) const { return table_.arrows[m.index].name; }

  ObjId dom(MorId m) const { return table_.arrows[m.index].dom; }
  ObjId cod(MorId m) const { return table_.arrows[m.index].cod; }
  MorId identity(ObjId o) const { return table_.identities[o.index]; }
  bool is_identity(MorId m) const { return identity(dom(m)) == m && dom(m) == cod(m); }

  bool composable(MorId g, MorId f) const { return cod(f) == dom(g); }
  MorId compose(MorId g, MorId f) const;
  /// Unchecked composition for hot loops; caller guarantees cod(f) == dom(g).
  MorId compose_unchecked(MorId g, MorId f) const {
    return mor(static_cast<std::size_t>(table_.at(g.index, f.index)));
  }

  /// Morphisms A -> B in declaration order.
  std::span<const MorId> hom(ObjId a, ObjId b) const {
    return hom_[a.index * object_count() + b.index];
  }
  /// Every morphism with codomain `x`, in declaration order.
  std::span<const MorId> into(ObjId x) const { return into_[x.index]; }

  const CategoryTable& table() const { return table_; }
  CategoryDescription describe() const;

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.table_.objects == b.table_.objects && a.same_arrows(b) &&
           a.table_.identities == b.table_.identities &&
           a.table_.composite == b.table_.composite;
  }

private:
  FinCategory() = default;
  friend FinCategory detail::adopt(CategoryTable table);
  bool same_arrows(const FinCategory& other) const;

  CategoryTable table_;
  std::vector<std::vector<MorId>> hom_;
  std::vector<std::vector<MorId>> into_;
  std::unordered_map<std::string, ObjId> object_index_;
  std::unordered_map<std::string, MorId> morphism_index_;
};

/// Checks every category law on an index-level table and lists each
/// violation. Law names: "composability", "totality", "dom/cod",
/// "identity-endomorphism", "identity", "associativity".
Diagnostics check_table(const CategoryTable& table);

/// Resolves names, then checks all laws. Throws Error with code
/// duplicate_id, dangling_reference or law_violation; the Error's details
/// list every offending entry.
FinCategory validate_category(const CategoryDescription& raw);
FinCategory validate_table(CategoryTable table);

/// Name-resolution step of validate_category, exposed for tooling.
CategoryTable resolve(const CategoryDescription& raw);

std::vector<MorId> hom(const FinCategory& cat, std::string_view a, std::string_view b);

FinCategory dual(const FinCategory& cat);

// ---------------------------------------------------------------------------
// Functors, natural transformations, subcategories
// ---------------------------------------------------------------------------

struct Functor {
  CategoryRef source;
  CategoryRef target;
  std::vector<ObjId> on_objects;   // indexed by source object
  std::vector<MorId> on_morphisms; // indexed by source morphism

  ObjId operator()(ObjId o) const { return on_objects[o.index]; }
  MorId operator()(MorId m) const { return on_morphisms[m.index]; }
};

Functor identity_functor(const CategoryRef& cat);
/// G∘F. Requires F.target == G.source (pointer identity).
Functor compose(const Functor& g, const Functor& f);

struct NatTrans {
  Functor from;
  Functor to;
  std::vector<MorId> components; // indexed by source object
};

NatTrans identity_transformation(const Functor& f);

Diagnostics validate_functor(const Functor& f);
Diagnostics validate_nat_trans(const NatTrans& psi);

struct SubcategorySpec {
  std::vector<std::string> objects;
  std::vector<std::string> morphisms;
};

/// Closure check. Failures carry code not_closed and law "composition",
/// "identities" or "dom/cod"; unknown ids give dangling_reference.
Diagnostics is_subcategory(const FinCategory& cat, const SubcategorySpec& spec);

/// A subcategory materialised as its own FinCategory. Names are preserved,
/// so ids translate by name; the embedding vectors map sub indices to
/// ambient indices.
struct Subcategory {
  CategoryRef ambient;
  CategoryRef category;
  std::vector<ObjId> object_embedding;
  std::vector<MorId> morphism_embedding;

  bool contains(ObjId ambient_object) const;
  bool contains(MorId ambient_morphism) const;
  std::optional<ObjId> lift(ObjId ambient_object) const;
  std::optional<MorId> lift(MorId ambient_morphism) const;

  std::vector<std::int32_t> object_lift;   // ambient index -> sub index or -1
  std::vector<std::int32_t> morphism_lift;
};

/// Throws Error(invalid_subcategory) when the spec is not closed.
Subcategory extract_subcategory(const CategoryRef& ambient, const SubcategorySpec& spec);
SubcategorySpec full_subcategory(const FinCategory& cat, const std::vector<std::string>& objects);
SubcategorySpec whole(const FinCategory& cat);

// ---------------------------------------------------------------------------
// Products
// ---------------------------------------------------------------------------

/// Product category with componentwise composition. Tuple ids are encoded
/// in mixed radix, first factor most significant.
struct Product {
  std::vector<CategoryRef> factors;
  CategoryRef category;
  std::vector<Functor> projections;

  ObjId object_of(const std::vector<ObjId>& components) const;
  MorId morphism_of(const std::vector<MorId>& components) const;
  std::vector<ObjId> components(ObjId o) const;
  std::vector<MorId> components(MorId m) const;
};

/// Throws Error(empty_factor_list).
Product product(const std::vector<CategoryRef>& cats);

/// Section of a product into slot `slot`, other coordinates pinned to
/// `fixed` (entries at `slot` are ignored) with identity morphisms.
Functor product_section(const Product& prod, std::size_t slot, const std::vector<ObjId>& fixed);

inline CategoryRef share(FinCategory cat) {
  return std::make_shared<const FinCategory>(std::move(cat));
}

} // namespace movcat
