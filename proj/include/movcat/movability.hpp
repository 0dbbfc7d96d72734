#pragma once

#include <array>
#include <map>
#include <string>
#include <optional>
#include <vector>

#include "movcat/construct.hpp"

namespace movcat {

/// Mover M(X), morphism m_X: M(X) -> X and a factor u(p): M(X) -> dom p for
/// every p into X with p∘u(p) = m_X. The same record serves both notions;
/// uniformity is a property checked by verify_witness.
struct Witness {
  ObjId target;
  ObjId mover;
  MorId movability;
  std::map<MorId, MorId> factors;

  MorId factor(MorId p) const;

  friend bool operator==(const Witness&, const Witness&) = default;
};

/// Condition 1 for every p; with `uniform`, also u(p) = r∘u(q) for every
/// p∘r = q. Codes: incomplete_factor_table, violation (law "condition 1" or
/// "condition 2").
Diagnostics verify_witness(const FinCategory& cat, const Witness& w, bool uniform);

enum class FailureReason { empty_domain, contradiction, exhausted };

/// Why one candidate (M, m) admits no witness.
struct CandidateFailure {
  ObjId mover;
  MorId movability;
  FailureReason reason;
  std::optional<MorId> variable;                 // the p with an empty factor set
  std::optional<std::array<MorId, 3>> triple;    // (p, q, r) with p∘r = q
};

struct Decision {
  ObjId target;
  std::optional<Witness> witness;
  std::vector<CandidateFailure> certificate; // filled when witness is empty

  explicit operator bool() const { return witness.has_value(); }
};

Decision decide_movable(const FinCategory& cat, ObjId x);
Decision decide_uniformly_movable(const FinCategory& cat, ObjId x);

struct CategoryReport {
  bool uniform = false;
  std::vector<Decision> objects;

  bool holds() const;
};

CategoryReport decide_category(const FinCategory& cat, bool uniform);

/// Decision on dual(cat); morphism ids coincide with those of cat.
Decision decide_co_movable(const FinCategory& cat, ObjId x, bool uniform);

std::string describe(const FinCategory& cat, const CandidateFailure& failure);
std::string describe(const FinCategory& cat, const Witness& w);

// ---------------------------------------------------------------------------
// Closed-form witnesses and transfers
// ---------------------------------------------------------------------------

/// Throws Error(not_initial).
Witness witness_from_initial(const FinCategory& cat, ObjId initial, ObjId x);
/// Throws Error(invalid_null_family).
Witness witness_from_nulls(const FinCategory& cat, const NullFamily& nulls, ObjId x0, ObjId x);

/// From a uniform witness at X and f: X -> Y, g: Y -> X with f∘g = id_Y.
/// Throws not_a_retraction or invalid_witness.
Witness transfer_domination(const FinCategory& cat, const Witness& wx, MorId f, MorId g);

/// J: L -> K, D: K -> L, psi: D∘J -> 1_L. `in_k` maps K objects to uniform
/// witnesses. Throws invalid_functor_data, missing_source_witness or
/// invalid_witness. Result is keyed by L object.
std::map<ObjId, Witness> transfer_weak_functorial(const Functor& j, const Functor& d,
                                                  const NatTrans& psi,
                                                  const std::map<ObjId, Witness>& in_k);

/// Componentwise witness. Throws factor_mismatch or invalid_witness.
Witness product_witness(const Product& prod, const std::vector<Witness>& factors);

/// Compares u(f) x_Z u(g) with u(f∘p_X). Throws codomain_mismatch,
/// no_pullback or invalid_witness.
Diagnostics check_pullback_relation(const FinCategory& cat, const Witness& wz, MorId f, MorId g);

} // namespace movcat
