#pragma once

#include <map>
#include <string>
#include <vector>

#include "movcat/construct.hpp"
#include "movcat/movability.hpp"
#include "movcat/prosys.hpp"

namespace movcat {

struct CrossCheck {
  std::string subject;
  bool ok = false;
  std::string detail;
};

struct TheoremReport {
  Diagnostics ae1;
  Diagnostics ae2;
  CommaCategory comma;
  CategoryReport comma_side;
  SystemUniformity system_side;
  bool comma_uniform = false;
  bool system_uniform = false;
  bool consistent = false;
  std::vector<ProThread> constructed_threads;
  std::vector<Witness> constructed_witnesses;
  std::vector<CrossCheck> checks;

  bool cross_checks_pass() const;
};

/// Decides both sides independently and runs the proof constructions when
/// both are positive. Throws Error(expansion_invalid) when AE1 or AE2 fails.
TheoremReport theorem_check(const Expansion& exp);

/// Thread (in the system over P) built from a uniform comma witness at the
/// comma object p_λ. Throws ae1_failure, ae2_failure or
/// thread_verification_failure.
ProThread comma_to_system_witness(const Expansion& exp, const CommaCategory& comma,
                                  const Witness& at_leg, Level lambda);

/// Uniform comma witness at comma object `f` from leg-compatible threads
/// keyed by source level. Throws ae1_failure, ae2_failure, missing_thread or
/// witness_verification_failure.
Witness system_to_comma_witness(const Expansion& exp, const CommaCategory& comma, ObjId f,
                                const std::map<Level, ProThread>& threads);

struct SequenceCorollaryReport {
  CommaCategory comma;
  CategoryReport movable;
  CategoryReport uniform;
  bool agree = false;
};

/// Throws Error(expansion_invalid) unless the system is a sequence and AE1,
/// AE2 hold.
SequenceCorollaryReport corollary_sequence_check(const Expansion& exp);

/// Comma category of the expansion's apex over its subcategory.
CommaCategory comma_of(const Expansion& exp);

} // namespace movcat
