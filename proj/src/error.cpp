#include "movcat/error.hpp"

#include <algorithm>
#include <sstream>

namespace movcat {

std::string_view to_string(Errc code) {
  switch (code) {
  case Errc::duplicate_id: return "DuplicateId";
  case Errc::dangling_reference: return "DanglingReference";
  case Errc::law_violation: return "LawViolation";
  case Errc::not_composable: return "NotComposable";
  case Errc::unknown_object: return "UnknownObject";
  case Errc::unknown_morphism: return "UnknownMorphism";
  case Errc::empty_factor_list: return "EmptyFactorList";
  case Errc::not_closed: return "NotClosed";
  case Errc::invalid_subcategory: return "InvalidSubcategory";
  case Errc::codomain_mismatch: return "CodomainMismatch";
  case Errc::incomplete_factor_table: return "IncompleteFactorTable";
  case Errc::violation: return "Violation";
  case Errc::not_initial: return "NotInitial";
  case Errc::invalid_null_family: return "InvalidNullFamily";
  case Errc::not_a_retraction: return "NotARetraction";
  case Errc::invalid_witness: return "InvalidWitness";
  case Errc::missing_source_witness: return "MissingSourceWitness";
  case Errc::invalid_functor_data: return "InvalidFunctorData";
  case Errc::factor_mismatch: return "FactorMismatch";
  case Errc::no_pullback: return "NoPullback";
  case Errc::not_directed: return "NotDirected";
  case Errc::functoriality_violation: return "FunctorialityViolation";
  case Errc::phase_mismatch: return "PhaseMismatch";
  case Errc::not_comparable: return "NotComparable";
  case Errc::ae1_violation: return "AE1Violation";
  case Errc::ae2_violation: return "AE2Violation";
  case Errc::g1_violation: return "G1Violation";
  case Errc::g2_violation: return "G2Violation";
  case Errc::expansion_invalid: return "ExpansionInvalid";
  case Errc::ae1_failure: return "AE1Failure";
  case Errc::ae2_failure: return "AE2Failure";
  case Errc::thread_verification_failure: return "ThreadVerificationFailure";
  case Errc::witness_verification_failure: return "WitnessVerificationFailure";
  case Errc::missing_thread: return "MissingThread";
  case Errc::syntax_error: return "SyntaxError";
  case Errc::unresolved_reference: return "UnresolvedReference";
  case Errc::unknown_command: return "UnknownCommand";
  case Errc::invalid_flag: return "InvalidFlag";
  case Errc::size_overflow: return "SizeOverflow";
  case Errc::arithmetic_overflow: return "ArithmeticOverflow";
  }
  return "Unknown";
}

std::string Diagnostic::str() const {
  std::ostringstream out;
  out << to_string(code);
  if (!law.empty()) out << "(" << law << ")";
  if (!ids.empty()) {
    out << " [";
    for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? ", " : "") << ids[i];
    out << "]";
  }
  if (!message.empty()) out << ": " << message;
  return out.str();
}

bool Diagnostics::has(Errc code) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Diagnostic& d) { return d.code == code; });
}

bool Diagnostics::has_law(std::string_view law) const {
  return std::any_of(items_.begin(), items_.end(),
                     [&](const Diagnostic& d) { return d.law == law; });
}

std::string Diagnostics::str() const {
  if (ok()) return "ok";
  std::ostringstream out;
  for (std::size_t i = 0; i < items_.size(); ++i) out << (i ? "\n" : "") << items_[i].str();
  return out.str();
}

} // namespace movcat
