#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace movcat {

struct ObjId {
  std::uint32_t index = 0;
  friend auto operator<=>(ObjId, ObjId) = default;
};

struct MorId {
  std::uint32_t index = 0;
  friend auto operator<=>(MorId, MorId) = default;
};

inline ObjId obj(std::size_t i) { return ObjId{static_cast<std::uint32_t>(i)}; }
inline MorId mor(std::size_t i) { return MorId{static_cast<std::uint32_t>(i)}; }

enum class Errc {
  duplicate_id,
  dangling_reference,
  law_violation,
  not_composable,
  unknown_object,
  unknown_morphism,
  empty_factor_list,
  not_closed,
  invalid_subcategory,
  codomain_mismatch,
  incomplete_factor_table,
  violation,
  not_initial,
  invalid_null_family,
  not_a_retraction,
  invalid_witness,
  missing_source_witness,
  invalid_functor_data,
  factor_mismatch,
  no_pullback,
  not_directed,
  functoriality_violation,
  phase_mismatch,
  not_comparable,
  ae1_violation,
  ae2_violation,
  g1_violation,
  g2_violation,
  expansion_invalid,
  ae1_failure,
  ae2_failure,
  thread_verification_failure,
  witness_verification_failure,
  missing_thread,
  syntax_error,
  unresolved_reference,
  unknown_command,
  invalid_flag,
  size_overflow,
  arithmetic_overflow,
};

std::string_view to_string(Errc code);

/// One violated law or failed check. `law` names the rule (e.g. "identity",
/// "associativity", "condition 2"); `ids` carries the offending identifiers.
struct Diagnostic {
  Errc code;
  std::string law;
  std::vector<std::string> ids;
  std::string message;

  std::string str() const;
};

/// Result of an "ok or diagnostic" check. Empty means ok.
class Diagnostics {
public:
  Diagnostics() = default;
  Diagnostics(Diagnostic d) { items_.push_back(std::move(d)); }

  bool ok() const { return items_.empty(); }
  explicit operator bool() const { return ok(); }

  void add(Diagnostic d) { items_.push_back(std::move(d)); }
  void append(const Diagnostics& other) {
    items_.insert(items_.end(), other.items_.begin(), other.items_.end());
  }

  const std::vector<Diagnostic>& items() const { return items_; }
  const Diagnostic& first() const { return items_.front(); }
  std::size_t size() const { return items_.size(); }

  bool has(Errc code) const;
  bool has_law(std::string_view law) const;
  std::string str() const;

private:
  std::vector<Diagnostic> items_;
};

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what, Diagnostics details = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code), details_(std::move(details)) {}

  Errc code() const { return code_; }
  const Diagnostics& details() const { return details_; }

private:
  Errc code_;
  Diagnostics details_;
};

} // namespace movcat

template <> struct std::hash<movcat::ObjId> {
  std::size_t operator()(movcat::ObjId o) const noexcept { return o.index; }
};
template <> struct std::hash<movcat::MorId> {
  std::size_t operator()(movcat::MorId m) const noexcept { return m.index; }
};
