#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "movcat/fincat.hpp"

namespace movcat::detail {

/// Binary constraint var[a] = k∘var[b] over morphism-valued variables.
struct Link {
  std::size_t a;
  std::size_t b;
  MorId k;
};

struct Csp {
  std::vector<std::vector<MorId>> domains; // in preference order
  std::vector<Link> links;
};

enum class CspFailure { empty_domain, contradiction, exhausted };

struct CspResult {
  std::optional<std::vector<MorId>> solution;
  CspFailure failure = CspFailure::exhausted;
  std::size_t variable = 0;   // empty_domain: the first empty variable
  std::size_t link = 0;       // contradiction: the link that emptied a domain
  std::size_t nodes = 0;
};

/// Arc-consistent propagation, then backtracking on the lowest-index open
/// variable, trying values in domain order.
CspResult solve(const FinCategory& cat, const Csp& csp);

} // namespace movcat::detail
