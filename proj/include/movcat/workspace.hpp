#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "movcat/movability.hpp"
#include "movcat/prosys.hpp"

namespace movcat {

/// Name-level contents of a workspace file. Entries keep their file order,
/// which is also the canonical print order.
struct CategoryEntry {
  std::string name;
  CategoryDescription raw;
  CategoryRef category;
};

struct SubcategoryEntry {
  std::string name;
  std::string category;
  SubcategorySpec spec;
};

enum class SystemKind { finite, periodic, divisibility };

struct SystemEntry {
  std::string name;
  SystemKind kind = SystemKind::finite;
  std::string category; // empty for divisibility
  // finite
  std::vector<std::pair<std::string, std::string>> levels; // level, object
  std::vector<std::pair<std::string, std::string>> order;  // a <= b, reflexive pairs implied
  std::vector<std::tuple<std::string, std::string, std::string>> bonds; // a, b, morphism
  // periodic
  std::vector<std::pair<std::string, std::string>> prefix; // object, step
  std::vector<std::pair<std::string, std::string>> cycle;
  // divisibility
  std::vector<std::uint64_t> prefix_multipliers;
  std::vector<std::uint64_t> cycle_multipliers;
};

struct ExpansionEntry {
  std::string name;
  std::string ambient;
  std::string sub;
  std::string apex;
  std::string system;
  std::vector<std::pair<std::string, std::string>> legs; // level, morphism
  std::optional<std::size_t> loop;
};

struct WitnessEntry {
  std::string name;
  std::string category;
  std::string target;
  std::string mover;
  std::string via;
  std::vector<std::pair<std::string, std::string>> factors; // p, u(p)
};

using AnySystem = std::variant<FiniteIndexSystem, PeriodicSequence, DivisibilitySequence>;

struct Workspace {
  int version = 1;
  std::vector<CategoryEntry> categories;
  std::vector<SubcategoryEntry> subcategories;
  std::vector<SystemEntry> systems;
  std::vector<ExpansionEntry> expansions;
  std::vector<WitnessEntry> witnesses;

  /// Throws Error(unresolved_reference).
  CategoryRef category(std::string_view name) const;
  const SubcategoryEntry& subcategory(std::string_view name) const;
  const SystemEntry& system_entry(std::string_view name) const;
  const ExpansionEntry& expansion_entry(std::string_view name) const;
  const WitnessEntry& witness_entry(std::string_view name) const;

  AnySystem system(std::string_view name) const;
  Expansion expansion(std::string_view name) const;
  Witness witness(std::string_view name) const;

  void add_category(std::string name, CategoryDescription raw);
};

/// Throws Error with syntax_error (message carries "line L, column C"),
/// unresolved_reference, or a category validation code.
Workspace parse_workspace(std::string_view text);
std::string print_workspace(const Workspace& ws);

/// Category block in workspace syntax.
std::string print_category(const std::string& name, const CategoryDescription& raw);

SystemEntry describe_system(const std::string& name, const std::string& category_name,
                            const FiniteSystem& sys);
SystemEntry describe_system(const std::string& name, const DivisibilitySequence& sys);
ExpansionEntry describe_expansion(const std::string& name, const std::string& ambient,
                                  const std::string& sub, const std::string& system,
                                  const FinCategory& cat, ObjId apex, const FiniteSystem& sys,
                                  const LevelFamily& legs);
WitnessEntry describe_witness(const std::string& name, const std::string& category,
                              const FinCategory& cat, const Witness& w);

} // namespace movcat
