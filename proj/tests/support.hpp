#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "movcat/cli.hpp"
#include "movcat/generate.hpp"
#include "movcat/shapebridge.hpp"
#include "movcat/workspace.hpp"

namespace support {

using namespace movcat;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string fixture_path() { return std::string(MOVCAT_DATA_DIR) + "/fixtures.ws"; }

inline const Workspace& fixtures() {
  static const Workspace ws = parse_workspace(read_file(fixture_path()));
  return ws;
}

inline CategoryRef fix(std::string_view name) { return fixtures().category(name); }

inline ObjId O(const FinCategory& c, std::string_view name) { return c.object(name); }
inline MorId M(const FinCategory& c, std::string_view name) { return c.morphism(name); }

inline FiniteSystem finite_system(std::string_view name) {
  AnySystem any = fixtures().system(name);
  if (auto f = std::get_if<FiniteIndexSystem>(&any)) return *f;
  return std::get<PeriodicSequence>(any);
}

inline DivisibilitySequence divisibility(std::string_view name) {
  return std::get<DivisibilitySequence>(fixtures().system(name));
}

/// Small random categories: at most `cap` morphisms.
inline CategoryRef small_category(std::uint64_t seed, std::size_t cap = 12) {
  Rng rng(seed);
  GenParams p;
  p.objects = 1 + seed % 3;
  p.max_morphisms = cap;
  p.density = 0.6;
  return share(validate_category(random_category(rng, p)));
}

inline std::vector<std::string> names(const FinCategory& c, const std::vector<MorId>& ms) {
  std::vector<std::string> out;
  for (auto m : ms) out.push_back(c.name(m));
  return out;
}

} // namespace support

namespace support {

enum class MutationKind { identity, associativity, dom_cod };

struct Mutation {
  CategoryTable table;
  std::string law;
  std::string what;
};

/// One edit of a valid table that must break the named law; none when the
/// category has no room for this kind of edit.
inline std::optional<Mutation> mutate(const FinCategory& cat, Rng& rng, MutationKind kind) {
  const CategoryTable& base = cat.table();
  const std::size_t n = base.arrows.size();
  auto pick = [&](std::size_t k) { return static_cast<std::size_t>(rng() % k); };
  std::vector<std::pair<std::size_t, std::size_t>> slots; // (g, f)
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      if (base.arrows[f].cod != base.arrows[g].dom) continue;
      const bool gid = cat.is_identity(mor(g));
      const bool fid = cat.is_identity(mor(f));
      if (kind == MutationKind::identity ? (gid != fid) : (kind == MutationKind::dom_cod || (!gid && !fid)))
        slots.emplace_back(g, f);
    }
  for (int attempt = 0; attempt < 20 && !slots.empty(); ++attempt) {
    auto [g, f] = slots[pick(slots.size())];
    const auto c = static_cast<std::size_t>(base.at(g, f));
    std::vector<std::size_t> options;
    for (std::size_t m = 0; m < n; ++m) {
      const bool same = base.arrows[m].dom == base.arrows[c].dom && base.arrows[m].cod == base.arrows[c].cod;
      if (m != c && (kind == MutationKind::dom_cod ? !same : same)) options.push_back(m);
    }
    if (options.empty()) continue;
    Mutation out{base, {}, {}};
    const std::size_t to = options[pick(options.size())];
    out.table.composite[g * n + f] = static_cast<std::int32_t>(to);
    out.what = base.arrows[g].name + " after " + base.arrows[f].name + " -> " + base.arrows[to].name;
    out.law = kind == MutationKind::identity ? "identity" : kind == MutationKind::dom_cod ? "dom/cod" : "associativity";
    return out;
  }
  return std::nullopt;
}

/// Categories the mutation suites draw from: the fixtures, then random ones.
inline std::vector<CategoryRef> mutation_corpus(std::size_t random_count) {
  std::vector<CategoryRef> out;
  for (const auto& e : fixtures().categories) out.push_back(e.category);
  for (std::uint64_t s = 0; s < random_count; ++s) {
    Rng rng(1000 + s);
    GenParams p;
    p.objects = 1 + s % 4;
    p.max_morphisms = 20;
    out.push_back(share(validate_category(random_category(rng, p))));
  }
  return out;
}

} // namespace support
