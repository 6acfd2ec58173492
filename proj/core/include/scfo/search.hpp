#pragma once

#include "scfo/engine.hpp"

#include <optional>

namespace scfo::search {

enum class DeckMode {
  CommittedPair,  // each variable appears with equal positive/negated counts
  Free            // occurrence counts unconstrained (up to the pair cap)
};

/// Knobs of the template enumeration. The pair multiplicity of a variable is
/// max(positive occurrences, negated occurrences); CommittedPair additionally
/// forces the two counts to be equal.
struct SearchConfig {
  std::size_t cards = 0;  // m, the template length
  DeckMode deck = DeckMode::CommittedPair;
  std::optional<std::size_t> max_pair_multiplicity;  // nullopt = unlimited
  bool allow_constants = false;
  std::size_t constant_budget = 0;  // total constant cards permitted
  bool dedup_color_complement = false;
  bool dedup_template_rotation = true;
  std::optional<std::uint64_t> limit;  // cap on reported protocols
  unsigned jobs = 1;
};

struct SearchStats {
  std::uint64_t examined = 0;  // templates that reached the rule check
  std::uint64_t pruned = 0;    // branches cut by deck-constraint pruning
  std::uint64_t deduped = 0;   // templates skipped as symmetry duplicates
  double seconds = 0.0;
};

struct SearchResult {
  std::vector<engine::Protocol> protocols;  // sorted by template literal order
  SearchStats stats;
  bool complete = true;  // false when the result limit cut enumeration short
};

/// Enumeration ceilings: the raw template space alphabet^m must stay below
/// these before a search is attempted.
inline constexpr std::uint64_t kSearchGuard = 100'000'000;
inline constexpr std::uint64_t kNaiveGuard = 10'000'000;

/// Derives the output rule and wraps template + rule into a protocol;
/// nullopt when the template admits no rule for f.
std::optional<engine::Protocol> check_template(const Template& t, const BooleanFunction& f);

/// Exhaustive symmetry-pruned enumeration of all templates of length
/// cfg.cards satisfying the deck constraints whose rule derivation succeeds.
/// Deterministic result list independent of cfg.jobs.
SearchResult search(const BooleanFunction& f, const SearchConfig& cfg);

/// Plain odometer enumeration over the full literal-tuple space with post-hoc
/// filtering; the correctness oracle for search(). Refuses spaces beyond
/// kNaiveGuard.
SearchResult naive_search(const BooleanFunction& f, const SearchConfig& cfg);

/// Least rotation of the literal list under the literal code order.
Template canonical_template(const Template& t);

struct ClassificationEntry {
  std::uint64_t table_id = 0;
  std::optional<std::size_t> minimal_cards;
  std::optional<engine::Protocol> witness;
};

struct ClassificationReport {
  std::size_t vars = 0;
  std::size_t max_cards = 0;
  std::vector<ClassificationEntry> entries;  // all 2^(2^n) functions, id order
};

/// For every n-variable truth table, the least card count <= max_cards at
/// which search() succeeds, with one re-verified witness protocol each.
/// Guards: vars <= 4, max_cards <= 12, and the raw space at max_cards must
/// fit under kSearchGuard.
ClassificationReport classify(std::size_t vars, std::size_t max_cards,
                              const SearchConfig& base);

}  // namespace scfo::search
