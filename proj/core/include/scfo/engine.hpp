#pragma once

#include "scfo/core.hpp"

#include <optional>
#include <random>

namespace scfo::engine {

/// Raised when an opened word belongs to no output class of the rule.
class UnknownClassError : public std::runtime_error {
public:
  explicit UnknownClassError(const Word& opened);
  const Word& opened() const { return opened_; }

private:
  Word opened_;
};

/// The decoding map of a protocol: one necklace per output bit, one or two
/// entries, necklaces pairwise distinct. Entries are kept sorted by bit.
class OutputRule {
public:
  struct Entry {
    Necklace necklace;
    Bit output;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  explicit OutputRule(std::vector<Entry> entries);

  const std::vector<Entry>& entries() const { return entries_; }
  std::size_t word_length() const { return entries_.front().necklace.representative.size(); }
  std::optional<Bit> find(const Necklace& necklace) const;

  friend bool operator==(const OutputRule&, const OutputRule&) = default;

private:
  std::vector<Entry> entries_;
};

/// nullopt when the opened word matches no class.
std::optional<Bit> try_decode(const Word& opened, const OutputRule& rule);

/// Throws UnknownClassError when the opened word matches no class.
Bit decode(const Word& opened, const OutputRule& rule);

struct Protocol {
  Protocol(std::string name, Template tmpl, OutputRule rule);

  std::string name;
  Template tmpl;
  OutputRule rule;
};

/// Why a template admits no output rule for a function. Both failure modes
/// are detected and reported together with every offending assignment pair.
struct RuleFailure {
  bool non_constant_class = false;        // same output, different necklaces
  bool indistinguishable_classes = false; // different outputs share a necklace
  std::vector<std::pair<Assignment, Assignment>> same_class_conflicts;
  std::vector<std::pair<Assignment, Assignment>> cross_class_collisions;

  std::string describe() const;
};

struct RuleDerivation {
  std::optional<OutputRule> rule;
  std::optional<RuleFailure> failure;

  bool ok() const { return rule.has_value(); }
};

/// Canonicalizes the instantiation of every assignment and maps each output
/// class to its necklace. Succeeds iff each class is a single necklace and
/// the class necklaces are pairwise distinct.
RuleDerivation derive_output_rule(const Template& t, const BooleanFunction& f);

/// Seedable source of uniform shifts. Rejection sampling on top of
/// std::mt19937_64 keeps the stream identical across platforms.
class CutSource {
public:
  explicit CutSource(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw from [0, length). length >= 1.
  std::size_t next(std::size_t length);

private:
  std::mt19937_64 engine_;
};

/// One random cut: draws a shift and rotates. The simulator's only source of
/// randomness.
std::pair<std::size_t, Word> apply_random_cut(const Word& w, CutSource& source);

struct Trace {
  Assignment assignment;
  Word hidden;        // instantiated sequence before the cut
  std::size_t shift;  // the secret offset
  Word opened;
  Bit output;
};

/// Executes the protocol once: instantiate, cut, open, decode.
Trace run(const Protocol& p, const Assignment& a, CutSource& source);

struct VerificationReport {
  struct Row {
    Assignment assignment;
    Word word;
    Necklace necklace;
    Bit expected;
    std::optional<Bit> decoded;  // nullopt: no class matched
  };

  std::vector<Row> rows;
  bool correct = false;  // every row decodes to its expected bit
  bool secure = false;   // rows with equal expected bit share one necklace
  std::size_t constant_clubs = 0;   // helper cards in the template, by color
  std::size_t constant_hearts = 0;
  std::vector<std::string> failure_reasons;

  bool ok() const { return correct && secure; }
};

/// Exhaustive check of all 2^n assignments against the protocol's rule.
VerificationReport verify(const Protocol& p, const BooleanFunction& f);

/// Security via necklaces: within each output class all instantiations share
/// one cyclic class.
bool uniform_class_necklaces(const Template& t, const BooleanFunction& f);

/// Security via exact distributions: within each output class all opened
/// sequences are identically distributed. Agrees with the necklace check for
/// a uniform random cut.
bool uniform_class_distributions(const Template& t, const BooleanFunction& f);

/// Distribution-based security verdict for a protocol (rule ignored; security
/// only depends on the template and the function).
bool security_by_distribution(const Protocol& p, const BooleanFunction& f);

/// Fixes one protocol variable to a constant: its literals become constant
/// cards, later variables are re-indexed, the rule is unchanged.
Protocol restrict_var(const Protocol& p, std::size_t var, Bit value);

struct TableRow {
  std::string assignment;
  Bit value;
  std::string word;
};

/// The per-assignment correctness table: rows in big-endian assignment order.
std::vector<TableRow> render_table(const Protocol& p, const BooleanFunction& f);

/// Text form, one "bits | bit | word" line per row.
std::string render_table_text(const Protocol& p, const BooleanFunction& f);

}  // namespace scfo::engine
