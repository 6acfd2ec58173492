#include "scfo/engine.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <map>
#include <sstream>

namespace scfo::engine {

UnknownClassError::UnknownClassError(const Word& opened)
    : std::runtime_error("opened word " + opened.str() + " matches no output class"),
      opened_(opened) {}

// ---------------------------------------------------------------- OutputRule

OutputRule::OutputRule(std::vector<Entry> entries) : entries_(std::move(entries)) {
  if (entries_.empty() || entries_.size() > 2)
    throw std::invalid_argument("an output rule has one or two classes");
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.output < b.output; });
  if (entries_.size() == 2) {
    if (entries_[0].output == entries_[1].output)
      throw std::invalid_argument("output rule classes must have distinct bits");
    if (entries_[0].necklace == entries_[1].necklace)
      throw std::invalid_argument("output rule classes must have distinct necklaces");
    if (entries_[0].necklace.representative.size() != entries_[1].necklace.representative.size())
      throw std::invalid_argument("output rule classes must have equal length");
  }
  for (const Entry& e : entries_) {
    if (e.output > 1) throw std::invalid_argument("output bit must be 0 or 1");
    if (canonical(e.necklace.representative) != e.necklace)
      throw std::invalid_argument("output rule entry is not a canonical necklace");
  }
}

std::optional<Bit> OutputRule::find(const Necklace& necklace) const {
  for (const Entry& e : entries_)
    if (e.necklace == necklace) return e.output;
  return std::nullopt;
}

std::optional<Bit> try_decode(const Word& opened, const OutputRule& rule) {
  if (opened.size() != rule.word_length())
    throw std::invalid_argument("opened word length does not match the rule");
  return rule.find(canonical(opened));
}

Bit decode(const Word& opened, const OutputRule& rule) {
  if (auto bit = try_decode(opened, rule)) return *bit;
  throw UnknownClassError(opened);
}

// ---------------------------------------------------------------- Protocol

Protocol::Protocol(std::string name_, Template tmpl_, OutputRule rule_)
    : name(std::move(name_)), tmpl(std::move(tmpl_)), rule(std::move(rule_)) {
  if (rule.word_length() != tmpl.length())
    throw std::invalid_argument("rule word length does not match the template");
}

// ---------------------------------------------------------------- rule derivation

std::string RuleFailure::describe() const {
  std::ostringstream out;
  for (const auto& [a, b] : same_class_conflicts)
    out << "assignments " << a.str() << " and " << b.str()
        << " share an output but open to distinct necklaces\n";
  for (const auto& [a, b] : cross_class_collisions)
    out << "assignments " << a.str() << " and " << b.str()
        << " have different outputs but share a necklace\n";
  return out.str();
}

RuleDerivation derive_output_rule(const Template& t, const BooleanFunction& f) {
  if (t.var_count() != f.var_count())
    throw std::invalid_argument("template and function arities differ");

  const std::size_t n = f.var_count();
  const std::size_t rows = std::size_t{1} << n;

  std::vector<Necklace> necklaces;
  necklaces.reserve(rows);
  std::array<std::optional<std::size_t>, 2> first_of_class;  // first row per output bit
  for (std::size_t row = 0; row < rows; ++row) {
    const Assignment a = Assignment::from_index(row, n);
    necklaces.push_back(canonical(instantiate(t, a)));
    auto& first = first_of_class[f.value_at(row)];
    if (!first) first = row;
  }

  RuleFailure failure;
  for (std::size_t row = 0; row < rows; ++row) {
    const Bit out = f.value_at(row);
    const std::size_t rep = *first_of_class[out];
    if (row != rep && necklaces[row] != necklaces[rep]) {
      failure.non_constant_class = true;
      failure.same_class_conflicts.emplace_back(Assignment::from_index(rep, n),
                                                Assignment::from_index(row, n));
    }
    for (std::size_t prev = 0; prev < row; ++prev) {
      if (f.value_at(prev) != out && necklaces[prev] == necklaces[row]) {
        failure.indistinguishable_classes = true;
        failure.cross_class_collisions.emplace_back(Assignment::from_index(prev, n),
                                                    Assignment::from_index(row, n));
      }
    }
  }

  if (failure.non_constant_class || failure.indistinguishable_classes)
    return RuleDerivation{std::nullopt, std::move(failure)};

  std::vector<OutputRule::Entry> entries;
  for (Bit out : {Bit{0}, Bit{1}})
    if (first_of_class[out])
      entries.push_back({necklaces[*first_of_class[out]], out});
  return RuleDerivation{OutputRule(std::move(entries)), std::nullopt};
}

// ---------------------------------------------------------------- simulation

std::size_t CutSource::next(std::size_t length) {
  if (length == 0) throw std::invalid_argument("cannot cut an empty sequence");
  if (length == 1) return 0;
  // Rejection sampling: accept draws below the largest multiple of `length`.
  const std::uint64_t m = length;
  const std::uint64_t overflow = (std::numeric_limits<std::uint64_t>::max() % m + 1) % m;
  for (;;) {
    const std::uint64_t r = engine_();
    if (overflow == 0 || r <= std::numeric_limits<std::uint64_t>::max() - overflow)
      return static_cast<std::size_t>(r % m);
  }
}

std::pair<std::size_t, Word> apply_random_cut(const Word& w, CutSource& source) {
  const std::size_t shift = source.next(w.size());
  return {shift, rotate(w, static_cast<long long>(shift))};
}

Trace run(const Protocol& p, const Assignment& a, CutSource& source) {
  const Word hidden = instantiate(p.tmpl, a);
  const auto [shift, opened] = apply_random_cut(hidden, source);
  return Trace{a, hidden, shift, opened, decode(opened, p.rule)};
}

// ---------------------------------------------------------------- verification

VerificationReport verify(const Protocol& p, const BooleanFunction& f) {
  if (p.tmpl.var_count() != f.var_count())
    throw std::invalid_argument("protocol and function arities differ");

  const std::size_t n = f.var_count();
  const std::size_t rows = std::size_t{1} << n;

  VerificationReport report;
  report.rows.reserve(rows);
  for (const Literal& lit : p.tmpl.literals()) {
    if (!lit.is_constant()) continue;
    if (lit.constant_bit() == 0) ++report.constant_clubs;
    else ++report.constant_hearts;
  }

  report.correct = true;
  for (std::size_t row = 0; row < rows; ++row) {
    const Assignment a = Assignment::from_index(row, n);
    const Word w = instantiate(p.tmpl, a);
    const Necklace nk = canonical(w);
    const Bit expected = f.value_at(row);
    const std::optional<Bit> decoded = p.rule.find(nk);
    if (!decoded) {
      report.correct = false;
      report.failure_reasons.push_back("assignment " + a.str() + " opens to word " + w.str() +
                                       " which matches no output class");
    } else if (*decoded != expected) {
      report.correct = false;
      report.failure_reasons.push_back("assignment " + a.str() + " decodes to " +
                                       std::to_string(int(*decoded)) + ", expected " +
                                       std::to_string(int(expected)));
    }
    report.rows.push_back({a, w, nk, expected, decoded});
  }

  report.secure = true;
  std::array<std::optional<std::size_t>, 2> rep;  // first row of each class
  for (std::size_t row = 0; row < rows; ++row) {
    const Bit expected = f.value_at(row);
    auto& first = rep[expected];
    if (!first) {
      first = row;
      continue;
    }
    if (report.rows[row].necklace != report.rows[*first].necklace) {
      report.secure = false;
      report.failure_reasons.push_back(
          "assignments " + Assignment::from_index(*first, n).str() + " and " +
          Assignment::from_index(row, n).str() +
          " share expected output but open to distinct necklaces " +
          report.rows[*first].necklace.representative.str() + " / " +
          report.rows[row].necklace.representative.str());
    }
  }

  return report;
}

bool uniform_class_necklaces(const Template& t, const BooleanFunction& f) {
  if (t.var_count() != f.var_count())
    throw std::invalid_argument("template and function arities differ");
  const std::size_t n = f.var_count();
  std::array<std::optional<Necklace>, 2> cls;
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    const Assignment a = Assignment::from_index(row, n);
    const Necklace nk = canonical(instantiate(t, a));
    auto& slot = cls[f.value_at(row)];
    if (!slot) slot = nk;
    else if (*slot != nk) return false;
  }
  return true;
}

bool uniform_class_distributions(const Template& t, const BooleanFunction& f) {
  if (t.var_count() != f.var_count())
    throw std::invalid_argument("template and function arities differ");
  const std::size_t n = f.var_count();
  using Distribution = std::vector<std::pair<Word, Rational>>;
  std::array<std::optional<Distribution>, 2> cls;
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    const Assignment a = Assignment::from_index(row, n);
    Distribution dist = open_distribution(instantiate(t, a));
    auto& slot = cls[f.value_at(row)];
    if (!slot) slot = std::move(dist);
    else if (*slot != dist) return false;
  }
  return true;
}

bool security_by_distribution(const Protocol& p, const BooleanFunction& f) {
  return uniform_class_distributions(p.tmpl, f);
}

// ---------------------------------------------------------------- restriction

Protocol restrict_var(const Protocol& p, std::size_t var, Bit value) {
  const std::size_t n = p.tmpl.var_count();
  if (var >= n) throw std::out_of_range("restricted variable index out of range");
  if (value > 1) throw std::invalid_argument("restriction bit must be 0 or 1");

  std::vector<Literal> lits;
  lits.reserve(p.tmpl.length());
  for (const Literal& lit : p.tmpl.literals()) {
    if (lit.is_constant()) {
      lits.push_back(lit);
    } else if (lit.var() == var) {
      lits.push_back(Literal::constant(lit.kind() == Literal::Kind::Positive ? value
                                                                             : flip(value)));
    } else if (lit.var() > var) {
      lits.push_back(lit.kind() == Literal::Kind::Positive ? Literal::positive(lit.var() - 1)
                                                           : Literal::negative(lit.var() - 1));
    } else {
      lits.push_back(lit);
    }
  }
  const std::string name =
      p.name + "_" + variable_names(n)[var] + std::to_string(int(value));
  return Protocol(name, Template(n - 1, std::move(lits)), p.rule);
}

// ---------------------------------------------------------------- tables

std::vector<TableRow> render_table(const Protocol& p, const BooleanFunction& f) {
  if (p.tmpl.var_count() != f.var_count())
    throw std::invalid_argument("protocol and function arities differ");
  const std::size_t n = f.var_count();
  std::vector<TableRow> rows;
  rows.reserve(std::size_t{1} << n);
  for (std::size_t row = 0; row < (std::size_t{1} << n); ++row) {
    const Assignment a = Assignment::from_index(row, n);
    rows.push_back({a.str(), f.value_at(row), instantiate(p.tmpl, a).str()});
  }
  return rows;
}

std::string render_table_text(const Protocol& p, const BooleanFunction& f) {
  std::string out;
  for (const TableRow& row : render_table(p, f)) {
    out += row.assignment;
    out += " | ";
    out += row.value ? '1' : '0';
    out += " | ";
    out += row.word;
    out += '\n';
  }
  return out;
}

}  // namespace scfo::engine
