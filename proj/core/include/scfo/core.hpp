#pragma once

#include <boost/rational.hpp>

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scfo {

/// A card face. Club orders below Heart; every canonical form relies on that.
enum class Symbol : std::uint8_t { Club = 0, Heart = 1 };

/// A single bit. Constructors of the types that store bits enforce {0,1}.
using Bit = std::uint8_t;

/// Exact probabilities. Random-cut distributions never need more than
/// machine-word numerators/denominators.
using Rational = boost::rational<long long>;

Symbol symbol_of_bit(Bit b);
Bit bit_of_symbol(Symbol s);
inline Bit flip(Bit b) { return static_cast<Bit>(b ^ 1u); }

char symbol_char(Symbol s);              // 'C' or 'H'
Symbol symbol_from_char(char c);         // accepts 'C'/'H' only

/// Canonical variable names used by the DSL and all textual output:
/// x, y, z, w for up to four variables, v0, v1, ... beyond that.
std::vector<std::string> variable_names(std::size_t var_count);

/// A sequence of card faces, e.g. the opened table state. Stored bit-packed
/// (Heart = 1, leftmost card in the most significant position) so rotations
/// and lexicographic comparisons are single integer operations.
class Word {
public:
  static constexpr std::size_t max_length = 64;

  Word() = default;
  Word(std::initializer_list<Symbol> symbols);
  explicit Word(std::span<const Symbol> symbols);

  static Word from_string(std::string_view text);          // e.g. "CCHCCHHH"
  static Word from_packed(std::uint64_t bits, std::size_t length);

  std::size_t size() const { return length_; }
  bool empty() const { return length_ == 0; }
  Symbol operator[](std::size_t i) const;

  /// Appends one card on the right. Throws std::length_error past max_length.
  void append(Symbol s);

  /// Packed form: card i sits at bit (size()-1-i), Heart = 1.
  std::uint64_t packed() const { return bits_; }

  std::string str() const;
  std::vector<Symbol> symbols() const;

  /// Swaps Club and Heart in every position.
  Word complemented() const;

  friend bool operator==(const Word&, const Word&) = default;
  std::strong_ordering operator<=>(const Word& other) const;

private:
  std::uint64_t bits_ = 0;
  std::uint8_t length_ = 0;
};

/// rotate(w, k)[i] = w[(i + k) mod m]. Negative k rotates the other way.
Word rotate(const Word& w, long long k);

/// The cyclic-equivalence class of a word: lexicographically least rotation
/// plus the smallest positive self-period. Two words are rotations of each
/// other iff their necklaces compare equal. Obtain instances via canonical().
struct Necklace {
  Word representative;
  std::size_t period = 0;

  friend bool operator==(const Necklace&, const Necklace&) = default;
  auto operator<=>(const Necklace&) const = default;
};

/// O(m): each rotation of a packed word costs O(1), so scanning all m
/// rotations for the minimum and the first self-match stays linear.
Necklace canonical(const Word& w);

/// A card slot in a template: a variable occurrence (plain or negated) or a
/// constant card. Encoded as a small integer so that the enumeration order
/// Constant(0) < Constant(1) < Positive(0) < Negative(0) < Positive(1) < ...
/// is plain integer comparison.
class Literal {
public:
  enum class Kind : std::uint8_t { Constant, Positive, Negative };

  static Literal constant(Bit b);
  static Literal positive(std::size_t var);
  static Literal negative(std::size_t var);
  static Literal from_code(std::uint8_t code);

  Kind kind() const;
  bool is_constant() const { return code_ < 2; }
  std::size_t var() const;        // throws std::logic_error on constants
  Bit constant_bit() const;       // throws std::logic_error on variables

  std::uint8_t code() const { return code_; }

  /// Positive <-> Negative, Constant b <-> Constant 1-b.
  Literal complemented() const { return Literal(static_cast<std::uint8_t>(code_ ^ 1u)); }

  friend bool operator==(const Literal&, const Literal&) = default;
  auto operator<=>(const Literal&) const = default;

private:
  explicit Literal(std::uint8_t code) : code_(code) {}
  std::uint8_t code_;
};

/// One row of a truth table: the values of all variables, variable 0 first.
class Assignment {
public:
  static constexpr std::size_t max_vars = 16;

  Assignment() = default;
  Assignment(std::initializer_list<Bit> bits);
  explicit Assignment(std::span<const Bit> bits);

  /// Decodes a big-endian row index (variable 0 is the most significant bit).
  static Assignment from_index(std::size_t index, std::size_t var_count);
  static Assignment from_string(std::string_view bits);    // e.g. "011"

  std::size_t size() const { return n_; }
  Bit bit(std::size_t var) const;

  /// Big-endian row index of this assignment.
  std::size_t index() const { return bits_; }

  std::string str() const;

  friend bool operator==(const Assignment&, const Assignment&) = default;

private:
  std::uint16_t bits_ = 0;
  std::uint8_t n_ = 0;
};

/// The ordered list of literals that fills the m card positions.
class Template {
public:
  Template(std::size_t var_count, std::vector<Literal> literals);

  std::size_t var_count() const { return var_count_; }
  std::size_t length() const { return literals_.size(); }
  const std::vector<Literal>& literals() const { return literals_; }
  const Literal& operator[](std::size_t i) const { return literals_[i]; }

  Template complemented() const;

  friend bool operator==(const Template&, const Template&) = default;

private:
  std::size_t var_count_;
  std::vector<Literal> literals_;
};

/// rotate_template(t, k).literals()[i] = t.literals()[(i + k) mod m], so
/// instantiation commutes with rotation.
Template rotate_template(const Template& t, long long k);

/// A truth table over up to six variables, packed row-major: the value at
/// big-endian row index r sits at bit (2^n - 1 - r).
class BooleanFunction {
public:
  static constexpr std::size_t max_vars = 6;

  BooleanFunction(std::size_t var_count, std::span<const Bit> table);
  BooleanFunction(std::size_t var_count, std::initializer_list<Bit> table);

  /// Builds from the packed table id (row 0 at the most significant bit of
  /// the 2^n-bit field).
  static BooleanFunction from_table_id(std::size_t var_count, std::uint64_t id);

  /// Hex truth table, row 0 first. The digit count fixes the arity:
  /// 1 digit -> 2 vars, 2 -> 3, 4 -> 4, 8 -> 5, 16 -> 6.
  static BooleanFunction from_hex(std::string_view hex);
  static BooleanFunction from_hex(std::string_view hex, std::size_t var_count);

  std::size_t var_count() const { return n_; }
  std::size_t rows() const { return std::size_t{1} << n_; }

  Bit value(const Assignment& a) const;
  Bit value_at(std::size_t row) const;

  std::uint64_t table_id() const { return table_; }
  std::string hex() const;

  bool is_constant() const;

  /// Fixes one variable to a constant; remaining variables keep their order
  /// and are re-indexed.
  BooleanFunction restricted(std::size_t var, Bit value) const;

  friend bool operator==(const BooleanFunction&, const BooleanFunction&) = default;

private:
  BooleanFunction() = default;
  std::uint64_t table_ = 0;
  std::uint8_t n_ = 0;
};

Bit eval_literal(Literal lit, const Assignment& a);
Word instantiate(const Template& t, const Assignment& a);
Bit eval_function(const BooleanFunction& f, const Assignment& a);

/// Exact opened-sequence distribution of a uniform random cut: the period(w)
/// distinct rotations of w, each with probability 1/period(w). Sorted by word.
std::vector<std::pair<Word, Rational>> open_distribution(const Word& w);

}  // namespace scfo
