#include "scfo/core.hpp"

#include <algorithm>
#include <limits>

namespace scfo {

namespace {

void require_bit(Bit b, const char* what) {
  if (b > 1) throw std::invalid_argument(std::string(what) + ": bit must be 0 or 1");
}

std::uint64_t length_mask(std::size_t m) {
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

// Left-rotation of the low m bits by s positions, 0 <= s < m.
std::uint64_t rotl_bits(std::uint64_t bits, std::size_t s, std::size_t m) {
  if (s == 0) return bits;
  return ((bits << s) | (bits >> (m - s))) & length_mask(m);
}

}  // namespace

Symbol symbol_of_bit(Bit b) {
  require_bit(b, "symbol_of_bit");
  return b ? Symbol::Heart : Symbol::Club;
}

Bit bit_of_symbol(Symbol s) { return s == Symbol::Heart ? 1 : 0; }

char symbol_char(Symbol s) { return s == Symbol::Heart ? 'H' : 'C'; }

Symbol symbol_from_char(char c) {
  if (c == 'C') return Symbol::Club;
  if (c == 'H') return Symbol::Heart;
  throw std::invalid_argument(std::string("invalid card character '") + c + "', expected C or H");
}

std::vector<std::string> variable_names(std::size_t var_count) {
  static const char* kShort[] = {"x", "y", "z", "w"};
  std::vector<std::string> names;
  names.reserve(var_count);
  for (std::size_t i = 0; i < var_count; ++i) {
    if (var_count <= 4)
      names.emplace_back(kShort[i]);
    else
      names.emplace_back("v" + std::to_string(i));
  }
  return names;
}

// ---------------------------------------------------------------- Word

Word::Word(std::initializer_list<Symbol> symbols) {
  for (Symbol s : symbols) append(s);
}

Word::Word(std::span<const Symbol> symbols) {
  for (Symbol s : symbols) append(s);
}

Word Word::from_string(std::string_view text) {
  Word w;
  for (char c : text) w.append(symbol_from_char(c));
  return w;
}

Word Word::from_packed(std::uint64_t bits, std::size_t length) {
  if (length > max_length) throw std::length_error("word length exceeds 64 cards");
  if ((bits & ~length_mask(length)) != 0)
    throw std::invalid_argument("packed word has bits beyond its length");
  Word w;
  w.bits_ = bits;
  w.length_ = static_cast<std::uint8_t>(length);
  return w;
}

Symbol Word::operator[](std::size_t i) const {
  if (i >= length_) throw std::out_of_range("word index out of range");
  return static_cast<Symbol>((bits_ >> (length_ - 1 - i)) & 1u);
}

void Word::append(Symbol s) {
  if (length_ >= max_length) throw std::length_error("word length exceeds 64 cards");
  bits_ = (bits_ << 1) | static_cast<std::uint64_t>(s == Symbol::Heart);
  ++length_;
}

std::string Word::str() const {
  std::string out;
  out.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) out.push_back(symbol_char((*this)[i]));
  return out;
}

std::vector<Symbol> Word::symbols() const {
  std::vector<Symbol> out;
  out.reserve(length_);
  for (std::size_t i = 0; i < length_; ++i) out.push_back((*this)[i]);
  return out;
}

Word Word::complemented() const {
  Word w = *this;
  w.bits_ = ~bits_ & length_mask(length_);
  return w;
}

std::strong_ordering Word::operator<=>(const Word& other) const {
  // Top-aligning both packings makes the integer order the lexicographic
  // order; a strict prefix ties on the aligned bits and is the smaller word.
  const std::uint64_t a = length_ ? bits_ << (64 - length_) : 0;
  const std::uint64_t b = other.length_ ? other.bits_ << (64 - other.length_) : 0;
  if (a != b) return a <=> b;
  return length_ <=> other.length_;
}

Word rotate(const Word& w, long long k) {
  const std::size_t m = w.size();
  if (m == 0) return w;
  const long long mm = static_cast<long long>(m);
  const std::size_t s = static_cast<std::size_t>(((k % mm) + mm) % mm);
  return Word::from_packed(rotl_bits(w.packed(), s, m), m);
}

Necklace canonical(const Word& w) {
  const std::size_t m = w.size();
  if (m == 0) return Necklace{w, 1};
  const std::uint64_t bits = w.packed();
  std::uint64_t best = bits;
  std::size_t period = m;
  for (std::size_t k = 1; k < m; ++k) {
    const std::uint64_t r = rotl_bits(bits, k, m);
    if (r == bits) {
      period = k;  // rotations repeat from here on
      break;
    }
    if (r < best) best = r;
  }
  return Necklace{Word::from_packed(best, m), period};
}

// ---------------------------------------------------------------- Literal

Literal Literal::constant(Bit b) {
  require_bit(b, "Literal::constant");
  return Literal(static_cast<std::uint8_t>(b));
}

Literal Literal::positive(std::size_t var) {
  if (var >= 120) throw std::out_of_range("variable index too large for a literal");
  return Literal(static_cast<std::uint8_t>(2 + 2 * var));
}

Literal Literal::negative(std::size_t var) {
  if (var >= 120) throw std::out_of_range("variable index too large for a literal");
  return Literal(static_cast<std::uint8_t>(3 + 2 * var));
}

Literal Literal::from_code(std::uint8_t code) { return Literal(code); }

Literal::Kind Literal::kind() const {
  if (code_ < 2) return Kind::Constant;
  return (code_ & 1u) ? Kind::Negative : Kind::Positive;
}

std::size_t Literal::var() const {
  if (is_constant()) throw std::logic_error("constant literal has no variable");
  return (code_ - 2) / 2;
}

Bit Literal::constant_bit() const {
  if (!is_constant()) throw std::logic_error("variable literal has no constant bit");
  return code_;
}

// ---------------------------------------------------------------- Assignment

Assignment::Assignment(std::initializer_list<Bit> bits)
    : Assignment(std::span<const Bit>(bits.begin(), bits.size())) {}

Assignment::Assignment(std::span<const Bit> bits) {
  if (bits.size() > max_vars) throw std::length_error("assignment exceeds 16 variables");
  for (Bit b : bits) {
    require_bit(b, "Assignment");
    bits_ = static_cast<std::uint16_t>((bits_ << 1) | b);
  }
  n_ = static_cast<std::uint8_t>(bits.size());
}

Assignment Assignment::from_index(std::size_t index, std::size_t var_count) {
  if (var_count > max_vars) throw std::length_error("assignment exceeds 16 variables");
  if (index >= (std::size_t{1} << var_count))
    throw std::out_of_range("assignment index out of range");
  Assignment a;
  a.bits_ = static_cast<std::uint16_t>(index);
  a.n_ = static_cast<std::uint8_t>(var_count);
  return a;
}

Assignment Assignment::from_string(std::string_view bits) {
  Assignment a;
  if (bits.size() > max_vars) throw std::length_error("assignment exceeds 16 variables");
  for (char c : bits) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("assignment must consist of 0/1 characters");
    a.bits_ = static_cast<std::uint16_t>((a.bits_ << 1) | (c == '1'));
  }
  a.n_ = static_cast<std::uint8_t>(bits.size());
  return a;
}

Bit Assignment::bit(std::size_t var) const {
  if (var >= n_) throw std::out_of_range("assignment variable index out of range");
  return static_cast<Bit>((bits_ >> (n_ - 1 - var)) & 1u);
}

std::string Assignment::str() const {
  std::string out;
  out.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

// ---------------------------------------------------------------- Template

Template::Template(std::size_t var_count, std::vector<Literal> literals)
    : var_count_(var_count), literals_(std::move(literals)) {
  if (literals_.empty()) throw std::invalid_argument("template needs at least one literal");
  for (const Literal& lit : literals_) {
    if (!lit.is_constant() && lit.var() >= var_count_)
      throw std::invalid_argument("template literal references an undeclared variable");
  }
}

Template Template::complemented() const {
  std::vector<Literal> lits;
  lits.reserve(literals_.size());
  for (const Literal& lit : literals_) lits.push_back(lit.complemented());
  return Template(var_count_, std::move(lits));
}

Template rotate_template(const Template& t, long long k) {
  const std::size_t m = t.length();
  const long long mm = static_cast<long long>(m);
  const std::size_t s = static_cast<std::size_t>(((k % mm) + mm) % mm);
  std::vector<Literal> lits;
  lits.reserve(m);
  for (std::size_t i = 0; i < m; ++i) lits.push_back(t[(i + s) % m]);
  return Template(t.var_count(), std::move(lits));
}

// ---------------------------------------------------------------- BooleanFunction

BooleanFunction::BooleanFunction(std::size_t var_count, std::span<const Bit> table) {
  if (var_count > max_vars) throw std::length_error("function exceeds 6 variables");
  const std::size_t rows = std::size_t{1} << var_count;
  if (table.size() != rows)
    throw std::invalid_argument("truth table must have exactly 2^n entries");
  n_ = static_cast<std::uint8_t>(var_count);
  for (Bit b : table) {
    require_bit(b, "BooleanFunction");
    table_ = (table_ << 1) | b;
  }
}

BooleanFunction::BooleanFunction(std::size_t var_count, std::initializer_list<Bit> table)
    : BooleanFunction(var_count, std::span<const Bit>(table.begin(), table.size())) {}

BooleanFunction BooleanFunction::from_table_id(std::size_t var_count, std::uint64_t id) {
  if (var_count > max_vars) throw std::length_error("function exceeds 6 variables");
  const std::size_t rows = std::size_t{1} << var_count;
  if (rows < 64 && id >= (std::uint64_t{1} << rows))
    throw std::out_of_range("table id out of range for this arity");
  BooleanFunction f;
  f.n_ = static_cast<std::uint8_t>(var_count);
  f.table_ = id;
  return f;
}

BooleanFunction BooleanFunction::from_hex(std::string_view hex) {
  std::size_t n = 0;
  switch (hex.size()) {
    case 1: n = 2; break;
    case 2: n = 3; break;
    case 4: n = 4; break;
    case 8: n = 5; break;
    case 16: n = 6; break;
    default:
      throw std::invalid_argument(
          "hex truth table must have 1, 2, 4, 8 or 16 digits (2..6 variables)");
  }
  return from_hex(hex, n);
}

BooleanFunction BooleanFunction::from_hex(std::string_view hex, std::size_t var_count) {
  if (var_count > max_vars) throw std::length_error("function exceeds 6 variables");
  const std::size_t rows = std::size_t{1} << var_count;
  const std::size_t digits = std::max<std::size_t>(1, rows / 4);
  if (hex.size() != digits)
    throw std::invalid_argument("hex truth table has the wrong number of digits");
  std::uint64_t id = 0;
  for (char c : hex) {
    std::uint64_t d = 0;
    if (c >= '0' && c <= '9') d = static_cast<std::uint64_t>(c - '0');
    else if (c >= 'a' && c <= 'f') d = static_cast<std::uint64_t>(c - 'a' + 10);
    else if (c >= 'A' && c <= 'F') d = static_cast<std::uint64_t>(c - 'A' + 10);
    else throw std::invalid_argument("invalid hex digit in truth table");
    id = (id << 4) | d;
  }
  if (rows < 4 && id >= (std::uint64_t{1} << rows))
    throw std::out_of_range("hex truth table out of range for this arity");
  return from_table_id(var_count, id);
}

Bit BooleanFunction::value(const Assignment& a) const {
  if (a.size() != n_)
    throw std::invalid_argument("assignment arity does not match the function");
  return value_at(a.index());
}

Bit BooleanFunction::value_at(std::size_t row) const {
  const std::size_t rows = std::size_t{1} << n_;
  if (row >= rows) throw std::out_of_range("truth table row out of range");
  return static_cast<Bit>((table_ >> (rows - 1 - row)) & 1u);
}

std::string BooleanFunction::hex() const {
  const std::size_t rows = std::size_t{1} << n_;
  const std::size_t digits = std::max<std::size_t>(1, rows / 4);
  static const char* kDigits = "0123456789abcdef";
  std::string out(digits, '0');
  std::uint64_t v = table_;
  for (std::size_t i = 0; i < digits; ++i) {
    out[digits - 1 - i] = kDigits[v & 0xF];
    v >>= 4;
  }
  return out;
}

bool BooleanFunction::is_constant() const {
  const std::size_t rows = std::size_t{1} << n_;
  const std::uint64_t mask = rows >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << rows) - 1;
  return table_ == 0 || table_ == mask;
}

BooleanFunction BooleanFunction::restricted(std::size_t var, Bit fixed) const {
  if (var >= n_) throw std::out_of_range("restricted variable index out of range");
  require_bit(fixed, "BooleanFunction::restricted");
  const std::size_t new_n = n_ - std::size_t{1};
  std::vector<Bit> table;
  table.reserve(std::size_t{1} << new_n);
  for (std::size_t row = 0; row < (std::size_t{1} << new_n); ++row) {
    Assignment partial = Assignment::from_index(row, new_n);
    std::vector<Bit> bits;
    bits.reserve(n_);
    for (std::size_t i = 0; i < new_n; ++i) bits.push_back(partial.bit(i));
    bits.insert(bits.begin() + static_cast<std::ptrdiff_t>(var), fixed);
    table.push_back(value(Assignment(std::span<const Bit>(bits))));
  }
  return BooleanFunction(new_n, std::span<const Bit>(table));
}

// ---------------------------------------------------------------- operations

Bit eval_literal(Literal lit, const Assignment& a) {
  switch (lit.kind()) {
    case Literal::Kind::Constant: return lit.constant_bit();
    case Literal::Kind::Positive: return a.bit(lit.var());
    case Literal::Kind::Negative: return flip(a.bit(lit.var()));
  }
  throw std::logic_error("unreachable literal kind");
}

Word instantiate(const Template& t, const Assignment& a) {
  if (a.size() != t.var_count())
    throw std::invalid_argument("assignment arity does not match the template");
  Word w;
  for (const Literal& lit : t.literals()) w.append(symbol_of_bit(eval_literal(lit, a)));
  return w;
}

Bit eval_function(const BooleanFunction& f, const Assignment& a) { return f.value(a); }

std::vector<std::pair<Word, Rational>> open_distribution(const Word& w) {
  const Necklace nk = canonical(w);
  std::vector<std::pair<Word, Rational>> dist;
  dist.reserve(nk.period);
  const Rational p(1, static_cast<long long>(nk.period));
  for (std::size_t k = 0; k < nk.period; ++k)
    dist.emplace_back(rotate(w, static_cast<long long>(k)), p);
  std::sort(dist.begin(), dist.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return dist;
}

}  // namespace scfo
