#include "scfo/dsl.hpp"

#include "scfo/fixtures.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>

namespace scfo::dsl {

namespace {

struct Token {
  std::string text;
  std::size_t line;
  std::size_t column;
};

using Line = std::vector<Token>;

[[noreturn]] void fail(std::size_t line, std::size_t column, ErrorCode code,
                       std::string message) {
  throw ParseException(ParseError{line, column, code, std::move(message)});
}

[[noreturn]] void fail_at(const Token& token, ErrorCode code, std::string message) {
  fail(token.line, token.column, code, std::move(message));
}

bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
}

bool is_name(std::string_view text) {
  if (text.empty() || !is_name_start(text.front())) return false;
  return std::all_of(text.begin(), text.end(), is_name_char);
}

// Comment-stripped, whitespace-split physical lines; blank lines dropped.
std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view raw = text.substr(pos, eol - pos);
    ++line_no;
    if (const std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);

    Line tokens;
    std::size_t i = 0;
    while (i < raw.size()) {
      if (std::isspace(static_cast<unsigned char>(raw[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      if (raw[i] == ':') {
        ++i;
      } else {
        while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
               raw[i] != ':' && raw[i] != '#')
          ++i;
      }
      tokens.push_back(Token{std::string(raw.substr(start, i - start)), line_no, start + 1});
    }
    if (!tokens.empty()) lines.push_back(std::move(tokens));
    if (eol == text.size()) break;
    pos = eol + 1;
  }
  return lines;
}

void expect_no_trailing(const Line& line, std::size_t used) {
  if (line.size() > used)
    fail_at(line[used], ErrorCode::TrailingToken,
            "unexpected token '" + line[used].text + "' at end of line");
}

const Token& expect_token(const Line& line, std::size_t index, std::string_view what) {
  if (index >= line.size()) {
    const Token& last = line.back();
    fail(last.line, last.column + last.text.size(), ErrorCode::MissingToken,
         "expected " + std::string(what));
  }
  return line[index];
}

std::string expect_name(const Line& line, std::size_t index, std::string_view what) {
  const Token& token = expect_token(line, index, what);
  if (!is_name(token.text))
    fail_at(token, ErrorCode::BadName, "invalid name '" + token.text + "'");
  return token.text;
}

}  // namespace

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingSection: return "missing-section";
    case ErrorCode::UnexpectedLine: return "unexpected-line";
    case ErrorCode::BadToken: return "bad-token";
    case ErrorCode::MissingToken: return "missing-token";
    case ErrorCode::TrailingToken: return "trailing-token";
    case ErrorCode::BadName: return "bad-name";
    case ErrorCode::DuplicateVariable: return "duplicate-variable";
    case ErrorCode::UnknownVariable: return "unknown-variable";
    case ErrorCode::BadLiteral: return "bad-literal";
    case ErrorCode::TemplateTooLong: return "template-too-long";
    case ErrorCode::BadBit: return "bad-bit";
    case ErrorCode::BadWord: return "bad-word";
    case ErrorCode::WrongWordLength: return "wrong-word-length";
    case ErrorCode::DuplicateOutputBit: return "duplicate-output-bit";
    case ErrorCode::IndistinctClasses: return "indistinct-classes";
    case ErrorCode::UnknownFunction: return "unknown-function";
    case ErrorCode::FunctionArity: return "function-arity";
  }
  return "unknown";
}

ParseException::ParseException(ParseError error)
    : std::runtime_error("line " + std::to_string(error.line) + ", column " +
                         std::to_string(error.column) + ": " + error.message + " [" +
                         std::string(error_code_name(error.code)) + "]"),
      error_(std::move(error)) {}

namespace {

bool is_hexish(std::string_view token) {
  return !token.empty() && std::all_of(token.begin(), token.end(), [](char c) {
    return std::isxdigit(static_cast<unsigned char>(c));
  });
}

}  // namespace

std::optional<BooleanFunction> resolve_function(std::string_view token) {
  if (auto f = fixtures::function_by_name(token)) return f;
  if (!is_hexish(token)) return std::nullopt;
  try {
    return BooleanFunction::from_hex(token);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::optional<BooleanFunction> resolve_function(std::string_view token, std::size_t var_count) {
  if (auto f = fixtures::function_by_name(token)) return f;
  if (!is_hexish(token)) return std::nullopt;
  try {
    return BooleanFunction::from_hex(token, var_count);
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

ParsedDocument parse_protocol(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  std::size_t next = 0;

  auto take_line = [&](std::string_view keyword, bool required) -> const Line* {
    if (next >= lines.size()) {
      if (required)
        fail(lines.empty() ? 1 : lines.back().front().line + 1, 1, ErrorCode::MissingSection,
             "missing '" + std::string(keyword) + "' line");
      return nullptr;
    }
    const Line& line = lines[next];
    if (line.front().text != keyword) {
      if (required)
        fail_at(line.front(), line.front().text == "protocol" || line.front().text == "vars" ||
                                      line.front().text == "template" ||
                                      line.front().text == "output" ||
                                      line.front().text == "function"
                                  ? ErrorCode::UnexpectedLine
                                  : ErrorCode::BadToken,
                "expected '" + std::string(keyword) + "' line, found '" + line.front().text + "'");
      return nullptr;
    }
    ++next;
    return &line;
  };

  // protocol NAME
  const Line& header = *take_line("protocol", true);
  const std::string name = expect_name(header, 1, "protocol name");
  expect_no_trailing(header, 2);

  // vars NAME+
  const Line& vars_line = *take_line("vars", true);
  std::map<std::string, std::size_t> var_index;
  std::vector<std::string> var_names;
  if (vars_line.size() < 2) {
    const Token& last = vars_line.back();
    fail(last.line, last.column + last.text.size(), ErrorCode::MissingToken,
         "expected at least one variable name");
  }
  for (std::size_t i = 1; i < vars_line.size(); ++i) {
    const Token& token = vars_line[i];
    if (!is_name(token.text) || token.text == "0" || token.text == "1")
      fail_at(token, ErrorCode::BadName, "invalid variable name '" + token.text + "'");
    if (!var_index.emplace(token.text, var_names.size()).second)
      fail_at(token, ErrorCode::DuplicateVariable,
              "duplicate variable name '" + token.text + "'");
    var_names.push_back(token.text);
  }

  // template LITERAL+
  const Line& tmpl_line = *take_line("template", true);
  if (tmpl_line.size() < 2) {
    const Token& last = tmpl_line.back();
    fail(last.line, last.column + last.text.size(), ErrorCode::MissingToken,
         "expected at least one literal");
  }
  std::vector<Literal> literals;
  for (std::size_t i = 1; i < tmpl_line.size(); ++i) {
    const Token& token = tmpl_line[i];
    const std::string& text = token.text;
    if (text == "0") {
      literals.push_back(Literal::constant(0));
    } else if (text == "1") {
      literals.push_back(Literal::constant(1));
    } else if (!text.empty() && text.front() == '!') {
      const std::string base = text.substr(1);
      if (!is_name(base))
        fail_at(token, ErrorCode::BadLiteral, "invalid literal '" + text + "'");
      const auto it = var_index.find(base);
      if (it == var_index.end())
        fail_at(token, ErrorCode::UnknownVariable, "unknown variable '" + base + "'");
      literals.push_back(Literal::negative(it->second));
    } else if (is_name(text)) {
      const auto it = var_index.find(text);
      if (it == var_index.end())
        fail_at(token, ErrorCode::UnknownVariable, "unknown variable '" + text + "'");
      literals.push_back(Literal::positive(it->second));
    } else {
      fail_at(token, ErrorCode::BadLiteral, "invalid literal '" + text + "'");
    }
  }
  if (literals.size() > Word::max_length)
    fail_at(tmpl_line[1 + Word::max_length], ErrorCode::TemplateTooLong,
            "templates are limited to 64 cards");
  Template tmpl(var_names.size(), std::move(literals));

  // output BIT : WORD  (once or twice)
  std::vector<engine::OutputRule::Entry> entries;
  std::array<bool, 2> seen_bit{false, false};
  while (const Line* line_ptr = take_line("output", entries.empty())) {
    const Line& line = *line_ptr;
    const Token& bit_token = expect_token(line, 1, "output bit");
    if (bit_token.text != "0" && bit_token.text != "1")
      fail_at(bit_token, ErrorCode::BadBit, "output bit must be 0 or 1");
    const Bit bit = bit_token.text == "1" ? 1 : 0;
    const Token& colon = expect_token(line, 2, "':'");
    if (colon.text != ":") fail_at(colon, ErrorCode::BadToken, "expected ':' after output bit");
    const Token& word_token = expect_token(line, 3, "class word");
    expect_no_trailing(line, 4);

    for (std::size_t i = 0; i < word_token.text.size(); ++i) {
      const char c = word_token.text[i];
      if (c != 'C' && c != 'H')
        fail(word_token.line, word_token.column + i, ErrorCode::BadWord,
             "class word must consist of C/H characters");
    }
    if (word_token.text.size() != tmpl.length())
      fail_at(word_token, ErrorCode::WrongWordLength,
              "class word has length " + std::to_string(word_token.text.size()) +
                  ", template has " + std::to_string(tmpl.length()) + " cards");
    if (seen_bit[bit])
      fail_at(bit_token, ErrorCode::DuplicateOutputBit,
              "output bit " + bit_token.text + " already has a class");
    seen_bit[bit] = true;
    // any rotation of the class is accepted
    entries.push_back({canonical(Word::from_string(word_token.text)), bit});
    if (entries.size() == 2) break;
  }
  if (entries.size() == 2 && entries[0].necklace == entries[1].necklace) {
    const Line& line = lines[next - 1];
    fail_at(line[3], ErrorCode::IndistinctClasses,
            "output classes are rotations of each other");
  }

  // function HEX-or-NAME  (optional)
  std::optional<BooleanFunction> function;
  if (const Line* line_ptr = take_line("function", false)) {
    const Line& line = *line_ptr;
    const Token& token = expect_token(line, 1, "function name or hex table");
    expect_no_trailing(line, 2);
    function = resolve_function(token.text, tmpl.var_count());
    if (!function)
      fail_at(token, ErrorCode::UnknownFunction,
              "unknown function '" + token.text +
                  "' (not a built-in name or a hex table for this arity)");
    if (function->var_count() != tmpl.var_count())
      fail_at(token, ErrorCode::FunctionArity,
              "function has " + std::to_string(function->var_count()) + " variables, vars line has " +
                  std::to_string(tmpl.var_count()));
  }

  if (next < lines.size())
    fail_at(lines[next].front(), ErrorCode::UnexpectedLine,
            "unexpected line after the document");

  return ParsedDocument{engine::Protocol(name, std::move(tmpl), engine::OutputRule(entries)),
                        std::move(function)};
}

std::string serialize_protocol(const engine::Protocol& p) {
  if (!is_name(p.name))
    throw std::invalid_argument("protocol name '" + p.name + "' is not serializable");
  const std::vector<std::string> names = variable_names(p.tmpl.var_count());

  std::ostringstream out;
  out << "protocol " << p.name << '\n';
  out << "vars";
  for (const std::string& n : names) out << ' ' << n;
  out << '\n';
  out << "template";
  for (const Literal& lit : p.tmpl.literals()) {
    out << ' ';
    switch (lit.kind()) {
      case Literal::Kind::Constant: out << int(lit.constant_bit()); break;
      case Literal::Kind::Positive: out << names[lit.var()]; break;
      case Literal::Kind::Negative: out << '!' << names[lit.var()]; break;
    }
  }
  out << '\n';
  for (const auto& entry : p.rule.entries())
    out << "output " << int(entry.output) << ": " << entry.necklace.representative.str() << '\n';
  return out.str();
}

std::string serialize_document(const engine::Protocol& p,
                               const std::optional<BooleanFunction>& f) {
  std::string out = serialize_protocol(p);
  if (f) out += "function " + f->hex() + "\n";
  return out;
}

}  // namespace scfo::dsl
