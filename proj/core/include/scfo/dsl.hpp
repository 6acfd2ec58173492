#pragma once

#include "scfo/engine.hpp"

#include <optional>

namespace scfo::dsl {

/// Machine-readable parse failure categories.
enum class ErrorCode {
  MissingSection,      // a required line is absent
  UnexpectedLine,      // extra or out-of-order line
  BadToken,            // token does not lex as anything in the grammar
  MissingToken,        // line ends before a required token
  TrailingToken,       // line continues past the grammar
  BadName,             // NAME token malformed
  DuplicateVariable,
  UnknownVariable,
  BadLiteral,
  BadBit,
  TemplateTooLong,     // more literals than a word can hold (64)
  BadWord,             // characters other than C/H
  WrongWordLength,
  DuplicateOutputBit,
  IndistinctClasses,   // the two class words share a necklace
  UnknownFunction,     // neither a built-in name nor a truth-table hex
  FunctionArity        // function arity differs from the vars line
};

std::string_view error_code_name(ErrorCode code);

struct ParseError {
  std::size_t line = 0;    // 1-based
  std::size_t column = 0;  // 1-based
  ErrorCode code = ErrorCode::BadToken;
  std::string message;
};

class ParseException : public std::runtime_error {
public:
  explicit ParseException(ParseError error);
  const ParseError& error() const { return error_; }

private:
  ParseError error_;
};

struct ParsedDocument {
  engine::Protocol protocol;
  std::optional<BooleanFunction> function;
};

/// Parses a .scfo protocol document:
///
///   protocol NAME
///   vars NAME...
///   template LITERAL...        # LITERAL: name, !name, 0 or 1
///   output BIT: WORD           # WORD over C/H; any rotation of the class
///   [output BIT: WORD]
///   [function HEX-or-NAME]
///
/// '#' starts a comment, blank lines are ignored. Class words are
/// canonicalized, so any rotation of a class may be written. Throws
/// ParseException with a 1-based line/column position.
ParsedDocument parse_protocol(std::string_view text);

/// Canonical document form: canonical variable names, class representatives,
/// one section per line. parse(serialize(p)).protocol compares equal to p up
/// to those canonical names.
std::string serialize_protocol(const engine::Protocol& p);

/// serialize_protocol plus a trailing "function <hex>" line.
std::string serialize_document(const engine::Protocol& p,
                               const std::optional<BooleanFunction>& f);

/// Built-in function name, or truth-table hex with the arity inferred from
/// the digit count. nullopt when neither applies.
std::optional<BooleanFunction> resolve_function(std::string_view token);

/// As above, but hex is read at the stated arity (what the parser does with
/// the document's vars line). Built-in names are returned at their own arity.
std::optional<BooleanFunction> resolve_function(std::string_view token, std::size_t var_count);

}  // namespace scfo::dsl
