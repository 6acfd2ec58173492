#include "scfo/fixtures.hpp"

namespace scfo::fixtures {

namespace {

Literal pos(std::size_t v) { return Literal::positive(v); }
Literal neg(std::size_t v) { return Literal::negative(v); }
Literal con(Bit b) { return Literal::constant(b); }

engine::OutputRule rule_from_words(std::string_view zero_class, std::string_view one_class) {
  return engine::OutputRule({{canonical(Word::from_string(zero_class)), 0},
                             {canonical(Word::from_string(one_class)), 1}});
}

}  // namespace

BooleanFunction xor2() { return BooleanFunction(2, {0, 1, 1, 0}); }

BooleanFunction and2() { return BooleanFunction(2, {0, 0, 0, 1}); }

BooleanFunction eq3() { return BooleanFunction(3, {1, 0, 0, 0, 0, 0, 0, 1}); }

BooleanFunction xor3() { return BooleanFunction(3, {0, 1, 1, 0, 1, 0, 0, 1}); }

BooleanFunction paper_f2() {
  return BooleanFunction(4, {0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0});
}

BooleanFunction if_not() { return BooleanFunction(3, {0, 0, 1, 0, 1, 1, 1, 0}); }

engine::Protocol xor2_protocol() {
  return engine::Protocol("xor2", Template(2, {pos(0), neg(0), pos(1), neg(1)}),
                          rule_from_words("HCHC", "HHCC"));
}

engine::Protocol five_card_trick() {
  return engine::Protocol("five-card-trick",
                          Template(2, {neg(0), pos(0), con(1), pos(1), neg(1)}),
                          rule_from_words("HCHCH", "HHHCC"));
}

engine::Protocol six_card_trick() {
  // The alternating class is exactly the all-equal inputs, so it carries
  // output 1 under the 1 = "equal" convention.
  return engine::Protocol("six-card-trick",
                          Template(3, {pos(0), neg(1), pos(2), neg(0), pos(1), neg(2)}),
                          rule_from_words("HHHCCC", "HCHCHC"));
}

engine::Protocol protocol1() {
  return engine::Protocol(
      "protocol1",
      Template(3, {pos(0), pos(1), neg(0), pos(2), pos(0), neg(1), neg(0), neg(2)}),
      rule_from_words("CCHCCHHH", "HHCHHCCC"));
}

engine::Protocol protocol2() {
  return engine::Protocol(
      "protocol2",
      Template(4, {pos(0), pos(1), pos(2), pos(3), neg(0), neg(1), neg(2), neg(3)}),
      rule_from_words("HHHHCCCC", "CCHCHHCH"));
}

engine::Protocol protocol3() {
  return engine::Protocol(
      "protocol3",
      Template(3, {pos(0), pos(1), pos(2), con(1), neg(0), neg(1), neg(2), con(0)}),
      rule_from_words("HHHHCCCC", "CCHCHHCH"));
}

std::optional<BooleanFunction> function_by_name(std::string_view name) {
  if (name == "xor2") return xor2();
  if (name == "and2") return and2();
  if (name == "eq3") return eq3();
  if (name == "xor3") return xor3();
  if (name == "paper-f2") return paper_f2();
  if (name == "if-not") return if_not();
  return std::nullopt;
}

std::optional<engine::Protocol> protocol_by_name(std::string_view name) {
  if (name == "xor2") return xor2_protocol();
  if (name == "five-card-trick") return five_card_trick();
  if (name == "six-card-trick") return six_card_trick();
  if (name == "protocol1") return protocol1();
  if (name == "protocol2") return protocol2();
  if (name == "protocol3") return protocol3();
  return std::nullopt;
}

std::optional<BooleanFunction> protocol_function_by_name(std::string_view name) {
  if (name == "xor2") return xor2();
  if (name == "five-card-trick") return and2();
  if (name == "six-card-trick") return eq3();
  if (name == "protocol1") return xor3();
  if (name == "protocol2") return paper_f2();
  if (name == "protocol3") return if_not();
  return std::nullopt;
}

std::vector<std::string> function_names() {
  return {"xor2", "and2", "eq3", "xor3", "paper-f2", "if-not"};
}

std::vector<std::string> protocol_names() {
  return {"xor2", "five-card-trick", "six-card-trick", "protocol1", "protocol2", "protocol3"};
}

}  // namespace scfo::fixtures
