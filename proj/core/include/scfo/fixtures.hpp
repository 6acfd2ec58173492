#pragma once

#include "scfo/engine.hpp"

#include <optional>

namespace scfo::fixtures {

// Built-in Boolean functions.
BooleanFunction xor2();      // x ^ y
BooleanFunction and2();      // x & y
BooleanFunction eq3();       // 1 iff x = y = z
BooleanFunction xor3();      // x ^ y ^ z
BooleanFunction paper_f2();  // !x y !w | !y z !w | x !y w | y !z w
BooleanFunction if_not();    // x !y | y !z  (x if y = 0, else !z)

// Built-in protocols.
engine::Protocol xor2_protocol();
engine::Protocol five_card_trick();
engine::Protocol six_card_trick();
engine::Protocol protocol1();
engine::Protocol protocol2();
engine::Protocol protocol3();

/// Lookup by CLI name ("xor2", "paper-f2", ...). nullopt when unknown.
std::optional<BooleanFunction> function_by_name(std::string_view name);

/// Lookup by CLI name ("five-card-trick", "protocol1", ...).
std::optional<engine::Protocol> protocol_by_name(std::string_view name);

/// The function a built-in protocol computes.
std::optional<BooleanFunction> protocol_function_by_name(std::string_view name);

std::vector<std::string> function_names();
std::vector<std::string> protocol_names();

}  // namespace scfo::fixtures
