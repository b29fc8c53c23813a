#pragma once

#include <string_view>

#include "cou/poly.hpp"

namespace cou {

/// Parses a polynomial literal such as "z*zbar - 2" or "(1+2*i)*z^2".
///
///   expr   := term (('+' | '-') term)*
///   term   := unary ('*' unary)*
///   unary  := ('+' | '-') unary | power
///   power  := atom ('^' integer)?
///   atom   := number | 'z' | 'zbar' | 'i' | '(' expr ')'
///
/// Numbers are decimal literals with optional exponent (1, 0.5, 2e-3).
/// Throws std::invalid_argument on malformed input.
Poly parse_poly(std::string_view text);

}  // namespace cou
