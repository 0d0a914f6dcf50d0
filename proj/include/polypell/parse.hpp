#pragma once

#include "polypell/errors.hpp"
#include "polypell/ratfunc.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace polypell {

/// Polynomial in X with coefficients in Q(t), as read from text.
struct ParsedPoly {
    UniPoly<RatFunc> poly;
    bool uses_t = false;

    /// The polynomial over Q, or nullopt when some coefficient depends on t.
    std::optional<QPoly> over_q() const;
};

/// Grammar (whitespace ignored, no implicit multiplication):
///   expr   := term (('+' | '-') term)*
///   term   := factor ('*' factor)*
///   factor := base ('^' nat)?
///   base   := rational | 'X' | 't' | '(' expr ')' | '-' factor
/// A leading unary minus is accepted on any factor. Throws ParseError with
/// the byte offset and what was expected.
ParsedPoly parse_poly(std::string_view text);

/// Upper bound on exponent literals.
inline constexpr unsigned kMaxExponent = 4096;

}  // namespace polypell
