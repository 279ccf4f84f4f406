#pragma once

#include <string_view>

#include "polynomial.hpp"

namespace milnor {

// Grammar (whitespace insignificant):
//   expression  := ['+'|'-'] term (('+'|'-') term)*
//   term        := factor ('*' factor)*
//   factor      := coefficient | var
//   coefficient := real | '(' real ('+'|'-') real 'i' ')'
//   var         := ('z'|'~z') index ('^' positive-integer)?
// Variables are 1-based in text. Throws ParseError with a character offset.
MixedPolynomial parse_polynomial(std::string_view text, int n);

// File form: a header line "# n = <count>", further '#' lines are comments,
// everything else is one expression. Offsets in errors refer to the file.
MixedPolynomial parse_polynomial_file(std::string_view content);

}  // namespace milnor
