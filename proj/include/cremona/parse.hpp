#ifndef CREMONA_PARSE_HPP
#define CREMONA_PARSE_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include <cremona/hompoly.hpp>
#include <cremona/upoly.hpp>

namespace cremona {

// Polynomial text: integer or rational coefficients, variables x, y, z,
// '^' with non-negative integer exponents, '*', '+', '-', parentheses and
// juxtaposition ("2x^2y" == 2*x^2*y). Division is allowed by constants only.
// The result must be homogeneous. Output of HomPoly3::to_string parses back
// to the same polynomial.
HomPoly3 parse_hompoly(std::string_view text, Field field = Field::rationals());

// Same syntax restricted to the variable `var`.
UPoly parse_univariate(std::string_view text, char var = 'x', Field field = Field::rationals());

// Splits "[a : b : c]" into its three component strings.
std::array<std::string, 3> split_bracket_triple(std::string_view text);

// Splits on `sep` at parenthesis/bracket depth zero.
std::vector<std::string> split_top_level(std::string_view text, char sep);

std::string trim_copy(std::string_view text);

} // namespace cremona

#endif
