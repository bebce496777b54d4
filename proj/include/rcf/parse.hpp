#pragma once

#include "rcf/poly2.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace rcf {

/* Expression grammar shared by the CLI and the tower format:
 *
 *   expr   := term (('+' | '-') term)*
 *   term   := unary (('*' | '/') unary | primary)*      juxtaposition multiplies
 *   unary  := ('+' | '-') unary | power
 *   power  := primary ('^' integer)?
 *   primary:= integer | decimal | 'x' | 'y' | 'z' | '(' expr ')'
 *
 * z is an alias for y. Division is allowed by any nonzero expression. */
RatFunc2 parse_ratfunc(std::string_view s);

/* A polynomial in z over Q(x, y), same grammar with z a separate variable;
 * division only by z-free expressions. Coefficients ascending, no trailing
 * zeros. */
std::vector<RatFunc2> parse_zpoly(std::string_view s);

/* A polynomial expression; constant rational factors are cleared with a
 * positive multiplier, so "x/2 - 1/3" gives 3*x - 2. */
IntPoly2 parse_poly2(std::string_view s);

/* A polynomial in x alone. */
IntPoly1 parse_poly1(std::string_view s);

std::string_view trim(std::string_view s);

/* Splits "name(a, b, ...)" into its top-level arguments. */
std::vector<std::string> parse_call(std::string_view s, std::string_view name);

/* Integer argument with a readable error. */
long parse_long(std::string_view s);

} // namespace rcf
