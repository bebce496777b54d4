#pragma once

#include "rcf/branch.hpp"

#include <optional>
#include <string>
#include <utility>

namespace rcf {

/* {(x, y) : x > alpha, lower(x) < y < upper(x)} with lower < upper for all
 * x > alpha, alpha an integer at least both branch bounds. */
struct EndCell {
	Rat alpha;
	Branch lower, upper;

	friend bool operator==(const EndCell &a, const EndCell &b)
	{
		return a.alpha == b.alpha && a.lower == b.lower && a.upper == b.upper;
	}
};

/* cell(<alpha>, <branch>, <branch>) */
std::string to_string(const EndCell &c);
EndCell parse_cell(std::string_view s);

/* x > 1, 0 < y < 1 */
EndCell initial_cell();

/* Checks the invariants exactly. */
bool is_valid_cell(const EndCell &c);

bool contains(const EndCell &c, const RealAlg &x, const RealAlg &y);

struct Refinement {
	EndCell cell;
	int sign = 0;
};

/* Lowest strip of the zero set of p inside the cell, with the constant
 * sign of p there. Sign 0 only for the zero polynomial. */
Refinement refine_by_polynomial(const EndCell &c, const IntPoly2 &p);

/* The strip of the zero set of p inside c that contains the graph of f,
 * where f lies eventually strictly inside c. Empty when f is itself a
 * branch of p. */
std::optional<Refinement> strip_containing(const EndCell &c, const IntPoly2 &p, const Branch &f);

/* Sub-cell between two branches lying eventually inside c (weakly), with
 * lo < hi eventually. */
EndCell subcell(const EndCell &c, const Branch &lo, const Branch &hi);

/* lower + r (upper - lower) */
Branch midline(const EndCell &c, const Rat &r);

/* lower + psi_k (upper - lower) with psi_k(x) = 1 - (alpha/x)^k. */
Branch diagonal_curve(const EndCell &c, int k);

EndCell bump_x_bound(EndCell c, const Rat &n);

/* (alpha + 1, midpoint of the bounds there) */
std::pair<Rat, RealAlg> sample_point(const EndCell &c);

/* Rational strictly between a < b. */
Rat rational_between(const RealAlg &a, const RealAlg &b);

/* Interior points of c at x = alpha + 1 + k*step for k < n, each with a
 * rational y at fraction (j+1)/(n+1) of the way between the bounds. Used by
 * tests and certificate replay. */
std::vector<std::pair<Rat, Rat>> interior_samples(const EndCell &c, int n, unsigned seed);

} // namespace rcf
