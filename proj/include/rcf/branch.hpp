#pragma once

#include "rcf/poly2.hpp"

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rcf {

/* A real root branch z(x) of defining(x, z) = 0 for x > bound. defining is
 * square-free and primitive as a polynomial in z over Z[x]; the bound is
 * an integer beyond every real root of its leading coefficient,
 * discriminant, content and critical-point resultant, so past it the roots
 * of defining(x, .) keep their number, never cross, and each one is
 * constant or strictly monotone. index counts from the bottom. */
struct Branch {
	IntPoly2 defining;
	int index = 0;
	Rat bound;

	friend bool operator==(const Branch &a, const Branch &b)
	{
		return a.defining == b.defining && a.index == b.index && a.bound == b.bound;
	}
};

/* branch(<poly in x, z>, <index>, <bound>) */
std::string to_string(const Branch &b);
Branch parse_branch(std::string_view s);

/* Square-free, primitive normal form used for defining polynomials. */
IntPoly2 branch_normal_form(const IntPoly2 &q);

/* Validity bound of a normal-form polynomial (see Branch). */
Rat branch_bound(const IntPoly2 &q);

struct BranchSet {
	Rat bound;
	std::vector<Branch> branches;
};

/* All real branches of q past a common bound, bottom to top. q must have
 * positive degree in z. */
BranchSet branches_at_infinity(const IntPoly2 &q);

Branch constant_branch(const Rat &c);
/* z = num(x) / den(x); den must be nonzero. */
Branch rational_branch(const IntPoly1 &num, const IntPoly1 &den);

/* The branch of P (any nonzero polynomial with positive z-degree) that
 * passes through the value enclosed by witness(x0) at x0 = bound + 1, with
 * bound at least min_bound. The witness must enclose a real root of
 * P(x0, .). */
Branch make_branch(const IntPoly2 &P, const Rat &min_bound,
                   const std::function<Approx(const Rat &)> &witness);

/* Exact value at a rational x0 > bound. */
RealAlg value_at(const Branch &b, const Rat &x0);
/* Enclosures of b(X) for an algebraic X eventually beyond the bound. */
Approx enclosure_at(const Branch &b, const Approx &X);
/* Exact value at an algebraic X > bound. */
RealAlg value_at(const Branch &b, const RealAlg &X);

/* The ordering of b1, b2 valid for all x > bound. */
struct EventualOrder {
	std::strong_ordering ord = std::strong_ordering::equal;
	Rat bound;
};

EventualOrder compare_eventually(const Branch &b1, const Branch &b2);

struct Limit {
	enum Kind { finite, plus_infinity, minus_infinity } kind = finite;
	RealAlg value;
};

Limit limit_at_infinity(const Branch &b);

enum class Monotone { increasing, decreasing, constant };

Monotone monotone_eventually(const Branch &b);

enum class BranchOp { add, sub, mul, div, mix };

/* mix gives (1 - r) b1 + r b2; r is ignored by the other operations. */
Branch branch_combine(BranchOp op, const Branch &b1, const Branch &b2, const Rat &r = Rat(1, 2));

/* c * b for a rational c */
Branch branch_scale(const Branch &b, const Rat &c);

/* The argument that is eventually smallest (largest), with its bound
 * raised past every comparison used. */
Branch branch_min(const std::vector<Branch> &bs);
Branch branch_max(const std::vector<Branch> &bs);

/* Requires b eventually increasing to +infinity. */
Branch invert_branch(const Branch &b);

/* outer(inner(x)); inner must eventually stay beyond outer.bound. */
Branch compose_branch(const Branch &outer, const Branch &inner);

/* Raises the bound to at least n (a no-op when already larger). */
Branch with_bound(Branch b, const Rat &n);

} // namespace rcf
